"""Closed-form comparison profiles for manifolds with boundary.

Everything here is a pure function of a dimension ``n >= 2`` and a mean
curvature bound ``H`` (sign convention: ``H`` equals the Laplacian of the
distance-to-boundary function at the boundary, so a round ball of radius
``R`` in flat n-space has ``H = -(n-1)/R``).  The model density ratio

    area_ratio(delta) = ((H*delta + n - 1)/(n - 1))**(n-1),   clamped to 0
                        once H*delta + n - 1 goes nonpositive,

controls level-set areas, annulus volumes and the Laplacian of the distance
field on any manifold with nonnegative Ricci curvature whose boundary mean
curvature is at most H.  The other operations are the bounds derived from it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ComparisonProfile",
    "FocalPoleError",
    "area_ratio",
    "area_ratio_integral",
    "laplacian_bound",
    "focal_radius",
    "diameter_bound",
    "volume_annulus_bound",
    "swif_tail",
]


class FocalPoleError(ValueError):
    """Raised when a comparison quantity is evaluated at its focal pole.

    The right-hand side of the Laplacian comparison blows up where
    ``H*r + n - 1 == 0``; callers must treat that threshold explicitly
    instead of receiving an infinity.
    """


@dataclass(frozen=True)
class ComparisonProfile:
    """Dimension / mean-curvature pair (n, H) defining a comparison model.

    ``n`` is the manifold dimension (n >= 2); ``H`` is an upper bound for the
    inward mean curvature of the boundary, any real number.
    """

    n: int
    H: float

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise ValueError(f"dimension n must be an integer, got {self.n!r}")
        if self.n < 2:
            raise ValueError(f"dimension n must be >= 2, got {self.n}")
        if not math.isfinite(self.H):
            raise ValueError(f"curvature bound H must be finite, got {self.H!r}")


def _check_delta(delta: float, name: str = "delta") -> float:
    delta = float(delta)
    if not math.isfinite(delta):
        raise ValueError(f"{name} must be finite, got {delta!r}")
    if delta < 0.0:
        raise ValueError(f"{name} must be nonnegative, got {delta}")
    return delta


def area_ratio(prof: ComparisonProfile, delta: float) -> float:
    """Model density ratio at distance ``delta`` from the boundary.

    Returns ((H*delta + n - 1)/(n - 1))**(n-1) while H*delta + n - 1 > 0 and
    exactly 0.0 beyond that (past the focal radius for H < 0).  Continuous
    and equal to 1 at delta = 0.
    """
    delta = _check_delta(delta)
    n, H = prof.n, prof.H
    base = H * delta + (n - 1)
    if base <= 0.0:
        return 0.0
    return (base / (n - 1)) ** (n - 1)


def _integral_antiderivative(n: int, H: float, t: float) -> float:
    # antiderivative of area_ratio for H != 0, valid below the focal radius
    return (n - 1) / (n * H) * ((H * t + n - 1) / (n - 1)) ** n


def area_ratio_integral(prof: ComparisonProfile, delta2: float, delta1: float) -> float:
    """Integral of the density ratio over [delta2, delta1], in closed form.

    For H = 0 this is delta1 - delta2.  For H != 0 the antiderivative
    (n-1)/(nH) * ((H t + n - 1)/(n - 1))**n is evaluated with both limits
    clamped to the focal radius -(n-1)/H when H < 0, where the integrand
    is identically zero.
    """
    delta2 = _check_delta(delta2, "delta2")
    delta1 = _check_delta(delta1, "delta1")
    if delta2 > delta1:
        raise ValueError(f"need delta2 <= delta1, got {delta2} > {delta1}")
    n, H = prof.n, prof.H
    if H == 0.0:
        return delta1 - delta2
    if H < 0.0:
        focal = -(n - 1) / H
        delta1 = min(delta1, focal)
        delta2 = min(delta2, focal)
        if delta2 >= delta1:
            return 0.0
    value = _integral_antiderivative(n, H, delta1) - _integral_antiderivative(n, H, delta2)
    # clamped closed form is nonnegative by construction; guard FP dust
    return max(value, 0.0)


def laplacian_bound(n: int, H_q: float, r: float) -> float:
    """Comparison upper bound (n-1)*H_q / (H_q*r + n - 1) for the Laplacian
    of the distance-to-boundary function at distance r from a boundary point
    with mean curvature H_q.

    Raises FocalPoleError at the focal threshold H_q*r + n - 1 = 0.
    """
    if n < 2:
        raise ValueError(f"dimension n must be >= 2, got {n}")
    r = _check_delta(r, "r")
    if not math.isfinite(H_q):
        raise ValueError(f"H_q must be finite, got {H_q!r}")
    if H_q == 0.0:
        return 0.0
    denom = H_q * r + (n - 1)
    if denom == 0.0:
        raise FocalPoleError(
            f"focal pole: H_q*r + n - 1 = 0 at (n={n}, H_q={H_q}, r={r})"
        )
    return (n - 1) * H_q / denom


def focal_radius(prof: ComparisonProfile) -> float:
    """Distance -(n-1)/H past which boundary-normal geodesics of the model
    stop minimizing.  Returns ``math.inf`` ("unbounded") when H >= 0.
    """
    if prof.H >= 0.0:
        return math.inf
    return -(prof.n - 1) / prof.H


def diameter_bound(prof: ComparisonProfile, boundary_diameter: float) -> float:
    """Upper bound D' - 2(n-1)/H for the diameter of a manifold whose
    boundary has intrinsic diameter D' and mean curvature at most H < 0.
    """
    if prof.H >= 0.0:
        raise ValueError(f"diameter bound requires H < 0, got H = {prof.H}")
    boundary_diameter = _check_delta(boundary_diameter, "boundary_diameter")
    return boundary_diameter - 2.0 * (prof.n - 1) / prof.H


def volume_annulus_bound(
    prof: ComparisonProfile, boundary_area: float, delta2: float, delta1: float
) -> float:
    """Upper bound Vol(boundary) * integral of the density ratio for the
    volume of the annulus {delta2 < r <= delta1}.

    With delta1 = min(Diam, focal radius) this bounds the total volume.
    """
    boundary_area = _check_delta(boundary_area, "boundary_area")
    return boundary_area * area_ratio_integral(prof, delta2, delta1)


def swif_tail(prof: ComparisonProfile, boundary_area: float, delta: float) -> float:
    """Collar-volume bound A * integral_0^delta of the density ratio.

    This is the uniform bound on the flat distance between a manifold and its
    delta-inner region; it is continuous, nondecreasing in delta and vanishes
    at delta = 0, which is what makes inner-region limits converge back to
    the full limit space.
    """
    return volume_annulus_bound(prof, boundary_area, 0.0, delta)
