"""Warped-product manifolds with boundary: dt^2 + f(t)^2 * (round k-sphere).

The boundary is the slice t = 0 and the distance-to-boundary field is
r(t, x) = t (any path to the boundary has length at least |dt| integrated,
and the radial line realizes it).  Every comparison quantity is available
exactly or by one-dimensional quadrature:

    boundary area        sigma_k * f(0)**k
    level area at t      sigma_k * f(t)**k
    annulus volume       sigma_k * integral of f**k
    density ratio        (f(t)/f(0))**k
    radial Laplacian     k * f'(t)/f(t)
    mean curvature H     k * f'(0)/f(0)       (equals the radial Laplacian
                                               at the boundary)

Profiles must be positive and nonincreasing, and carry a nonnegative-Ricci
certificate checked on a sample grid; generators for the standard families
(flat balls, product cylinders with an antipodal cap, unit-sphere bands) are
provided.  Intrinsic distances and diameters come from a dynamic-programming
shortest-path solver on the reduced (t, angle) half-plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline

from .results import CheckResult

__all__ = [
    "WarpProfile",
    "WarpedProductManifold",
    "WarpValidationError",
    "build_warped",
    "euclidean_ball",
    "cylinder_cap",
    "cylinder",
    "sphere_band",
    "boundary_mean_curvature",
    "annulus_volume",
    "total_volume",
    "level_area",
    "jacobian_ratio",
    "radial_laplacian",
    "diameter",
    "boundary_diameter",
    "distance_field_validation",
    "comparison_profile",
    "sphere_volume",
    "load_warp_table",
    "save_warp_table",
]


class WarpValidationError(ValueError):
    """A warp profile failed positivity, monotonicity or the Ricci check."""


def sphere_volume(k: int) -> float:
    """Volume of the unit k-sphere, 2*pi^((k+1)/2)/Gamma((k+1)/2)."""
    if k < 1:
        raise ValueError(f"sphere dimension must be >= 1, got {k}")
    return 2.0 * math.pi ** ((k + 1) / 2.0) / math.gamma((k + 1) / 2.0)


@dataclass(frozen=True)
class WarpProfile:
    """Warp function f on [0, L) with first and second derivatives.

    The callables must accept numpy arrays.  Profiles are either analytic
    (``from_callables``) or spline reconstructions of a tabulated (t, f)
    file (``from_table``).
    """

    f: Callable
    df: Callable
    d2f: Callable
    L: float
    label: str = "custom"

    @staticmethod
    def from_callables(f, df, d2f, L, label="custom"):
        return WarpProfile(f=f, df=df, d2f=d2f, L=float(L), label=label)

    @staticmethod
    def from_table(t, values, label="table"):
        t = np.asarray(t, dtype=float)
        values = np.asarray(values, dtype=float)
        if t.ndim != 1 or t.shape != values.shape or t.size < 4:
            raise ValueError("need matching 1-d arrays with at least 4 samples")
        if np.any(np.diff(t) <= 0):
            raise ValueError("sample abscissae must be strictly increasing")
        if t[0] != 0.0:
            raise ValueError(f"table must start at t = 0, got {t[0]}")
        spline = CubicSpline(t, values)
        return WarpProfile(
            f=spline, df=spline.derivative(1), d2f=spline.derivative(2),
            L=float(t[-1]), label=label)


@dataclass(frozen=True)
class WarpedProductManifold:
    """Immutable warped product [0, L] x_f S^k with boundary at t = 0."""

    k: int
    profile: WarpProfile
    cap: bool
    sigma_k: float
    certificate_ok: bool = True
    certificate_message: str = ""
    label: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.k + 1

    @property
    def L(self) -> float:
        return self.profile.L

    @property
    def boundary_area(self) -> float:
        return self.sigma_k * float(self.profile.f(0.0)) ** self.k

    def describe(self) -> dict:
        return {
            "backend": "warped",
            "label": self.label or self.profile.label,
            "k": self.k,
            "n": self.n,
            "L": self.L,
            "cap": self.cap,
            "certificate_ok": self.certificate_ok,
        }


def _certificate(k: int, profile: WarpProfile, grid_points: int, ricci_tol: float):
    """Check f > 0, f' <= 0 and the two Ricci diagnostics on a sample grid.

    Returns (ok, message); the message names the first violated grid point.
    """
    ts = np.linspace(0.0, profile.L * (1.0 - 1e-9), grid_points)
    fv = np.asarray(profile.f(ts), dtype=float)
    dfv = np.asarray(profile.df(ts), dtype=float)
    d2fv = np.asarray(profile.d2f(ts), dtype=float)

    bad = np.nonzero(fv <= 0.0)[0]
    if bad.size:
        i = bad[0]
        return False, f"f(t) <= 0 at t={ts[i]:.6g} (f={fv[i]:.6g})"
    slope_tol = 1e-10 * max(1.0, float(np.max(np.abs(dfv))))
    bad = np.nonzero(dfv > slope_tol)[0]
    if bad.size:
        i = bad[0]
        return False, f"f'(t) > 0 at t={ts[i]:.6g} (f'={dfv[i]:.6g})"
    ric_radial = -k * d2fv / fv
    bad = np.nonzero(ric_radial < -ricci_tol)[0]
    if bad.size:
        i = bad[0]
        return False, (f"radial Ricci -k f''/f = {ric_radial[i]:.6g} < 0 "
                       f"at t={ts[i]:.6g}")
    ric_tan = (k - 1) * (1.0 - dfv**2) / fv**2 - d2fv / fv
    bad = np.nonzero(ric_tan < -ricci_tol)[0]
    if bad.size:
        i = bad[0]
        return False, (f"tangential Ricci {ric_tan[i]:.6g} < 0 at t={ts[i]:.6g}")
    return True, ""


def build_warped(k: int, profile: WarpProfile, cap: bool = False, *,
                 validate: bool = True, grid_points: int = 512,
                 ricci_tol: float = 1e-9, label: str = "") -> WarpedProductManifold:
    """Assemble a warped product and certify its standing hypotheses.

    With ``validate=True`` (the default) a failing certificate raises
    WarpValidationError naming the first violated grid point; with
    ``validate=False`` the manifold is built anyway and carries
    ``certificate_ok=False`` so downstream checks can gate on it.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"fiber sphere dimension k must be an integer >= 1, got {k!r}")
    if not (profile.L > 0 and math.isfinite(profile.L)):
        raise ValueError(f"interval length must be positive and finite, got {profile.L}")
    ok, message = _certificate(k, profile, grid_points, ricci_tol)
    if validate and not ok:
        raise WarpValidationError(message)
    return WarpedProductManifold(
        k=k, profile=profile, cap=cap, sigma_k=sphere_volume(k),
        certificate_ok=ok, certificate_message=message, label=label)


# ---------------------------------------------------------------------------
# standard families


def euclidean_ball(n: int, R: float) -> WarpedProductManifold:
    """Flat n-ball of radius R: f(t) = R - t on [0, R]; H = -(n-1)/R."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    R = float(R)
    return build_warped(
        n - 1,
        WarpProfile.from_callables(
            lambda t: R - np.asarray(t, dtype=float),
            lambda t: np.full_like(np.asarray(t, dtype=float), -1.0),
            lambda t: np.zeros_like(np.asarray(t, dtype=float)),
            L=R, label=f"ball(n={n},R={R:g})"),
        cap=False, label=f"ball(n={n},R={R:g})")


def cylinder_cap(k: int, j: float) -> WarpedProductManifold:
    """Product S^k x [0, j] with antipodal identification at t = j.

    The boundary is the slice t = 0, the mean curvature vanishes and the
    volume is j * Vol(S^k); diameters grow linearly in j.
    """
    return build_warped(
        k, _constant_profile(float(j), f"cylinder_cap(k={k},j={j:g})"),
        cap=True, label=f"cylinder_cap(k={k},j={j:g})")


def cylinder(k: int, length: float) -> WarpedProductManifold:
    """Product S^k x [0, length] without the cap (truncated far slice)."""
    return build_warped(
        k, _constant_profile(float(length), f"cylinder(k={k},L={length:g})"),
        cap=False, label=f"cylinder(k={k},L={length:g})")


def _constant_profile(L: float, label: str) -> WarpProfile:
    return WarpProfile.from_callables(
        lambda t: np.ones_like(np.asarray(t, dtype=float)),
        lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        L=L, label=label)


def sphere_band(k: int, start: float, end: float) -> WarpedProductManifold:
    """Band of the unit (k+1)-sphere between polar angles pi/2 - end and
    pi/2 - start ... parametrized as f(t) = cos(start + t) on [0, end-start].

    Requires 0 <= start < end <= pi/2 so that f stays positive and
    nonincreasing; H = -k*tan(start) <= 0 and the bounds hold strictly for
    t > 0 (a genuinely curved specimen away from the equality families).
    """
    start, end = float(start), float(end)
    if not (0.0 <= start < end <= math.pi / 2 + 1e-12):
        raise ValueError("need 0 <= start < end <= pi/2")
    return build_warped(
        k,
        WarpProfile.from_callables(
            lambda t: np.cos(start + np.asarray(t, dtype=float)),
            lambda t: -np.sin(start + np.asarray(t, dtype=float)),
            lambda t: -np.cos(start + np.asarray(t, dtype=float)),
            L=end - start, label=f"sphere_band(k={k},{start:g},{end:g})"),
        cap=False, label=f"sphere_band(k={k},{start:g},{end:g})")


# ---------------------------------------------------------------------------
# exact / quadrature queries


def boundary_mean_curvature(m: WarpedProductManifold) -> float:
    """H = k f'(0)/f(0), constant over the boundary sphere."""
    return m.k * float(m.profile.df(0.0)) / float(m.profile.f(0.0))


def comparison_profile(m: WarpedProductManifold):
    from .profiles import ComparisonProfile
    return ComparisonProfile(m.n, boundary_mean_curvature(m))


def annulus_volume(m: WarpedProductManifold, delta2: float, delta1: float) -> float:
    """Volume of the slab {delta2 < t <= delta1}: sigma_k * integral f^k."""
    if not (0.0 <= delta2 <= delta1 <= m.L):
        raise ValueError(f"need 0 <= delta2 <= delta1 <= L={m.L}, "
                         f"got ({delta2}, {delta1})")
    if delta1 == delta2:
        return 0.0
    val, _ = quad(lambda t: float(m.profile.f(t)) ** m.k, delta2, delta1,
                  epsabs=1e-12, epsrel=1e-12, limit=200)
    return m.sigma_k * val


def total_volume(m: WarpedProductManifold) -> float:
    return annulus_volume(m, 0.0, m.L)


def level_area(m: WarpedProductManifold, delta: float) -> float:
    """Area of the slice t = delta: sigma_k * f(delta)^k."""
    if not 0.0 <= delta <= m.L:
        raise ValueError(f"delta out of range [0, {m.L}]: {delta}")
    return m.sigma_k * float(m.profile.f(delta)) ** m.k


def jacobian_ratio(m: WarpedProductManifold, delta: float) -> float:
    """Normal-exponential density ratio (f(delta)/f(0))^k."""
    if not 0.0 <= delta <= m.L:
        raise ValueError(f"delta out of range [0, {m.L}]: {delta}")
    return (float(m.profile.f(delta)) / float(m.profile.f(0.0))) ** m.k


def radial_laplacian(m: WarpedProductManifold, delta: float) -> float:
    """Laplacian of the distance field at t = delta: k f'(delta)/f(delta).

    This is also the logarithmic derivative of jacobian_ratio.
    """
    if not 0.0 <= delta < m.L:
        raise ValueError(f"delta out of range [0, {m.L}): {delta}")
    fv = float(m.profile.f(delta))
    if fv <= 0.0:
        raise ValueError(f"warp vanishes at delta={delta}")
    return m.k * float(m.profile.df(delta)) / fv


def boundary_diameter(m: WarpedProductManifold) -> float:
    """Intrinsic diameter of the boundary sphere: pi * f(0)."""
    return math.pi * float(m.profile.f(0.0))


# ---------------------------------------------------------------------------
# reduced-plane distance engine
#
# Minimizing geodesics between (t1, x1) and (t2, x2) project to the totally
# geodesic strip [0, L] x [0, pi] with metric dt^2 + f(t)^2 dtheta^2, where
# theta runs along the great-circle arc between x1 and x2 and is monotone
# along a minimizing geodesic.  Distances are bounded from above (tightly)
# by dynamic programming over piecewise-linear paths on a (t, theta) grid:
# each theta step allows an arbitrary straight jump in t (lengths by Simpson
# quadrature) and in-slice vertical moves are relaxed by a distance
# transform.  All outputs are lengths of admissible paths, so the bias is
# one-sided (upper); the documented accuracy target for diameters is 1%.


class _ReducedPlane:
    def __init__(self, m: WarpedProductManifold, n_t: int = 193, n_theta: int = 193):
        self.n_t = n_t
        self.n_theta = n_theta
        self.t = np.linspace(0.0, m.L, n_t)
        self.dt = self.t[1] - self.t[0]
        self.dtheta = math.pi / (n_theta - 1)
        # segment cost C[i, j]: straight path (t_i, 0) -> (t_j, dtheta),
        # Simpson with 4 intervals; the metric does not depend on theta.
        u = np.array([0.0, 0.25, 0.5, 0.75, 1.0])
        w = np.array([1.0, 4.0, 2.0, 4.0, 1.0]) * (self.dtheta / 12.0)
        ti = self.t[:, None, None]
        tj = self.t[None, :, None]
        tpath = ti + (tj - ti) * u
        slope = (self.t[None, :] - self.t[:, None]) / self.dtheta
        fv = np.asarray(m.profile.f(tpath.reshape(-1)), dtype=float).reshape(tpath.shape)
        self.C = (np.sqrt(slope[:, :, None] ** 2 + fv**2) * w).sum(axis=2)

    def _vertical_relax(self, D):
        idx = np.arange(self.n_t) * self.dt
        D = np.minimum.accumulate(D - idx) + idx
        D = (np.minimum.accumulate((D + idx)[::-1]) - idx[::-1])[::-1]
        return D

    def sweep(self, t_source: float) -> np.ndarray:
        """Distance upper bounds from (t_source, 0) to every grid node."""
        out = np.empty((self.n_theta, self.n_t))
        D = np.abs(self.t - t_source)
        out[0] = D
        for j in range(1, self.n_theta):
            D = (D[:, None] + self.C).min(axis=0)
            D = self._vertical_relax(D)
            out[j] = D
        return out


def _reduced_plane(m: WarpedProductManifold) -> _ReducedPlane:
    rp = m._cache.get("reduced_plane")
    if rp is None:
        rp = _ReducedPlane(m)
        m._cache["reduced_plane"] = rp
    return rp


def _cap_pair_index(n_theta: int) -> np.ndarray:
    # entering the identified slice at angle a and leaving toward a point at
    # angle phi requires covering |pi - phi - a| on the far side
    a = np.arange(n_theta)[:, None]
    phi = np.arange(n_theta)[None, :]
    return np.abs((n_theta - 1) - phi - a)


def diameter(m: WarpedProductManifold, n_sources: int = 33) -> float:
    """Intrinsic diameter estimate by shortest paths in the reduced plane.

    Maximizes the point-pair distance over a grid of source slices; for
    cap=True, paths through the antipodal identification at t = L are
    included.  Upper-biased by discretization; target accuracy 1%.
    """
    rp = _reduced_plane(m)
    src_idx = np.unique(np.round(np.linspace(0, rp.n_t - 1, n_sources)).astype(int))
    sweeps = [rp.sweep(rp.t[i]) for i in src_idx]
    if not m.cap:
        return max(float(D.max()) for D in sweeps)
    # distance to the identified slice, per angle, for each source
    to_cap = [D[:, -1] for D in sweeps]
    pair_idx = _cap_pair_index(rp.n_theta)
    best = 0.0
    for a, ia in enumerate(src_idx):
        Da = sweeps[a]
        for b in range(a, len(src_idx)):
            direct = Da[:, src_idx[b]]
            through = (to_cap[a][:, None] + to_cap[b][pair_idx]).min(axis=0)
            best = max(best, float(np.minimum(direct, through).max()))
    return best


def distance_field_validation(m: WarpedProductManifold, sample_count: int = 24, *,
                              field: Callable | None = None, tol: float = 1e-6,
                              seed: int = 0) -> CheckResult:
    """Certify the distance-to-boundary field against constructed paths.

    For sampled interior points, shortest-path upper bounds to the t = 0
    slice are compared with the claimed field value (default r = t); a path
    shorter than field - tol is a violation and is reported with its
    witness.  Violations are data, not errors.
    """
    rp = _reduced_plane(m)
    rng = np.random.default_rng(seed)
    samples = np.unique(np.concatenate([
        np.linspace(0.05, 0.95, 5) * m.L,
        rng.uniform(0.0, m.L, max(0, sample_count - 5)),
    ]))
    claimed = samples.copy() if field is None else np.asarray(
        [field(float(s)) for s in samples], dtype=float)
    witnesses = []
    worst = math.inf
    for t_s, want in zip(samples, claimed):
        ub = float(rp.sweep(float(t_s))[:, 0].min())
        margin = ub - (want - tol)
        worst = min(worst, ub - want)
        if margin < 0.0:
            witnesses.append({"t": float(t_s), "claimed": float(want),
                              "path_upper_bound": ub})
    return CheckResult(
        check_name="distance_field_validation",
        sample_count=len(samples),
        violation_count=len(witnesses),
        worst_margin=float(worst),
        tolerance=tol,
        verdict="pass" if not witnesses else "fail",
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# tabulated profiles


def save_warp_table(m: WarpedProductManifold, path, samples: int = 257) -> None:
    """Write a two-column (t, f) descriptor with k/cap metadata comments."""
    ts = np.linspace(0.0, m.L, samples)
    fv = np.asarray(m.profile.f(ts), dtype=float)
    lines = [f"# collargeo warp profile", f"# k = {m.k}", f"# cap = {int(m.cap)}",
             f"# label = {m.label or m.profile.label}"]
    lines += [f"{format(t, '.17g')} {format(v, '.17g')}" for t, v in zip(ts, fv)]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_warp_table(path, *, k: int | None = None, cap: bool | None = None,
                    validate: bool = True) -> WarpedProductManifold:
    """Load a (t, f) table, rebuild the profile by spline, and assemble the
    manifold.  Metadata comments supply k and cap unless overridden.
    """
    meta = {}
    ts, fv = [], []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if "=" in body:
                    key, _, val = body.partition("=")
                    meta[key.strip()] = val.strip()
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected two columns, got {raw!r}")
            try:
                ts.append(float(parts[0]))
                fv.append(float(parts[1]))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    if k is None:
        if "k" not in meta:
            raise ValueError(f"{path}: no 'k' metadata and no override given")
        k = int(meta["k"])
    if cap is None:
        cap = bool(int(meta.get("cap", "0")))
    profile = WarpProfile.from_table(ts, fv, label=meta.get("label", "table"))
    return build_warped(k, profile, cap, validate=validate,
                        label=meta.get("label", "table"))
