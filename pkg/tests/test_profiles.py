"""Tests for the closed-form comparison profiles."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from collargeo.profiles import (
    ComparisonProfile,
    FocalPoleError,
    area_ratio,
    area_ratio_integral,
    diameter_bound,
    focal_radius,
    laplacian_bound,
    swif_tail,
    volume_annulus_bound,
)


def quad_oracle(prof, d2, d1):
    """Adaptive quadrature of area_ratio, independent of the closed form."""
    points = None
    if prof.H < 0:
        focal = -(prof.n - 1) / prof.H
        if d2 < focal < d1:
            points = [focal]
    val, _ = quad(lambda t: area_ratio(prof, t), d2, d1,
                  points=points, epsabs=1e-12, epsrel=1e-12, limit=200)
    return val


class TestAreaRatio:
    def test_at_zero_is_one(self):
        assert area_ratio(ComparisonProfile(3, -2.0), 0.0) == 1.0

    def test_clamps_to_zero_at_focal(self):
        # H*delta + n - 1 = -2 + 2 = 0: the "otherwise" branch
        assert area_ratio(ComparisonProfile(3, -2.0), 1.0) == 0.0

    def test_positive_curvature_value(self):
        # hand evaluation: (1*3 + 1)^1 / 1^1
        assert area_ratio(ComparisonProfile(2, 1.0), 3.0) == 4.0

    def test_one_at_zero_for_many_profiles(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            prof = ComparisonProfile(int(rng.integers(2, 8)), float(rng.normal(0, 3)))
            assert area_ratio(prof, 0.0) == 1.0

    def test_monotone_in_delta(self):
        deltas = np.linspace(0.0, 4.0, 60)
        down = [area_ratio(ComparisonProfile(4, -0.7), d) for d in deltas]
        up = [area_ratio(ComparisonProfile(4, 0.7), d) for d in deltas]
        assert all(a >= b - 1e-15 for a, b in zip(down, down[1:]))
        assert all(a <= b + 1e-15 for a, b in zip(up, up[1:]))

    def test_monotone_in_curvature_bound(self):
        for delta in (0.3, 1.0, 2.5):
            vals = [area_ratio(ComparisonProfile(3, H), delta)
                    for H in np.linspace(-3, 3, 41)]
            assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))

    def test_rejects_bad_delta(self):
        prof = ComparisonProfile(2, 0.0)
        with pytest.raises(ValueError):
            area_ratio(prof, -0.1)
        with pytest.raises(ValueError):
            area_ratio(prof, math.nan)
        with pytest.raises(ValueError):
            area_ratio(prof, math.inf)


class TestAreaRatioIntegral:
    def test_flat_case_is_length(self):
        assert area_ratio_integral(ComparisonProfile(4, 0.0), 1.0, 3.0) == 2.0

    def test_clamped_negative_curvature(self):
        # focal radius 1; integral of (1-t) over [0,1] = 1/2
        val = area_ratio_integral(ComparisonProfile(2, -1.0), 0.0, 5.0)
        assert val == pytest.approx(0.5, rel=1e-14)
        assert val == pytest.approx(quad_oracle(ComparisonProfile(2, -1.0), 0.0, 5.0),
                                    rel=1e-12)

    def test_unit_ball_volume(self):
        # boundary area 4*pi times the clamped integral gives the ball volume
        prof = ComparisonProfile(3, -2.0)
        vol = 4 * math.pi * area_ratio_integral(prof, 0.0, 1.0)
        assert vol == pytest.approx(4 * math.pi / 3, rel=1e-14)

    def test_matches_quadrature_random(self):
        rng = np.random.default_rng(20260810)
        for _ in range(120):
            n = int(rng.integers(2, 7))
            H = float(rng.uniform(-4, 4))
            d2, d1 = np.sort(rng.uniform(0, 3, size=2))
            prof = ComparisonProfile(n, H)
            closed = area_ratio_integral(prof, float(d2), float(d1))
            approx = quad_oracle(prof, float(d2), float(d1))
            assert closed == pytest.approx(approx, rel=1e-10, abs=1e-12)

    def test_rejects_reversed_limits(self):
        with pytest.raises(ValueError):
            area_ratio_integral(ComparisonProfile(2, 0.0), 2.0, 1.0)

    def test_past_focal_is_zero(self):
        prof = ComparisonProfile(3, -2.0)
        assert area_ratio_integral(prof, 1.0, 4.0) == 0.0


class TestLaplacianBound:
    def test_zero_curvature_gives_zero(self):
        assert laplacian_bound(5, 0.0, 2.0) == 0.0

    def test_positive_curvature_value(self):
        # (n-1)H/(H r + n - 1) with n=3, H=2, r=1: 4/4
        assert laplacian_bound(3, 2.0, 1.0) == 1.0

    def test_unit_disk_exact(self):
        # equals the exact Laplacian -(n-1)/(R-r) of the disk distance field
        assert laplacian_bound(2, -1.0, 0.5) == -2.0

    def test_ball_equality_family(self):
        # laplacian_bound(n, -(n-1)/R, r) + (n-1)/(R-r) = 0 for 0 <= r < R
        for n in (2, 3, 5):
            for R in (1.0, 2.0):
                for r in np.linspace(0.0, R * 0.96875, 32):  # dyadic grid
                    got = laplacian_bound(n, -(n - 1) / R, float(r))
                    assert got + (n - 1) / (R - r) == pytest.approx(0.0, abs=1e-11)

    def test_pole_signalled(self):
        with pytest.raises(FocalPoleError):
            laplacian_bound(3, -2.0, 1.0)


class TestFocalAndDiameter:
    def test_focal_radius_values(self):
        assert focal_radius(ComparisonProfile(2, -1.0)) == 1.0
        assert focal_radius(ComparisonProfile(3, -2.0)) == 1.0  # unit-ball inradius
        assert focal_radius(ComparisonProfile(4, 0.0)) == math.inf
        assert focal_radius(ComparisonProfile(4, 2.0)) == math.inf

    def test_diameter_bound_values(self):
        assert diameter_bound(ComparisonProfile(2, -1.0), math.pi) == pytest.approx(
            math.pi + 2.0, rel=1e-15)
        assert diameter_bound(ComparisonProfile(3, -2.0), 0.0) == 2.0
        # unit-ball sanity: bound pi+2 dominates the true diameter 2
        assert diameter_bound(ComparisonProfile(3, -2.0), math.pi) >= 2.0

    def test_diameter_bound_rejects_nonnegative_H(self):
        with pytest.raises(ValueError):
            diameter_bound(ComparisonProfile(2, 0.0), 1.0)


class TestVolumeBoundAndTail:
    def test_cylinder_equality(self):
        # n = k+1, H = 0: bound j * Vol(S^k), met with equality by the
        # product family
        sigma_1 = 2 * math.pi
        for j in range(1, 9):
            bound = volume_annulus_bound(ComparisonProfile(2, 0.0), sigma_1, 0.0, float(j))
            assert bound == pytest.approx(j * sigma_1, rel=1e-15)

    def test_zero_boundary_area(self):
        assert volume_annulus_bound(ComparisonProfile(4, -1.0), 0.0, 0.0, 2.0) == 0.0

    def test_clamped_ball_volume(self):
        bound = volume_annulus_bound(ComparisonProfile(3, -2.0), 4 * math.pi, 0.0, 10.0)
        assert bound == pytest.approx(4 * math.pi / 3, rel=1e-14)

    def test_tail_zero_at_zero(self):
        assert swif_tail(ComparisonProfile(3, -1.0), 17.0, 0.0) == 0.0

    def test_tail_flat_case(self):
        got = swif_tail(ComparisonProfile(2, 0.0), 2 * math.pi, 0.1)
        assert got == pytest.approx(0.2 * math.pi, rel=1e-15)

    def test_tail_saturates_past_focal(self):
        prof = ComparisonProfile(2, -1.0)
        for d in (1.0, 2.0, 9.0):
            assert swif_tail(prof, 2 * math.pi, d) == pytest.approx(math.pi, rel=1e-14)

    def test_tail_monotone_and_consistent(self):
        prof = ComparisonProfile(3, -0.8)
        grid = np.linspace(0.0, 5.0, 80)
        vals = [swif_tail(prof, 3.3, float(d)) for d in grid]
        assert all(a <= b + 1e-15 for a, b in zip(vals, vals[1:]))
        for d in grid:
            assert swif_tail(prof, 3.3, float(d)) == volume_annulus_bound(
                prof, 3.3, 0.0, float(d))


class TestProfileValidation:
    def test_rejects_small_dimension(self):
        with pytest.raises(ValueError):
            ComparisonProfile(1, 0.0)

    def test_rejects_nonfinite_H(self):
        with pytest.raises(ValueError):
            ComparisonProfile(3, math.inf)

    def test_any_sign_of_H_allowed(self):
        ComparisonProfile(2, -100.0)
        ComparisonProfile(2, 100.0)
