"""Position amplitude, radial grids, cap weights, and ball probabilities."""

import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lcdisc import (
    InvalidParameterError,
    NumericFailureError,
    ResourceLimitError,
    amplitude_on_radii,
    centered_amplitude,
    default_r_max,
    inside_probability,
    inside_probability_sweep,
    oracle_inside_probability_3d,
    quantile_radius,
    radial_density_grid,
    sphere_cap_weight,
)

# Frozen regression values for the standard Gaussian profile (k0=5, sigma=1).
# The amplitude values integrate over the stored [0, k_max] interval, so they
# carry the (bounded) cutoff truncation along with the quadrature.
AMP_R1_T0 = -0.169235086158698 + 0.0j
AMP_R1_T3 = 0.004150710280765928 + 0.0031688912988680215j
INSIDE_G_D0_R2_T0 = 0.9998676918917029
INSIDE_G_D10_R2_T10 = 9.370065357e-03
INSIDE_E_D0_R2_T0 = 0.9997536775


def _amp_oracle(profile, r, t, n=200001):
    """Dense-trapezoid amplitude over the profile's own truncated interval."""
    k = np.linspace(0.0, profile.k_max, n)
    with np.errstate(invalid="ignore"):
        j0 = np.where(k * r < 1e-12, 1.0, np.sin(k * r) / np.maximum(k * r,
                                                                     1e-300))
    f = k ** 1.5 * profile.magnitude(k) * j0 * np.exp(-1j * k * t)
    return np.trapezoid(f, k) / np.sqrt(np.pi)


def test_amplitude_matches_trapezoid_oracle(gauss_profile):
    for t in (0.0, 3.0):
        got = centered_amplitude(gauss_profile, 1.0, t)
        assert got == pytest.approx(_amp_oracle(gauss_profile, 1.0, t),
                                    abs=1e-8)


def test_amplitude_frozen(gauss_profile):
    assert centered_amplitude(gauss_profile, 1.0, 0.0) == pytest.approx(
        AMP_R1_T0, abs=1e-6)
    assert centered_amplitude(gauss_profile, 1.0, 3.0) == pytest.approx(
        AMP_R1_T3, abs=1e-6)


def test_amplitude_real_at_t0(gauss_profile):
    # exp(-i k t) == 1 at t = 0, so the integrand is purely real.
    amp = amplitude_on_radii(gauss_profile, np.linspace(0.0, 5.0, 17), 0.0)
    assert np.max(np.abs(amp.imag)) < 1e-12


def test_amplitude_center_value(gauss_profile):
    # j0(0) = 1 reduces A(0, 0) to the plain k^{3/2} g moment.
    k = np.linspace(0.0, gauss_profile.k_max, 200001)
    moment = np.trapezoid(k ** 1.5 * gauss_profile.magnitude(k),
                          k) / np.sqrt(np.pi)
    assert centered_amplitude(gauss_profile, 0.0, 0.0) == pytest.approx(
        moment, abs=1e-8)


def test_amplitude_rejects_negative_radius(gauss_profile):
    with pytest.raises(InvalidParameterError):
        amplitude_on_radii(gauss_profile, np.array([-0.5, 1.0]), 0.0)


def test_amplitude_unreachable_tolerance_raises(gauss_profile):
    with pytest.raises(NumericFailureError) as excinfo:
        amplitude_on_radii(gauss_profile, np.array([1.0]), 0.0,
                           amp_tol=1e-18)
    assert excinfo.value.estimate > 1e-18
    assert "estimate" in str(excinfo.value)


def test_default_r_max(gauss_profile, gauss_d10, expo_profile):
    assert default_r_max(gauss_profile, 0.0) == 10.0
    assert default_r_max(gauss_profile, 7.5) == 17.5
    assert default_r_max(gauss_d10, -3.0) == 23.0
    # 1/kappa dispersion scale: kappa=2 gives a 20-unit tail allowance.
    assert default_r_max(expo_profile, 0.0) == 20.0


@pytest.mark.parametrize("fixture,t", [
    ("gauss_profile", 0.0),
    ("gauss_profile", 7.5),
    ("gauss_d10", 0.0),
    ("expo_profile", 5.0),
])
def test_grid_norm_unit_at_defaults(fixture, t, request):
    grid = radial_density_grid(request.getfixturevalue(fixture), t)
    assert grid.grid_norm == pytest.approx(1.0, abs=1e-6)
    assert not grid.coverage_warning


def test_grid_norm_preserved_under_evolution(gauss_profile):
    n0 = radial_density_grid(gauss_profile, 0.0, r_max=25.0).grid_norm
    n3 = radial_density_grid(gauss_profile, 3.0, r_max=25.0).grid_norm
    assert abs(n0 - n3) < 2e-6


def test_grid_norm_unit_on_explicit_grids(gauss_profile):
    assert radial_density_grid(gauss_profile, 0.0, r_max=20.0,
                               n_points=2048).grid_norm == pytest.approx(
        1.0, abs=1e-6)
    assert radial_density_grid(gauss_profile, 10.0, r_max=40.0,
                               n_points=2048).grid_norm == pytest.approx(
        1.0, abs=1e-6)


def test_grid_fields_consistent(gauss_profile):
    grid = radial_density_grid(gauss_profile, 2.0, n_points=256)
    assert grid.time_t == 2.0
    assert grid.r_grid[0] == 0.0
    assert np.all(np.diff(grid.r_grid) > 0.0)
    assert np.array_equal(grid.density, np.abs(grid.amp) ** 2)


def test_grid_coverage_warning_on_short_grid(gauss_profile):
    grid = radial_density_grid(gauss_profile, 0.0, r_max=1.0)
    assert grid.coverage_warning
    assert grid.grid_norm < 1.0 - 1e-6


def test_grid_validation(gauss_profile):
    with pytest.raises(InvalidParameterError):
        radial_density_grid(gauss_profile, 0.0, r_max=0.0)
    with pytest.raises(InvalidParameterError):
        radial_density_grid(gauss_profile, 0.0, n_points=8)


def test_exponential_density_peaks_at_center(expo_profile):
    for n_points in (2048, 20480):
        grid = radial_density_grid(expo_profile, 0.0, n_points=n_points)
        assert int(np.argmax(grid.density)) == 0


def test_quantile_radius(gauss_profile):
    grid = radial_density_grid(gauss_profile, 0.0)
    assert quantile_radius(grid, 0.0) == 0.0
    r50 = quantile_radius(grid, 0.5)
    r99 = quantile_radius(grid, 0.99)
    assert 0.0 < r50 < r99 < grid.r_grid[-1]
    assert 1.30 < r99 < 1.46
    with pytest.raises(InvalidParameterError):
        quantile_radius(grid, 1.5)


def _cap_weight_oracle(rho, R, d, n=200001):
    """Solid-angle fraction via trapezoid of the inside indicator in cos."""
    u = np.linspace(-1.0, 1.0, n)
    dist_sq = d * d + rho[:, None] ** 2 + 2.0 * d * rho[:, None] * u[None, :]
    inside = (dist_sq <= R * R).astype(float)
    return 0.5 * np.trapezoid(inside, u, axis=1)


@pytest.mark.parametrize("R,d", [(2.0, 1.0), (1.0, 2.5), (3.0, 3.0),
                                 (2.0, 0.5)])
def test_cap_weight_matches_indicator_oracle(R, d):
    rho = np.linspace(0.01, R + d + 1.0, 57)
    got = sphere_cap_weight(rho, R, d)
    assert np.max(np.abs(got - _cap_weight_oracle(rho, R, d))) < 1e-4


def test_cap_weight_limit_regions():
    rho = np.linspace(0.0, 8.0, 101)
    w = sphere_cap_weight(rho, 3.0, 1.0)
    assert np.all(w[rho <= 2.0] == 1.0)
    assert np.all(w[rho >= 4.0] == 0.0)
    w = sphere_cap_weight(rho, 1.0, 3.0)
    assert np.all(w[rho <= 2.0] == 0.0)
    assert np.all(w[rho >= 4.0] == 0.0)


def test_cap_weight_concentric_indicator():
    rho = np.array([0.0, 0.5, 1.999, 2.001, 5.0])
    assert np.array_equal(sphere_cap_weight(rho, 2.0, 0.0),
                          np.array([1.0, 1.0, 1.0, 0.0, 0.0]))


@settings(max_examples=200, deadline=None)
@given(R=st.floats(0.1, 5.0), d=st.floats(0.0, 5.0),
       rho=st.floats(0.001, 12.0))
def test_cap_weight_bounded(R, d, rho):
    w = float(sphere_cap_weight(np.array([rho]), R, d)[0])
    assert 0.0 <= w <= 1.0


def test_inside_probability_frozen(gauss_profile, gauss_d10, expo_profile):
    assert inside_probability(gauss_profile, 2.0, 0.0) == pytest.approx(
        INSIDE_G_D0_R2_T0, abs=1e-6)
    assert inside_probability(gauss_d10, 2.0, 10.0) == pytest.approx(
        INSIDE_G_D10_R2_T10, abs=1e-6)
    assert inside_probability(expo_profile, 2.0, 0.0) == pytest.approx(
        INSIDE_E_D0_R2_T0, abs=1e-6)


def test_inside_probability_edge_radii(gauss_profile, expo_profile):
    assert inside_probability(gauss_profile, 0.0, 5.0) == 0.0
    assert inside_probability(gauss_profile, 25.0, 0.0) == pytest.approx(
        1.0, abs=1e-6)
    assert inside_probability(expo_profile, 60.0, 0.0) == pytest.approx(
        1.0, abs=1e-6)


def test_inside_probability_monotone_in_radius(gauss_profile):
    values = np.array([inside_probability(gauss_profile, R, 0.0)
                       for R in np.linspace(0.0, 4.0, 20)])
    assert np.all(np.diff(values) >= -1e-9)


def test_inside_probability_recentering(gauss_d3, gauss_profile):
    # Overriding the center distance to zero must reproduce the concentric
    # geometry regardless of the profile's stored offset.
    moved = inside_probability(gauss_d3, 1.5, 2.0, center_distance=0.0)
    concentric = inside_probability(gauss_profile, 1.5, 2.0)
    base = inside_probability(gauss_d3, 1.5, 2.0)
    assert moved == pytest.approx(concentric, rel=1e-12)
    assert moved > base  # packet starts centered, so more mass is inside


def test_inside_sweep_matches_scalar(gauss_d3):
    ts = np.array([0.0, 2.5, 7.0])
    sweep = inside_probability_sweep(gauss_d3, 2.0, ts)
    scalars = np.array([inside_probability(gauss_d3, 2.0, t) for t in ts])
    assert np.max(np.abs(sweep - scalars)) < 1e-9


def test_inside_probability_validation(gauss_profile):
    with pytest.raises(InvalidParameterError):
        inside_probability(gauss_profile, -1.0, 0.0)
    with pytest.raises(InvalidParameterError):
        inside_probability(gauss_profile, 2.0, 0.0, center_distance=-1.0)
    with pytest.raises(NumericFailureError):
        inside_probability(gauss_profile, 2.0, 0.0, prob_tol=1e-18)


def test_oracle_agrees_on_coarse_grid(gauss_profile):
    exact = inside_probability(gauss_profile, 2.0, 0.0)
    brute = oracle_inside_probability_3d(gauss_profile, 2.0, 0.0, grid_n=64)
    assert abs(brute - exact) / exact < 1e-3


def test_oracle_reaches_unity_on_covering_ball(gauss_profile):
    # A ball holding essentially all the mass must integrate to 1 within
    # the oracle's own resolution.
    brute = oracle_inside_probability_3d(gauss_profile, 4.0, 0.0, grid_n=64)
    assert brute == pytest.approx(1.0, abs=2e-3)


def test_oracle_edge_and_validation(gauss_profile, monkeypatch):
    assert oracle_inside_probability_3d(gauss_profile, 0.0, 0.0, 64) == 0.0
    with pytest.raises(InvalidParameterError):
        oracle_inside_probability_3d(gauss_profile, 2.0, 0.0, grid_n=16)
    with pytest.raises(ResourceLimitError):
        oracle_inside_probability_3d(gauss_profile, 2.0, 0.0, grid_n=512)
    monkeypatch.setenv("LCD_MAX_GRID", "48")
    with pytest.raises(ResourceLimitError):
        oracle_inside_probability_3d(gauss_profile, 2.0, 0.0, grid_n=64)


def test_amplitude_norm_invariance_against_rescaled_profile(gauss_profile):
    # Doubling the profile amplitude quadruples every probability.
    doubled = dataclasses.replace(gauss_profile,
                                  norm_const=2.0 * gauss_profile.norm_const)
    base = inside_probability(gauss_profile, 1.0, 0.0)
    assert inside_probability(doubled, 1.0, 0.0) == pytest.approx(4.0 * base,
                                                                  rel=1e-9)
