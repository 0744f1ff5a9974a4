"""Error calculus, time optimization, and the radius-error tradeoff."""

import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lcdisc import (
    DiscriminationReport,
    InvalidParameterError,
    Priors,
    accessible_error,
    build_report,
    inaccessible_error,
    map_error,
    optimal_measurement_time,
    outside_probability,
    outside_probability_sweep,
    posteriors_on_unknown,
    strategy_error,
    total_error,
    tradeoff_curve,
)

probs = st.floats(0.0, 1.0)


def test_priors_fields():
    priors = Priors(0.3)
    assert priors.pi0 == 0.3
    assert priors.pi1 == 0.7


@pytest.mark.parametrize("bad", [-0.1, 1.5, float("nan"), float("inf")])
def test_priors_validation(bad):
    with pytest.raises(InvalidParameterError):
        Priors(bad)


def test_posteriors_equal_priors():
    assert posteriors_on_unknown(Priors(0.3)) == (0.3, 0.7)
    assert posteriors_on_unknown(Priors(1.0)) == (1.0, 0.0)


def test_accessible_error_is_zero():
    assert accessible_error() == 0.0


def test_error_values():
    assert total_error(Priors(0.5), 1.0) == 0.5
    assert total_error(Priors(0.5), 0.0) == 0.0
    assert total_error(Priors(1.0), 0.7) == 0.0
    assert total_error(Priors(0.3), 0.5) == pytest.approx(2 * 0.3 * 0.7 * 0.5)
    assert map_error(Priors(0.3), 0.5) == pytest.approx(0.3 * 0.5)


@settings(max_examples=200)
@given(pi0=probs, p_t=probs)
def test_error_decomposition_identity(pi0, p_t):
    priors = Priors(pi0)
    total = total_error(priors, p_t)
    assert total == accessible_error() + inaccessible_error(priors, p_t)
    assert total == pytest.approx(2.0 * pi0 * (1.0 - pi0) * p_t, abs=1e-15)


@settings(max_examples=200)
@given(pi0=probs, p_t=probs)
def test_error_symmetry_and_bounds(pi0, p_t):
    mirrored = total_error(Priors(1.0 - pi0), p_t)
    assert total_error(Priors(pi0), p_t) == pytest.approx(mirrored, abs=1e-15)
    # Probability matching is maximized by even priors and never beats MAP.
    assert total_error(Priors(pi0), p_t) <= 0.5 * p_t + 1e-15
    assert map_error(Priors(pi0), p_t) <= total_error(Priors(pi0),
                                                      p_t) + 1e-15


def test_strategy_dispatch():
    priors = Priors(0.3)
    assert strategy_error("paper", priors, 0.5) == total_error(priors, 0.5)
    assert strategy_error("map", priors, 0.5) == map_error(priors, 0.5)
    with pytest.raises(InvalidParameterError):
        strategy_error("bogus", priors, 0.5)


def test_error_rejects_bad_probability():
    with pytest.raises(InvalidParameterError):
        total_error(Priors(0.5), 1.5)
    with pytest.raises(InvalidParameterError):
        map_error(Priors(0.5), float("nan"))


def test_outside_probability_complements_inside(gauss_profile):
    from lcdisc import inside_probability
    p_in = inside_probability(gauss_profile, 2.0, 0.0)
    assert outside_probability(gauss_profile, 2.0, 0.0) == pytest.approx(
        1.0 - p_in, abs=1e-12)
    assert outside_probability(gauss_profile, 0.0, 0.0) == 1.0
    assert outside_probability(gauss_profile, 25.0, 0.0) <= 1e-6


def test_outside_sweep_matches_scalar(gauss_d3):
    ts = np.array([0.0, 1.5, 4.0])
    sweep = outside_probability_sweep(gauss_d3, 1.0, ts)
    scalars = [outside_probability(gauss_d3, 1.0, t) for t in ts]
    assert np.max(np.abs(sweep - np.array(scalars))) < 1e-9


def test_optimal_time_concentric_prefers_t0(gauss_profile):
    # A packet already centered on the ball only spreads with time, so the
    # window edge t = 0 is optimal and the boundary warning must fire.
    sweep = outside_probability_sweep(gauss_profile, 2.0,
                                      np.linspace(0.0, 2.0, 12))
    assert np.all(np.diff(sweep) >= -1e-9)
    with pytest.warns(UserWarning, match="boundary"):
        best = optimal_measurement_time(gauss_profile, 2.0, (0.0, 2.0),
                                        n_grid=12)
    assert best.t_star == 0.0
    assert best.on_boundary


def test_optimal_time_degenerate_window(gauss_d10):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        best = optimal_measurement_time(gauss_d10, 2.0, (5.0, 5.001))
    assert 5.0 <= best.t_star <= 5.001


def test_optimal_time_interior_minimum(gauss_d10):
    best = optimal_measurement_time(gauss_d10, 2.0, (6.0, 14.0), n_grid=17)
    assert 9.0 < best.t_star < 11.0
    assert not best.on_boundary
    # The reported value can never beat any directly evaluated time.
    ts = np.linspace(6.0, 14.0, 50)
    sweep = outside_probability_sweep(gauss_d10, 2.0, ts)
    assert best.p_t_star <= sweep.min() + 1e-12


def test_optimal_time_earliest_tie(gauss_profile):
    # R large enough that p_t is pinned at the clip floor over the whole
    # window; every candidate ties and the earliest time must win.
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        best = optimal_measurement_time(gauss_profile, 30.0, (0.0, 1.0),
                                        n_grid=9)
    assert best.t_star == 0.0


def test_optimal_time_validation(gauss_profile):
    with pytest.raises(InvalidParameterError):
        optimal_measurement_time(gauss_profile, 2.0, (1.0, 1.0))
    with pytest.raises(InvalidParameterError):
        optimal_measurement_time(gauss_profile, 2.0, (0.0, 1.0), n_grid=4)


def test_build_report_fields():
    report = build_report(Priors(0.3), R=2.0, t_meas=1.5, p_t=0.25)
    assert isinstance(report, DiscriminationReport)
    assert report.R == 2.0
    assert report.t_meas == 1.5
    assert report.p_t == 0.25
    assert report.P_e == pytest.approx(2 * 0.3 * 0.7 * 0.25)
    assert (report.posterior0, report.posterior1) == (0.3, 0.7)
    assert report.scan_T == 2.0
    assert report.total_T == 3.5


def test_tradeoff_curve_shrinks_error(gauss_d10):
    reports = tradeoff_curve(gauss_d10, Priors(0.5),
                             np.array([1.0, 2.0, 4.0, 8.0]), (6.0, 14.0),
                             n_grid=12)
    errors = [r.P_e for r in reports]
    assert all(b < a for a, b in zip(errors, errors[1:]))
    for r in reports:
        assert r.P_e == pytest.approx(2 * 0.25 * r.p_t, abs=1e-12)
        assert r.total_T == r.t_meas + r.R


def test_tradeoff_curve_fixed_time(gauss_profile):
    reports = tradeoff_curve(gauss_profile, Priors(0.4),
                             np.array([0.5, 2.0, 25.0]), (0.0, 1.0),
                             fixed_t=0.0)
    for r in reports:
        assert r.t_meas == 0.0
        assert r.p_t == pytest.approx(
            outside_probability(gauss_profile, r.R, 0.0), abs=1e-12)
    # A ball covering essentially all the mass drives the error to zero.
    assert reports[-1].P_e <= 1e-6 * 2.0 * 0.4 * 0.6


def test_tradeoff_curve_zero_radius_reaches_prior_error(gauss_profile):
    report = tradeoff_curve(gauss_profile, Priors(0.3), np.array([0.0]),
                            (0.0, 1.0), fixed_t=0.0)[0]
    assert report.p_t == 1.0
    assert report.P_e == total_error(Priors(0.3), 1.0)


def test_tradeoff_curve_validation(gauss_profile):
    with pytest.raises(InvalidParameterError):
        tradeoff_curve(gauss_profile, Priors(0.5), np.array([]), (0.0, 1.0))
    with pytest.raises(InvalidParameterError):
        tradeoff_curve(gauss_profile, Priors(0.5), np.array([2.0, 1.0]),
                       (0.0, 1.0))
