"""Identification-error calculus for two orthogonal helicity states.

An observer controlling a ball of radius R can distinguish the two channels
perfectly whenever the detector fires inside the ball, so the only source of
error is the inaccessible complement.  With p_t the probability of firing
outside and priors (pi0, pi1):

* posteriors given an outside ("unknown") outcome equal the priors, because
  both states share one spatial density and the p_t factors cancel;
* guessing channel j with probability pi_j (probability matching) then errs
  with probability (pi0 pi1 + pi1 pi0) p_t = 2 pi0 pi1 p_t;
* the in-domain error is exactly zero, so the total identification error is
  P_e = 2 pi0 pi1 p_t.

Guessing the larger prior instead (the MAP rule) errs with min(pi0, pi1) p_t,
which is strictly smaller for skewed priors; it is provided as an optional
strategy for comparison, with probability matching the default.

The measurement time enters only through p_t, so choosing t to minimize p_t
minimizes the error.  The optimizer combines a coarse grid with deterministic
golden-section refinement and breaks ties toward the earliest time, since an
earlier measurement gives a shorter total protocol at equal error.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from lcdisc.amplitude import MomentumProfile
from lcdisc.errors import InvalidParameterError
from lcdisc.lightcone import scan_time_ball
from lcdisc.propagation import (
    DEFAULT_PROB_TOL,
    inside_probability,
    inside_probability_sweep,
)

GOLDEN_TOL = 1e-4
_CLIP_WARN = 1e-6
_TIE_EPS = 1e-12
_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

STRATEGY_PAPER = "paper"
STRATEGY_MAP = "map"
STRATEGIES = (STRATEGY_PAPER, STRATEGY_MAP)


@dataclass(frozen=True)
class Priors:
    """A priori probabilities of the two channels; pi1 is derived as 1 - pi0."""

    pi0: float

    def __post_init__(self):
        if not (math.isfinite(self.pi0) and 0.0 <= self.pi0 <= 1.0):
            raise InvalidParameterError("pi0 must lie in [0, 1]")

    @property
    def pi1(self) -> float:
        return 1.0 - self.pi0


@dataclass(frozen=True)
class OptimalTime:
    """Result of the measurement-time search."""

    t_star: float
    p_t_star: float
    on_boundary: bool


@dataclass(frozen=True)
class DiscriminationReport:
    """One point of the error-versus-time tradeoff.

    ``scan_T`` is the light-cone time R needed to collect outcomes from the
    ball, and ``total_T = t_meas + scan_T`` combines it with the measurement
    start; the two contributions are kept separate in the fields.
    """

    R: float
    t_meas: float
    p_t: float
    P_e: float
    posterior0: float
    posterior1: float
    scan_T: float
    total_T: float


def outside_probability(
    profile: MomentumProfile,
    R: float,
    t: float,
    prob_tol: float = DEFAULT_PROB_TOL,
) -> float:
    """Probability p_t that the detector fires outside the ball."""
    return _clip_probability(1.0 - inside_probability(profile, R, t, prob_tol))


def outside_probability_sweep(
    profile: MomentumProfile,
    R: float,
    t_values: np.ndarray,
    prob_tol: float = DEFAULT_PROB_TOL,
) -> np.ndarray:
    """Vectorized :func:`outside_probability` sharing quadrature tables."""
    p_in = inside_probability_sweep(profile, R, t_values, prob_tol)
    return np.array([_clip_probability(1.0 - p) for p in p_in])


def _clip_probability(p: float) -> float:
    if p < -_CLIP_WARN or p > 1.0 + _CLIP_WARN:
        warnings.warn(f"probability {p:.3e} clipped to [0, 1]; "
                      "quadrature tolerances may be too loose",
                      stacklevel=3)
    return min(max(p, 0.0), 1.0)


def posteriors_on_unknown(priors: Priors) -> tuple[float, float]:
    """Posterior probabilities given an outside outcome.

    Both states produce the same spatial density, so Bayes' rule leaves the
    priors unchanged: the p_t factors cancel exactly.
    """
    return priors.pi0, priors.pi1


def inaccessible_error(priors: Priors, p_t: float) -> float:
    """Error contributed by outside outcomes under probability matching."""
    _check_probability(p_t)
    post0, post1 = posteriors_on_unknown(priors)
    return (priors.pi0 * post1 + priors.pi1 * post0) * p_t


def accessible_error() -> float:
    """Error for outcomes inside the ball: exactly zero.

    The two channels are orthogonal, and the measurement restricted to the
    ball separates them perfectly, so in-domain outcomes never mislead.
    """
    return 0.0


def total_error(priors: Priors, p_t: float) -> float:
    """Total identification error 2 pi0 pi1 p_t (probability matching)."""
    return accessible_error() + inaccessible_error(priors, p_t)


def map_error(priors: Priors, p_t: float) -> float:
    """Error under the MAP guess, min(pi0, pi1) p_t; an extension, not the
    default rule."""
    _check_probability(p_t)
    return min(priors.pi0, priors.pi1) * p_t


def strategy_error(strategy: str, priors: Priors, p_t: float) -> float:
    """Analytic error rate for a named guessing strategy."""
    if strategy == STRATEGY_PAPER:
        return total_error(priors, p_t)
    if strategy == STRATEGY_MAP:
        return map_error(priors, p_t)
    raise InvalidParameterError(
        f"unknown strategy {strategy!r}; choose from {STRATEGIES}")


def _check_probability(p_t: float) -> None:
    if not (math.isfinite(p_t) and 0.0 <= p_t <= 1.0):
        raise InvalidParameterError("p_t must lie in [0, 1]")


def optimal_measurement_time(
    profile: MomentumProfile,
    R: float,
    t_window: tuple[float, float],
    n_grid: int = 32,
    prob_tol: float = DEFAULT_PROB_TOL,
) -> OptimalTime:
    """Minimize p_t over a time window.

    A coarse sweep over ``n_grid`` times brackets the minimum, then a
    golden-section search refines it to within GOLDEN_TOL.  Among all
    evaluated candidates whose p_t ties the minimum (to 1e-12), the earliest
    time wins.  A minimum sitting on a window boundary triggers a warning,
    since the window may be cutting the true optimum off.
    """
    t_lo, t_hi = (float(t_window[0]), float(t_window[1]))
    if not (math.isfinite(t_lo) and math.isfinite(t_hi) and t_lo < t_hi):
        raise InvalidParameterError("t_window must satisfy t_lo < t_hi")
    if n_grid < 8:
        raise InvalidParameterError("n_grid must be at least 8")

    ts = np.linspace(t_lo, t_hi, int(n_grid))
    ps = outside_probability_sweep(profile, R, ts, prob_tol)
    candidates = list(zip(ts.tolist(), ps.tolist()))
    i_min = int(np.argmin(ps))
    a = ts[max(i_min - 1, 0)]
    b = ts[min(i_min + 1, len(ts) - 1)]

    def p_of(t: float) -> float:
        p = outside_probability(profile, R, t, prob_tol)
        candidates.append((t, p))
        return p

    x1 = b - _INV_GOLDEN * (b - a)
    x2 = a + _INV_GOLDEN * (b - a)
    f1, f2 = p_of(x1), p_of(x2)
    while b - a > GOLDEN_TOL:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_GOLDEN * (b - a)
            f1 = p_of(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_GOLDEN * (b - a)
            f2 = p_of(x2)

    p_min = min(p for _, p in candidates)
    t_star, p_star = min(
        (t, p) for t, p in candidates if p <= p_min + _TIE_EPS)
    on_boundary = bool(t_star - t_lo < GOLDEN_TOL or
                       t_hi - t_star < GOLDEN_TOL)
    if on_boundary:
        warnings.warn("optimal time sits on the window boundary; "
                      "the window may be too narrow", stacklevel=2)
    return OptimalTime(t_star=float(t_star), p_t_star=float(p_star),
                       on_boundary=on_boundary)


def build_report(priors: Priors, R: float, t_meas: float,
                 p_t: float) -> DiscriminationReport:
    """Assemble a report from an already-computed p_t."""
    post0, post1 = posteriors_on_unknown(priors)
    scan = scan_time_ball(R)
    return DiscriminationReport(
        R=float(R),
        t_meas=float(t_meas),
        p_t=float(p_t),
        P_e=total_error(priors, p_t),
        posterior0=post0,
        posterior1=post1,
        scan_T=scan,
        total_T=float(t_meas) + scan,
    )


def tradeoff_curve(
    profile: MomentumProfile,
    priors: Priors,
    R_list: np.ndarray,
    t_window: tuple[float, float],
    n_grid: int = 32,
    fixed_t: float | None = None,
    prob_tol: float = DEFAULT_PROB_TOL,
) -> list[DiscriminationReport]:
    """Error report for each ball radius.

    Unless ``fixed_t`` pins the measurement time, t is optimized per radius:
    nothing in the protocol forces one shared t, and any measurement feasible
    at radius R stays feasible at a larger radius, which is what makes the
    resulting curve non-increasing.
    """
    radii = [float(R) for R in R_list]
    if not radii:
        raise InvalidParameterError("R_list must be nonempty")
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise InvalidParameterError("R_list must be strictly increasing")
    reports = []
    for R in radii:
        if fixed_t is not None:
            t_meas = float(fixed_t)
            p_t = outside_probability(profile, R, t_meas, prob_tol)
        else:
            best = optimal_measurement_time(profile, R, t_window, n_grid,
                                            prob_tol)
            t_meas, p_t = best.t_star, best.p_t_star
        reports.append(build_report(priors, R, t_meas, p_t))
    return reports
