"""Monte Carlo simulation of the restricted discrimination measurement.

Each trial draws a true channel from the priors, a detector firing position
from the spatial density |A|^2 at the measurement time, and applies the
decision rule: inside the ball the orthogonal channels are identified
perfectly; outside, the outcome is "unknown" and the observer guesses from
the priors (probability matching by default, MAP as an extension).

Randomness contract
-------------------
The generator is Philox (numpy's counter-based ``Philox4x64``), seeded with
the run seed as key.  Trial ``i`` uses an independent substream obtained by
setting the 256-bit counter to ``i << 64``, which leaves 2^64 draws of
headroom per trial.  Within a trial the uniforms are consumed in a fixed
order:

1. channel draw (PLUS when u < pi0),
2. detection radius by inverse-transform from the cached radial CDF,
3. cos(theta) = 2u - 1,
4. phi = 2 pi u,
5. only when the outcome is unknown under probability matching: the guess
   (state PLUS when u < pi0).

Any implementation following this contract reproduces the trial sequence
bit for bit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np
from numpy.random import Generator, Philox

from lcdisc.amplitude import HelicityChannel, MomentumProfile
from lcdisc.discrimination import (
    STRATEGIES,
    STRATEGY_MAP,
    STRATEGY_PAPER,
    Priors,
    outside_probability,
    strategy_error,
)
from lcdisc.errors import InvalidParameterError, InvalidStateError
from lcdisc.propagation import (
    DEFAULT_AMP_TOL,
    DEFAULT_PROB_TOL,
    RadialAmplitude,
    radial_density_grid,
)

DEFAULT_CDF_CELLS = 4096
MIN_TRIALS = 1000


class Outcome(enum.Enum):
    """Result classes of the restricted measurement."""

    CHANNEL_PLUS = "plus"
    CHANNEL_MINUS = "minus"
    UNKNOWN = "unknown"


_CHANNEL_OUTCOME = {
    HelicityChannel.PLUS: Outcome.CHANNEL_PLUS,
    HelicityChannel.MINUS: Outcome.CHANNEL_MINUS,
}


@dataclass(frozen=True)
class TrialRecord:
    """One simulated trial.

    Inside the ball the outcome always matches the true channel and
    ``correct`` is True; outside, the outcome is UNKNOWN and ``guess`` comes
    from the configured strategy.
    """

    index: int
    true_state: HelicityChannel
    detection_radius_rho: float
    inside_omega: bool
    outcome: Outcome
    guess: HelicityChannel
    correct: bool


@dataclass(frozen=True)
class ErrorEstimate:
    """Aggregated empirical error rate with its analytic prediction."""

    n_trials: int
    n_errors: int
    empirical_rate: float
    analytic_rate: float
    std_err: float
    n_unknown: int
    unknown_rate: float
    p_t: float


class DetectionSampler:
    """Inverse-transform sampler for the radial detection distribution.

    The CDF of 4 pi rho^2 |A|^2 is cached on the grid once; each draw costs
    one binary search plus linear interpolation inside the cell, so the
    per-trial cost is deterministic (no rejection loops).
    """

    def __init__(self, grid: RadialAmplitude):
        if grid.coverage_warning:
            raise InvalidStateError(
                "radial grid misses too much mass for sampling; "
                "increase r_max")
        r = np.asarray(grid.r_grid, dtype=float)
        if r.size < 2 or r[-1] <= r[0]:
            raise InvalidStateError("radial grid is degenerate")
        f = 4.0 * math.pi * r * r * np.asarray(grid.density, dtype=float)
        cell_mass = 0.5 * (f[1:] + f[:-1]) * np.diff(r)
        total = float(cell_mass.sum())
        if not (math.isfinite(total) and total > 0.0):
            raise InvalidStateError("radial grid carries no probability mass")
        self._r = r
        self._cdf = np.concatenate(([0.0], np.cumsum(cell_mass))) / total
        self.time_t = grid.time_t

    @classmethod
    def for_profile(
        cls,
        profile: MomentumProfile,
        t: float,
        n_cells: int = DEFAULT_CDF_CELLS,
        r_max: float | None = None,
        amp_tol: float = DEFAULT_AMP_TOL,
    ) -> DetectionSampler:
        grid = radial_density_grid(profile, t, r_max=r_max,
                                   n_points=n_cells + 1, amp_tol=amp_tol)
        return cls(grid)

    def sample_radius(self, rng: Generator) -> float:
        u = rng.random()
        i = int(np.searchsorted(self._cdf, u, side="right")) - 1
        i = min(max(i, 0), len(self._r) - 2)
        span = self._cdf[i + 1] - self._cdf[i]
        frac = (u - self._cdf[i]) / span if span > 0.0 else 0.0
        return float(self._r[i] + frac * (self._r[i + 1] - self._r[i]))

    def sample(self, rng: Generator) -> tuple[float, np.ndarray]:
        """Draw (rho, unit direction); consumes three uniforms."""
        rho = self.sample_radius(rng)
        cos_theta = 2.0 * rng.random() - 1.0
        phi = 2.0 * math.pi * rng.random()
        sin_theta = math.sqrt(max(0.0, 1.0 - cos_theta * cos_theta))
        direction = np.array([sin_theta * math.cos(phi),
                              sin_theta * math.sin(phi),
                              cos_theta])
        return rho, direction


def sample_detection(sampler: DetectionSampler,
                     rng: Generator) -> tuple[float, np.ndarray]:
    """Draw one detection point as (radius about the packet center, direction)."""
    return sampler.sample(rng)


def trial_rng(seed: int, index: int) -> Generator:
    """Independent generator for one trial (see the module's randomness
    contract)."""
    return Generator(Philox(key=seed, counter=index << 64))


def run_trial(
    sampler: DetectionSampler,
    priors: Priors,
    R: float,
    offset_d: float,
    strategy: str,
    rng: Generator,
    index: int = 0,
) -> TrialRecord:
    """Simulate one firing and apply the decision rule.

    The packet center sits at distance ``offset_d`` from the origin; the
    firing at radius rho about that center lands inside the origin ball of
    radius R iff d^2 + rho^2 + 2 d rho cos(theta) <= R^2.
    """
    if strategy not in STRATEGIES:
        raise InvalidParameterError(
            f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    true_state = (HelicityChannel.PLUS if rng.random() < priors.pi0
                  else HelicityChannel.MINUS)
    rho, direction = sampler.sample(rng)
    dist_sq = offset_d * offset_d + rho * rho + \
        2.0 * offset_d * rho * direction[2]
    inside = dist_sq <= R * R
    if inside:
        outcome = _CHANNEL_OUTCOME[true_state]
        guess = true_state
    else:
        outcome = Outcome.UNKNOWN
        if strategy == STRATEGY_PAPER:
            guess = (HelicityChannel.PLUS if rng.random() < priors.pi0
                     else HelicityChannel.MINUS)
        else:
            # MAP: larger prior wins, tie broken toward PLUS (state 0)
            guess = (HelicityChannel.PLUS if priors.pi0 >= priors.pi1
                     else HelicityChannel.MINUS)
    return TrialRecord(
        index=index,
        true_state=true_state,
        detection_radius_rho=rho,
        inside_omega=bool(inside),
        outcome=outcome,
        guess=guess,
        correct=guess is true_state,
    )


def run_trials(
    profile: MomentumProfile,
    priors: Priors,
    R: float,
    t: float,
    n_trials: int,
    seed: int,
    strategy: str = STRATEGY_PAPER,
    sampler: DetectionSampler | None = None,
) -> Iterator[TrialRecord]:
    """Yield the deterministic trial sequence for a seed."""
    if sampler is None:
        sampler = DetectionSampler.for_profile(profile, t)
    for index in range(n_trials):
        yield run_trial(sampler, priors, R, profile.offset_d, strategy,
                        trial_rng(seed, index), index)


def estimate_error(
    profile: MomentumProfile,
    priors: Priors,
    R: float,
    t: float,
    n_trials: int,
    seed: int,
    strategy: str = STRATEGY_PAPER,
    prob_tol: float = DEFAULT_PROB_TOL,
    on_trial: Callable[[TrialRecord], None] | None = None,
) -> ErrorEstimate:
    """Empirical error rate over independent trials versus the analytic rate.

    ``on_trial``, when given, observes every record (used by the CLI to
    stream a per-trial CSV without a second pass).
    """
    if n_trials < MIN_TRIALS:
        raise InvalidParameterError(
            f"n_trials must be at least {MIN_TRIALS} for a usable estimate")
    p_t = outside_probability(profile, R, t, prob_tol)
    analytic = strategy_error(strategy, priors, p_t)
    n_errors = 0
    n_unknown = 0
    for record in run_trials(profile, priors, R, t, n_trials, seed, strategy):
        # in-domain outcomes identify the channel perfectly by construction
        assert record.correct or not record.inside_omega
        if not record.correct:
            n_errors += 1
        if record.outcome is Outcome.UNKNOWN:
            n_unknown += 1
        if on_trial is not None:
            on_trial(record)
    return ErrorEstimate(
        n_trials=n_trials,
        n_errors=n_errors,
        empirical_rate=n_errors / n_trials,
        analytic_rate=analytic,
        std_err=math.sqrt(analytic * (1.0 - analytic) / n_trials),
        n_unknown=n_unknown,
        unknown_rate=n_unknown / n_trials,
        p_t=p_t,
    )
