"""Composite Gauss-Legendre rules for oscillatory radial integrals.

The integrands here look like smooth envelopes times oscillations of a known
maximum frequency (k r, k t, or 2 k_max rho).  A fixed-order Gauss rule is
exact for polynomials up to degree 2n-1, so capping the panel width at a
small fraction of the local oscillation period keeps every panel in the
regime where Gauss-Legendre converges spectrally.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.polynomial.legendre import leggauss

from lcdisc.errors import InvalidParameterError

GAUSS_ORDER = 8
# panel width <= (period / PANELS_PER_PERIOD); one period spans 2*pi phase
PANELS_PER_PERIOD = 16.0


def panel_width(frequency: float) -> float:
    """Largest allowed panel width for a phase frequency (radians per unit)."""
    return 2.0 * math.pi / (PANELS_PER_PERIOD * max(frequency, 1.0))


def gauss_panels(
    a: float,
    b: float,
    max_width: float,
    order: int = GAUSS_ORDER,
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of a composite Gauss-Legendre rule on [a, b].

    The interval is split into equal panels no wider than ``max_width``.
    Returns empty arrays when the interval is empty.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise InvalidParameterError("integration limits must be finite")
    if max_width <= 0.0:
        raise InvalidParameterError("panel width must be positive")
    if b <= a:
        return np.empty(0), np.empty(0)
    n_panels = max(1, math.ceil((b - a) / max_width))
    x, w = leggauss(order)
    edges = np.linspace(a, b, n_panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def piecewise_gauss_panels(
    breakpoints: np.ndarray,
    max_width: float,
    order: int = GAUSS_ORDER,
) -> tuple[np.ndarray, np.ndarray]:
    """Composite rule over consecutive intervals given by ``breakpoints``.

    Panels never straddle a breakpoint, so integrands with kinks at the
    breakpoints are still smooth on every panel.
    """
    pts = np.asarray(breakpoints, dtype=float)
    if pts.ndim != 1 or pts.size < 2:
        raise InvalidParameterError("need at least two breakpoints")
    if np.any(np.diff(pts) < 0.0):
        raise InvalidParameterError("breakpoints must be sorted ascending")
    nodes = []
    weights = []
    for lo, hi in zip(pts[:-1], pts[1:]):
        x, w = gauss_panels(lo, hi, max_width, order)
        nodes.append(x)
        weights.append(w)
    return np.concatenate(nodes), np.concatenate(weights)
