"""Closed-form cokriging results for the interleaved design.

With ``Y1`` observed at ``{+-2i/n}`` and ``Y2`` at ``{+-i/n}``, the cokriging
predictor of ``Y1(0)`` under the exponential model uses exactly six
observations::

    b1 Y1(-2/n) + b2 Y1(2/n) + b3 Y2(-2/n) + b4 Y2(-1/n) + b5 Y2(1/n) + b6 Y2(2/n)

Variances here use ``sigma11`` as the variance of ``Y1`` (not its square);
the dense solver confirms that reading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .covariance import BivariateModel
from .design import interleaved_design
from .exceptions import ParameterError
from .predictor import SUPPORT_THRESHOLD, cokrige


def _check(n, alpha, r):
    if isinstance(n, bool) or int(n) != n or n < 2 or n % 2:
        raise ParameterError(f"n must be an even integer >= 2, got {n!r}")
    if not (math.isfinite(alpha) and alpha > 0):
        raise ParameterError(f"alpha must be > 0, got {alpha!r}")
    if not (math.isfinite(r) and abs(r) < 1):
        raise ParameterError(f"r must satisfy |r| < 1, got {r!r}")


def _e(k, alpha, n):
    return math.exp(-k * alpha / n)


@dataclass(frozen=True)
class ClosedFormWeights:
    """Weights on Y1(-2/n), Y1(2/n), Y2(-2/n), Y2(-1/n), Y2(1/n), Y2(2/n)."""

    b1: float
    b2: float
    b3: float
    b4: float
    b5: float
    b6: float

    def as_tuple(self):
        return (self.b1, self.b2, self.b3, self.b4, self.b5, self.b6)

    def support_keys(self, n):
        """The ``(variable, site)`` key each weight belongs to, for design size ``n``."""
        return [(1, -2 / n), (1, 2 / n), (2, -2 / n), (2, -1 / n), (2, 1 / n), (2, 2 / n)]


def cokrige_weights_closed(n, alpha, r, sigma11=1.0, sigma22=1.0) -> ClosedFormWeights:
    """The six nonzero cokriging weights.

    The ``Y2`` weights are stated for equal marginal variances; for general
    variances they pick up the factor ``sqrt(sigma11 / sigma22)``.
    """
    _check(n, alpha, r)
    if not (sigma11 > 0 and sigma22 > 0):
        raise ParameterError("variances must be > 0")
    e1, e2, e4 = _e(1, alpha, n), _e(2, alpha, n), _e(4, alpha, n)
    scale = 1.0 if sigma11 == sigma22 else math.sqrt(sigma11 / sigma22)
    b1 = e2 / (e4 + 1)
    b3 = -r * e2 / (e4 + 1) * scale
    b4 = r * e1 / (e2 + 1) * scale
    return ClosedFormWeights(b1, b1, b3, b4, b4, b3)


def cokrige_variance_closed(n, alpha, r, sigma11=1.0):
    """Exact finite-n cokriging error variance for the interleaved design."""
    _check(n, alpha, r)
    if not (math.isfinite(sigma11) and sigma11 > 0):
        raise ParameterError(f"sigma11 must be > 0, got {sigma11!r}")
    e2, e4, e6 = _e(2, alpha, n), _e(4, alpha, n), _e(6, alpha, n)
    r2 = r * r
    num = -2 * e4 * r2 + e6 + 2 * e2 * r2 + e4 - e2 - 1
    return -sigma11 * num / ((e4 + 1) * (e2 + 1))


def krige_variance_two_neighbor(d, alpha, sigma11=1.0):
    """Kriging variance from two sites at ``+-d``: ``sigma11 (1 - u^2)/(1 + u^2)``, ``u = exp(-alpha d)``."""
    if not (math.isfinite(d) and d > 0):
        raise ParameterError(f"half-spacing d must be > 0, got {d!r}")
    if not (math.isfinite(alpha) and alpha > 0):
        raise ParameterError(f"alpha must be > 0, got {alpha!r}")
    if not (math.isfinite(sigma11) and sigma11 > 0):
        raise ParameterError(f"sigma11 must be > 0, got {sigma11!r}")
    u2 = math.exp(-2 * alpha * d)
    return sigma11 * -math.expm1(-2 * alpha * d) / (1 + u2)


def krige_rate_coefficient(alpha, sigma11=1.0):
    """Leading coefficient ``c`` in ``krig_var ~ c / n`` at half-spacing ``2/n``."""
    return 2 * sigma11 * alpha


def cokrige_rate_coefficient(alpha, r, sigma11=1.0):
    """Leading coefficient ``c`` in ``cokrig_var ~ c / n``."""
    return sigma11 * (2 - r * r) * alpha


@dataclass(frozen=True)
class WeightCheck:
    """Dense cokriging weights compared with the closed forms at one ``(n, alpha, r)``."""

    n: int
    alpha: float
    r: float
    dense: tuple
    closed: tuple
    max_deviation: float
    off_support_count: int
    off_support_max: float
    dense_variance: float
    closed_variance: float

    @property
    def variance_rel_error(self):
        return abs(self.dense_variance - self.closed_variance) / self.closed_variance

    @property
    def ok(self):
        return self.max_deviation < SUPPORT_THRESHOLD and self.off_support_count == 0


def verify_weights(n, alpha, r, sigma11=1.0, sigma22=1.0) -> WeightCheck:
    """Solve the dense cokriging system and compare with :func:`cokrige_weights_closed`."""
    closed = cokrige_weights_closed(n, alpha, r, sigma11, sigma22)
    pred = cokrige(interleaved_design(n), BivariateModel(sigma11, sigma22, r, alpha))
    on = np.zeros(len(pred.weights), dtype=bool)
    dense = []
    for var, site in closed.support_keys(n):
        mask = (pred.variables == var) & (pred.sites == site)
        on |= mask
        dense.append(float(pred.weights[mask][0]))
    off = np.abs(pred.weights[~on])
    dev = max(abs(a - b) for a, b in zip(dense, closed.as_tuple()))
    return WeightCheck(
        n=int(n), alpha=float(alpha), r=float(r),
        dense=tuple(dense), closed=closed.as_tuple(),
        max_deviation=dev,
        off_support_count=int(np.sum(off > SUPPORT_THRESHOLD)),
        off_support_max=float(off.max(initial=0.0)),
        dense_variance=pred.variance,
        closed_variance=cokrige_variance_closed(n, alpha, r, sigma11),
    )
