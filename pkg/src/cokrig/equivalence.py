"""Sufficient conditions for two bivariate Matérn Gaussian measures to be equivalent.

Both measures share the smoothness ``nu``. On a bounded domain in dimension
``d <= 3`` they are equivalent when

* each marginal keeps its microergodic parameter ``sigma_ii * alpha**(2 nu)``, and
* the cross-correlation ``sigma_12 / sqrt(sigma_11 sigma_22)`` is the same.

``sigma_ii`` is read as the marginal variance throughout. The dimension
restriction is not checked: nothing here depends on ``d``. Failing the
check says nothing about non-equivalence, the conditions are only sufficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import ParameterError, PreconditionError

DEFAULT_REL_TOL = 1e-9


@dataclass(frozen=True)
class BivariateMaternSpec:
    sigma11: float
    sigma22: float
    sigma12: float
    alpha: float
    nu: float = 0.5

    def __post_init__(self):
        for name in ("sigma11", "sigma22", "alpha", "nu"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ParameterError(f"{name} must be finite and > 0, got {value!r}")
        if not math.isfinite(self.sigma12):
            raise ParameterError("sigma12 must be finite")
        if abs(self.sigma12) > math.sqrt(self.sigma11 * self.sigma22) * (1 + 1e-15):
            raise ParameterError("|sigma12| exceeds sqrt(sigma11 * sigma22)")

    @property
    def correlation(self):
        return self.sigma12 / math.sqrt(self.sigma11 * self.sigma22)


def microergodic(sigma2, alpha, nu):
    """``sigma2 * alpha**(2 nu)``."""
    return sigma2 * alpha ** (2 * nu)


@dataclass(frozen=True)
class ConditionResult:
    name: str
    first: float
    second: float
    abs_residual: float
    rel_residual: float
    satisfied: bool


@dataclass(frozen=True)
class EquivalenceVerdict:
    satisfied: bool
    conditions: tuple

    def condition(self, name) -> ConditionResult:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def format(self):
        """Aligned text table of the per-condition diagnostics."""
        rows = [("condition", "first", "second", "abs_residual", "rel_residual", "ok")]
        for c in self.conditions:
            rows.append((c.name, f"{c.first:.12g}", f"{c.second:.12g}", f"{c.abs_residual:.6g}",
                         f"{c.rel_residual:.6g}", "yes" if c.satisfied else "no"))
        widths = [max(len(row[k]) for row in rows) for k in range(len(rows[0]))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
        lines.append(f"sufficient conditions {'hold' if self.satisfied else 'fail'}")
        return "\n".join(lines) + "\n"


def _compare(name, a, b, rel_tol):
    diff = abs(a - b)
    scale = max(abs(a), abs(b))
    rel = diff / scale if scale > 0 else 0.0
    return ConditionResult(name, a, b, diff, rel, rel <= rel_tol)


def check_equivalence_conditions(spec1: BivariateMaternSpec, spec2: BivariateMaternSpec,
                                 rel_tol=DEFAULT_REL_TOL) -> EquivalenceVerdict:
    """Evaluate both conditions; relative residuals are ``|a - b| / max(|a|, |b|)``."""
    if spec1.nu != spec2.nu:
        raise PreconditionError(f"smoothness must be shared, got nu={spec1.nu} and nu={spec2.nu}")
    if not (rel_tol > 0):
        raise ParameterError("rel_tol must be > 0")
    conds = (
        _compare("microergodic_11",
                 microergodic(spec1.sigma11, spec1.alpha, spec1.nu),
                 microergodic(spec2.sigma11, spec2.alpha, spec2.nu), rel_tol),
        _compare("microergodic_22",
                 microergodic(spec1.sigma22, spec1.alpha, spec1.nu),
                 microergodic(spec2.sigma22, spec2.alpha, spec2.nu), rel_tol),
        _compare("cross_correlation", spec1.correlation, spec2.correlation, rel_tol),
    )
    return EquivalenceVerdict(all(c.satisfied for c in conds), conds)
