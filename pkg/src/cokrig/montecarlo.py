"""Monte Carlo check of the exact kriging and cokriging variances."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .covariance import BivariateModel
from .design import interleaved_design
from .predictor import cokrige, krige, sample_paths

MIN_SAMPLES = 1000
N_SE = 3.0


@dataclass(frozen=True)
class MseCheck:
    label: str
    exact: float
    empirical: float
    std_error: float

    @property
    def z(self):
        return (self.empirical - self.exact) / self.std_error if self.std_error > 0 else 0.0

    @property
    def ok(self):
        return abs(self.empirical - self.exact) <= N_SE * self.std_error


@dataclass(frozen=True)
class McReport:
    n: int
    alpha: float
    r: float
    samples: int
    seed: int
    kriging: MseCheck
    cokriging: MseCheck
    mse_difference: float
    difference_std_error: float

    @property
    def ok(self):
        return self.kriging.ok and self.cokriging.ok

    def format(self):
        lines = [
            f"mc-validate n={self.n} alpha={self.alpha:g} r={self.r:g} samples={self.samples} seed={self.seed}",
        ]
        for c in (self.kriging, self.cokriging):
            lines.append(
                f"{c.label:<10} exact={c.exact:.10e} empirical={c.empirical:.10e} "
                f"se={c.std_error:.4e} z={c.z:+.3f} {'PASS' if c.ok else 'FAIL'}"
            )
        lines.append(f"mse difference (krig - cokrig)={self.mse_difference:.10e} se={self.difference_std_error:.4e}")
        lines.append("result: " + ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines) + "\n"


def _mse(err):
    sq = err * err
    return float(sq.mean()), float(sq.std(ddof=1) / math.sqrt(len(sq)))


def mc_validate(n, alpha, r, samples=100_000, seed=42, sigma11=1.0, sigma22=1.0) -> McReport:
    """Compare empirical squared prediction errors with the exact variances.

    Each mean squared error gets a standard error from the sample spread of
    the squared errors; a predictor passes when its exact variance lies
    within 3 standard errors.
    """
    if samples < MIN_SAMPLES:
        raise ValueError(f"samples must be >= {MIN_SAMPLES}, got {samples}")
    model = BivariateModel(sigma11, sigma22, r, alpha)
    design = interleaved_design(n)
    kp = krige(design, model)
    cp = cokrige(design, model)
    paths = sample_paths(design, model, seed, samples)
    err_k = paths.target - kp.predict(paths.y1)
    err_c = paths.target - cp.predict(paths.observations())
    mk, sk = _mse(err_k)
    mc, sc = _mse(err_c)
    diff = err_k * err_k - err_c * err_c
    return McReport(
        n=int(n), alpha=float(alpha), r=float(r), samples=int(samples), seed=int(seed),
        kriging=MseCheck("kriging", kp.variance, mk, sk),
        cokriging=MseCheck("cokriging", cp.variance, mc, sc),
        mse_difference=float(diff.mean()),
        difference_std_error=float(diff.std(ddof=1) / math.sqrt(samples)),
    )
