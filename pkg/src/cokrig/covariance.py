"""Matérn / exponential covariance functions and joint covariance assembly.

Sites are scalar coordinates on a line, distances are absolute
differences. The bivariate model is *proportional*: both components share
one correlation function ``rho(h)`` and

    Cov(Y_i(s), Y_j(s + h)) = sigma_ij * rho(h),   sigma_12 = r * sqrt(sigma_11 * sigma_22).

Observations are addressed by ``(variable, site)`` keys with ``variable`` in
``{1, 2}``. Joint matrices list the variable-1 observations first, then the
variable-2 observations, each block in design order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .exceptions import DesignError, ParameterError

EXPONENTIAL_NU = 0.5


def _check_positive(name, value):
    if not (np.isfinite(value) and value > 0):
        raise ParameterError(f"{name} must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class MaternParams:
    """Variance ``sigma2``, inverse-distance scale ``alpha`` and smoothness ``nu``."""

    sigma2: float
    alpha: float
    nu: float = EXPONENTIAL_NU

    def __post_init__(self):
        _check_positive("sigma2", self.sigma2)
        _check_positive("alpha", self.alpha)
        _check_positive("nu", self.nu)


@dataclass(frozen=True)
class BivariateModel:
    """Zero-mean bivariate Matérn model with proportional cross-covariance.

    Parameters
    ----------
    sigma11, sigma22 : float
        Marginal variances of ``Y1`` and ``Y2``.
    r : float
        Correlation between ``Y1(s)`` and ``Y2(s)``. Must satisfy ``|r| < 1``;
        at ``|r| = 1`` every design sharing a site gives a singular joint
        covariance.
    alpha : float
        Shared scale parameter.
    nu : float
        Shared smoothness; the default 0.5 is the exponential model.
    """

    sigma11: float
    sigma22: float
    r: float
    alpha: float
    nu: float = EXPONENTIAL_NU

    def __post_init__(self):
        _check_positive("sigma11", self.sigma11)
        _check_positive("sigma22", self.sigma22)
        _check_positive("alpha", self.alpha)
        _check_positive("nu", self.nu)
        if not (np.isfinite(self.r) and abs(self.r) < 1):
            raise ParameterError(f"correlation r must satisfy |r| < 1, got {self.r!r}")

    @property
    def sigma12(self) -> float:
        return self.r * math.sqrt(self.sigma11 * self.sigma22)

    @property
    def is_exponential(self) -> bool:
        return self.nu == EXPONENTIAL_NU

    def variance_matrix(self) -> np.ndarray:
        """The 2x2 lag-zero covariance ``V = [[s11, s12], [s12, s22]]``."""
        s12 = self.sigma12
        return np.array([[self.sigma11, s12], [s12, self.sigma22]])

    def sigma(self, i, j) -> float:
        _check_index(i)
        _check_index(j)
        if i != j:
            return self.sigma12
        return self.sigma11 if i == 1 else self.sigma22


def _check_index(i):
    if i not in (1, 2):
        raise ParameterError(f"variable index must be 1 or 2, got {i!r}")


def _check_distance(h):
    h = np.asarray(h, dtype=float)
    if np.any(~np.isfinite(h)) or np.any(h < 0):
        raise ParameterError("distances must be finite and >= 0")
    return h


def exponential_cov(h, sigma, alpha):
    """``sigma * exp(-alpha * h)``; ``h`` may be a scalar or an array."""
    _check_positive("alpha", alpha)
    h = _check_distance(h)
    out = sigma * np.exp(-alpha * h)
    return float(out) if out.ndim == 0 else out


def matern_correlation(h, alpha, nu):
    """Unit-variance Matérn correlation ``2^(1-nu)/Gamma(nu) (alpha h)^nu K_nu(alpha h)``.

    ``nu = 0.5`` is evaluated as ``exp(-alpha h)`` directly.
    """
    _check_positive("alpha", alpha)
    _check_positive("nu", nu)
    h = _check_distance(h)
    if nu == EXPONENTIAL_NU:
        out = np.exp(-alpha * h)
    else:
        x = alpha * h
        out = np.ones_like(x)
        pos = x > 0
        xp = x[pos]
        # log-space prefactor keeps large-nu cases finite
        logc = (1.0 - nu) * math.log(2.0) - special.gammaln(nu)
        with np.errstate(under="ignore"):
            out[pos] = np.exp(logc + nu * np.log(xp)) * special.kv(nu, xp)
    return float(out) if out.ndim == 0 else out


def matern_cov(h, p: MaternParams):
    """Matérn covariance with parameters ``p`` at distance(s) ``h``; ``sigma2`` at 0."""
    out = p.sigma2 * np.asarray(matern_correlation(h, p.alpha, p.nu))
    return float(out) if out.ndim == 0 else out


def cross_cov(i, j, h, m: BivariateModel):
    """``Cov(Y_i(s), Y_j(s + h))`` under the proportional model ``m``."""
    s = m.sigma(i, j)
    out = s * np.asarray(matern_correlation(h, m.alpha, m.nu))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True, eq=False)
class CovMatrix:
    """Dense covariance matrix whose rows/columns are ``(variable, site)`` keys."""

    matrix: np.ndarray
    variables: np.ndarray
    sites: np.ndarray

    @property
    def keys(self):
        return list(zip(self.variables.tolist(), self.sites.tolist()))

    @property
    def size(self):
        return self.matrix.shape[0]


def _as_keys(variables, sites):
    variables = np.asarray(variables, dtype=int).ravel()
    sites = np.asarray(sites, dtype=float).ravel()
    if variables.shape != sites.shape:
        raise DesignError("variables and sites must have the same length")
    if not np.all(np.isfinite(sites)):
        raise DesignError("sites must be finite")
    if np.any((variables != 1) & (variables != 2)):
        raise DesignError("variable indices must be 1 or 2")
    return variables, sites


def joint_cov(variables, sites, m: BivariateModel, jitter=0.0) -> CovMatrix:
    """Assemble the covariance of the observations ``(variables[k], sites[k])``.

    Raises :class:`DesignError` when a ``(variable, site)`` pair repeats.
    ``jitter`` is added to the diagonal; it is 0 unless asked for.
    """
    variables, sites = _as_keys(variables, sites)
    if len(set(zip(variables.tolist(), sites.tolist()))) != len(sites):
        raise DesignError("duplicated (variable, site) observation")
    v = m.variance_matrix()
    mat = np.subtract.outer(sites, sites)
    np.abs(mat, out=mat)
    if m.nu == EXPONENTIAL_NU:
        mat *= -m.alpha
        np.exp(mat, out=mat)
    else:
        mat = np.asarray(matern_correlation(mat, m.alpha, m.nu))
    n1 = int(np.sum(variables == 1))
    if np.all(variables[:n1] == 1):
        # block layout: scale the four blocks in place
        mat[:n1, :n1] *= v[0, 0]
        mat[:n1, n1:] *= v[0, 1]
        mat[n1:, :n1] *= v[1, 0]
        mat[n1:, n1:] *= v[1, 1]
    else:
        mat *= v[variables[:, None] - 1, variables[None, :] - 1]
    if jitter:
        mat[np.diag_indices_from(mat)] += jitter
    return CovMatrix(mat, variables, sites)


def cov_vector(variable, site, variables, sites, m: BivariateModel) -> np.ndarray:
    """Covariances between ``Y_variable(site)`` and each keyed observation."""
    _check_index(variable)
    variables, sites = _as_keys(variables, sites)
    v = m.variance_matrix()
    corr = np.asarray(matern_correlation(np.abs(sites - site), m.alpha, m.nu))
    return v[variable - 1, variables - 1] * corr


def build_joint_cov(design, m: BivariateModel, jitter=0.0) -> CovMatrix:
    """Joint covariance of all observations of ``design`` (``sites1`` then ``sites2``)."""
    s1 = np.asarray(design.sites1, dtype=float)
    s2 = np.asarray(design.sites2, dtype=float)
    variables = np.concatenate([np.ones(len(s1), dtype=int), np.full(len(s2), 2)])
    return joint_cov(variables, np.concatenate([s1, s2]), m, jitter=jitter)


def correlation_matrix(sites, alpha, nu=EXPONENTIAL_NU) -> np.ndarray:
    sites = np.asarray(sites, dtype=float)
    return np.asarray(matern_correlation(np.abs(sites[:, None] - sites[None, :]), alpha, nu))


def kronecker_joint_cov(sites, m: BivariateModel) -> CovMatrix:
    """Collocated joint covariance built as ``V kron R``.

    Independent of :func:`joint_cov`; the two must agree entrywise for any
    collocated design.
    """
    sites = np.asarray(sites, dtype=float)
    if len(np.unique(sites)) != len(sites):
        raise DesignError("duplicated site in collocated design")
    r = correlation_matrix(sites, m.alpha, m.nu)
    mat = np.kron(m.variance_matrix(), r)
    variables = np.repeat([1, 2], len(sites))
    return CovMatrix(mat, variables, np.tile(sites, 2))
