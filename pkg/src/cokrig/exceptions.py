"""Exception types raised by :mod:`cokrig`."""

import numpy as np


class CokrigError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(CokrigError, ValueError):
    """A covariance or study parameter lies outside its domain."""


class DesignError(CokrigError, ValueError):
    """A sampling design is malformed (duplicate sites, non-finite coordinates...)."""


class PreconditionError(CokrigError, ValueError):
    """An operation was called outside the hypotheses it relies on."""


class SingularModelError(CokrigError, np.linalg.LinAlgError):
    """Cholesky factorization of a covariance matrix failed.

    ``minor`` is the 1-based order of the first leading minor that is not
    positive definite, as reported by LAPACK ``potrf``.
    """

    def __init__(self, message, minor=None):
        super().__init__(message)
        self.minor = minor


class SweepError(CokrigError, RuntimeError):
    """A grid point of an efficiency sweep failed; the message names it."""


class CsvFormatError(CokrigError, ValueError):
    """An efficiency CSV does not follow the expected schema."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line
