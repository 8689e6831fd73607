"""Exact kriging and cokriging for bivariate Gaussian processes with
proportional exponential/Matérn covariance, and tools to study how much
cokriging gains over kriging."""

__version__ = "0.1.0"

from .closedform import (
    ClosedFormWeights,
    cokrige_variance_closed,
    cokrige_weights_closed,
    krige_variance_two_neighbor,
    verify_weights,
)
from .covariance import (
    BivariateModel,
    CovMatrix,
    MaternParams,
    build_joint_cov,
    cross_cov,
    exponential_cov,
    kronecker_joint_cov,
    matern_cov,
)
from .design import Design, collocated_design, interleaved_design, load_design, save_design
from .efficiency import EfficiencyRecord, asymptotic_efficiency, relative_efficiency, sweep
from .equivalence import BivariateMaternSpec, check_equivalence_conditions, microergodic
from .exceptions import (
    CokrigError,
    DesignError,
    ParameterError,
    PreconditionError,
    SingularModelError,
)
from .predictor import Prediction, cokrige, krige, markov_krige, sample_paths
