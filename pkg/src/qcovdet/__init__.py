"""Monotone-metric quantum covariance matrices and the determinant
uncertainty inequalities they satisfy.

The package is organized bottom-up:

    monotone      operator monotone function catalog, means, kernels
    states        density matrices, observables, seeded samplers
    covariance    spectral inner products, covariances, matrix builders
    inequalities  determinant inequality checks and reports
    sweep         batch verification over random instances
    instance_io   JSON instance files
    cli           qcovdet command line front end
"""

from .covariance import (
    CovarianceMatrix,
    asymmetric_covariance,
    commutator_bound_matrix,
    covariance,
    covariance_matrix,
    kernel_inner,
    kernel_inner_complex,
    metric_inner,
    symmetric_covariance,
)
from .errors import (
    DominanceViolationError,
    InstanceFormatError,
    InternalConsistencyError,
    ValidationError,
)
from .inequalities import (
    FAIL,
    HYPOTHESIS_NOT_MET,
    PASS,
    HypothesisReport,
    InequalityReport,
    binomial_remainder,
    check_cross,
    check_function_ordering,
    check_hierarchy,
    check_main_inequality,
    check_robertson_schrodinger,
    minkowski_check,
)
from .instance_io import (
    instance_to_json,
    load_instance,
    parse_instance,
    save_instance,
)
from .monotone import (
    KM,
    SLD,
    WY,
    Kernel,
    MonotoneFunction,
    asymmetric_kernel,
    catalog,
    classical_kernel,
    custom_kernel,
    difference_kernel,
    inverse_mean_kernel,
    parse_function,
    parse_kernel,
    symmetric_kernel,
    wyd,
)
from .states import (
    DensityMatrix,
    center,
    sample_density,
    sample_instance,
    sample_observable,
    sample_unitary,
    to_eigenbasis,
    validate_observable,
    validate_observable_tuple,
)
from .sweep import SweepConfig, SweepResult, default_kernel_pairs, run_sweep

__version__ = "0.1.0"

__all__ = [
    "CovarianceMatrix",
    "DensityMatrix",
    "DominanceViolationError",
    "FAIL",
    "HYPOTHESIS_NOT_MET",
    "HypothesisReport",
    "InequalityReport",
    "InstanceFormatError",
    "InternalConsistencyError",
    "KM",
    "Kernel",
    "MonotoneFunction",
    "PASS",
    "SLD",
    "SweepConfig",
    "SweepResult",
    "ValidationError",
    "WY",
    "asymmetric_covariance",
    "asymmetric_kernel",
    "binomial_remainder",
    "catalog",
    "center",
    "check_cross",
    "check_function_ordering",
    "check_hierarchy",
    "check_main_inequality",
    "check_robertson_schrodinger",
    "classical_kernel",
    "commutator_bound_matrix",
    "covariance",
    "covariance_matrix",
    "custom_kernel",
    "default_kernel_pairs",
    "difference_kernel",
    "instance_to_json",
    "inverse_mean_kernel",
    "kernel_inner",
    "kernel_inner_complex",
    "load_instance",
    "metric_inner",
    "minkowski_check",
    "parse_function",
    "parse_instance",
    "parse_kernel",
    "run_sweep",
    "sample_density",
    "sample_instance",
    "sample_observable",
    "sample_unitary",
    "save_instance",
    "symmetric_covariance",
    "symmetric_kernel",
    "to_eigenbasis",
    "validate_observable",
    "validate_observable_tuple",
    "wyd",
]
