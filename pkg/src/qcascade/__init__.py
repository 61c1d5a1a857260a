"""Sequential-measurement cascades on tensor-product quantum states."""

from .correlations import (
    CascadeState,
    MeasurementBasis,
    OutcomeDistribution,
    ProperState,
    cascade_distribution,
    conditional_remainder,
    hidden_correlation_map,
    initial_cascade,
    measure_step,
    outcome_probability,
    proper_state,
)
from .hidden import (
    HiddenMeasurementRep,
    LambdaVector,
    classical_observable,
    combined_hidden_measurement,
    lambda_intervals,
    monte_carlo_distribution,
)
from .hilbert import (
    BiorthogonalDecomposition,
    DensityMatrix,
    Factorization,
    StateVector,
    biorthogonal_decompose,
    bipartition_matrix,
    partial_trace,
    rotate_degenerate_subspaces,
    tensor_product,
)
from .io import parse_state_file, write_state_file
from .oracle import (
    ComparisonReport,
    born_joint_probability,
    compare_distributions,
    oracle_distribution,
)

__all__ = [
    "BiorthogonalDecomposition",
    "CascadeState",
    "ComparisonReport",
    "DensityMatrix",
    "Factorization",
    "HiddenMeasurementRep",
    "LambdaVector",
    "MeasurementBasis",
    "OutcomeDistribution",
    "ProperState",
    "StateVector",
    "biorthogonal_decompose",
    "bipartition_matrix",
    "born_joint_probability",
    "cascade_distribution",
    "classical_observable",
    "combined_hidden_measurement",
    "compare_distributions",
    "conditional_remainder",
    "hidden_correlation_map",
    "initial_cascade",
    "lambda_intervals",
    "measure_step",
    "monte_carlo_distribution",
    "oracle_distribution",
    "outcome_probability",
    "parse_state_file",
    "partial_trace",
    "proper_state",
    "rotate_degenerate_subspaces",
    "tensor_product",
    "write_state_file",
]
