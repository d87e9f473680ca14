"""Negative-curvature detection for symmetric matrices and blackbox
Hessian approximations, via incrementally revealed principal submatrices."""

from .matrices import (
    SymMatrix,
    interlacing_check,
    min_eigenvalue,
    principal_submatrix,
    validate_index_set,
)
from .oracles import (
    BlackboxFunction,
    EvaluationError,
    ExactHessianOracle,
    FDOracle,
    HessianOracle,
    error_bound,
    fd_diagonal,
    fd_full_hessian,
    fd_offdiagonal,
)
from .ordering import (
    ALL_VARIANTS,
    BUILDS,
    HEURISTICS,
    VariantSpec,
    build1_order,
    build2_order,
    build_order,
    enumerate_orders,
    heuristic_permutation,
    selection_order,
)
from .seeker import (
    FillGraph,
    PartialHessian,
    SeekerConfig,
    SeekerResult,
    Status,
    certified_upper_bound,
    descent_direction,
    maximal_cliques_with_edge,
    seek,
)

__version__ = "0.1.0"
