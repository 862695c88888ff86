from .results import DecompositionResult, mixture_matrix
from .cg_decomposer import (
    CGDecomposer,
    decompose,
    copula_from_decomposition,
    ascend_atom,
    optimize_weights,
    polish_mixture,
    project_simplex,
    normalize_rows,
)
