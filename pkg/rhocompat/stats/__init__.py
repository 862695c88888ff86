from .sample import Sample
from .spearman import (
    ranks,
    spearman_pair,
    spearman_formula,
    spearman_matrix,
    max_entry_error,
)
from .ks import ks_uniform, ks_critical_value
