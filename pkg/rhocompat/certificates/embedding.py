import numpy as np
from scipy.linalg import block_diag

from rhocompat.core import DimensionTooSmallError, validate
from .families import vectors_12, gram_matrix


def matrix_12():
    """
    The 12 x 12 Gram matrix of the twelve-vector family,
    entries in {0, +-1/2, 1}, rank 4.

    Returns
    -------
    m: numpy.ndarray
        The matrix, shape: (12, 12)

    :group: certificates

    """
    return gram_matrix(vectors_12())


def embed_high_dim(d):
    """
    The block diagonal matrix diag(M, I_{d-12}).

    Its leading 12 x 12 block is not a Spearman's rho
    matrix, hence neither is the full matrix.

    Parameters
    ----------
    d: int
        The dimension, d >= 12

    Returns
    -------
    r: rhocompat.core.CorrelationMatrix
        The validated matrix of rank d - 8

    :group: certificates

    """
    if d < 12:
        raise DimensionTooSmallError(f"embed_high_dim: Expecting d >= 12, got {d}")
    m = matrix_12()
    if d > 12:
        m = block_diag(m, np.eye(d - 12))
    return validate(m)
