import numpy as np
from scipy.stats import rankdata

from rhocompat.core import (
    TooFewObservationsError,
    ConstantColumnError,
    LengthMismatchError,
)
from .sample import Sample


def ranks(column):
    """
    Average ranks of a column, starting at 1.

    Tied values receive the mean of the ranks
    they span.

    Parameters
    ----------
    column: array-like
        The values, shape: (n,)

    Returns
    -------
    r: numpy.ndarray
        The ranks, shape: (n,)

    :group: stats

    """
    x = np.asarray(column, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"ranks: Expecting 1D column, got shape {x.shape}")
    if len(x) < 2:
        raise TooFewObservationsError(
            f"ranks: Need at least 2 observations, got {len(x)}"
        )
    return rankdata(x, method="average").astype(np.float64)


def _standardized_ranks(values):
    """
    Helper function: centred ranks of each column,
    scaled to unit Euclidean norm
    """
    n, d = values.shape
    if n < 2:
        raise TooFewObservationsError(
            f"Spearman: Need at least 2 observations, got {n}"
        )
    r = rankdata(values, method="average", axis=0).astype(np.float64)
    r -= 0.5 * (n + 1)
    nrm = np.linalg.norm(r, axis=0)
    bad = np.where(nrm == 0)[0]
    if len(bad):
        raise ConstantColumnError(
            f"Spearman: Constant column(s) {bad.tolist()}, correlation undefined"
        )
    return r / nrm[None, :]


def spearman_pair(x, y):
    """
    Sample Spearman's rho of two columns, computed as
    the Pearson correlation of their average ranks.

    Parameters
    ----------
    x: array-like
        The first column, shape: (n,)
    y: array-like
        The second column, shape: (n,)

    Returns
    -------
    rho: float
        The rank correlation in [-1, 1]

    :group: stats

    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise LengthMismatchError(
            f"spearman_pair: Columns of shapes {x.shape} and {y.shape}"
        )
    z = _standardized_ranks(np.column_stack([x, y]))
    return float(np.clip(np.dot(z[:, 0], z[:, 1]), -1.0, 1.0))


def spearman_formula(x, y):
    """
    The tie-free closed form 1 - 6 sum(d^2) / (n (n^2 - 1)).

    Only exact for data without ties.

    Parameters
    ----------
    x: array-like
        The first column, shape: (n,)
    y: array-like
        The second column, shape: (n,)

    Returns
    -------
    rho: float
        The rank correlation

    :group: stats

    """
    rx = ranks(x)
    ry = ranks(y)
    if rx.shape != ry.shape:
        raise LengthMismatchError(
            f"spearman_formula: Columns of shapes {rx.shape} and {ry.shape}"
        )
    n = len(rx)
    return float(1.0 - 6.0 * np.sum((rx - ry) ** 2) / (n * (n**2 - 1)))


def spearman_matrix(sample):
    """
    The sample Spearman's rho matrix.

    Parameters
    ----------
    sample: rhocompat.stats.Sample or array-like
        The observations, shape: (n, n_dims)

    Returns
    -------
    r: numpy.ndarray
        The symmetric matrix with unit diagonal,
        shape: (n_dims, n_dims)

    :group: stats

    """
    values = sample.values if isinstance(sample, Sample) else np.asarray(sample)
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2:
        raise ValueError(f"spearman_matrix: Expecting 2D sample, got shape {values.shape}")
    z = _standardized_ranks(values)
    r = z.T @ z
    r = np.clip(0.5 * (r + r.T), -1.0, 1.0)
    np.fill_diagonal(r, 1.0)
    return r


def max_entry_error(estimate, target):
    """
    The maximal absolute entrywise difference.

    Parameters
    ----------
    estimate: array-like
        The estimated matrix
    target: array-like
        The target matrix

    Returns
    -------
    float :
        The maximal deviation

    :group: stats

    """
    return float(np.max(np.abs(np.asarray(estimate) - np.asarray(target))))
