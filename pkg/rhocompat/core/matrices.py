import math
import numpy as np

from .errors import (
    NotSquareError,
    NotSymmetricError,
    NotStandardizedError,
    NotPSDError,
    EntryOutOfRangeError,
    ReconstructionError,
    DimensionTooSmallError,
    RhoCompatError,
)

PSD_TOL_FACTOR = 1e-8
RANK_TOL = 1e-8
SYMMETRY_TOL = 1e-9
DIAGONAL_TOL = 1e-9
ENTRY_TOL = 1e-12
ROW_NORM_TOL = 1e-10
RENORM_TOL = 1e-8
RECONSTRUCTION_FACTOR = 1e-8


def default_psd_tol(n_dims):
    """
    The default PSD tolerance for a dimension.

    Parameters
    ----------
    n_dims: int
        The matrix dimension d

    Returns
    -------
    psd_tol: float
        The tolerance 1e-8 * d

    :group: core

    """
    return PSD_TOL_FACTOR * n_dims


class CorrelationMatrix:
    """
    A validated linear correlation matrix, i.e. a
    standardized symmetric positive semi-definite matrix.

    Instances are created by `validate` and are
    read-only after construction.

    Attributes
    ----------
    entries: numpy.ndarray
        The symmetrized matrix with unit diagonal,
        shape: (n_dims, n_dims)
    eigenvalues: numpy.ndarray
        The eigenvalues in descending order, shape: (n_dims,)
    psd_tol: float
        The PSD tolerance used for validation
    rank_tol: float
        The relative tolerance used for the rank

    :group: core

    """

    def __init__(self, entries, eigenvalues, psd_tol, rank_tol):
        """
        Constructor

        Parameters
        ----------
        entries: numpy.ndarray
            The checked matrix, shape: (n_dims, n_dims)
        eigenvalues: numpy.ndarray
            The eigenvalues in descending order, shape: (n_dims,)
        psd_tol: float
            The PSD tolerance used for validation
        rank_tol: float
            The relative tolerance used for the rank

        """
        self.entries = np.array(entries, dtype=np.float64)
        self.eigenvalues = np.array(eigenvalues, dtype=np.float64)
        self.entries.setflags(write=False)
        self.eigenvalues.setflags(write=False)
        self.psd_tol = psd_tol
        self.rank_tol = rank_tol
        self._rank = _count_rank(self.eigenvalues, rank_tol)

    def __array__(self, dtype=None, copy=None):
        out = np.array(self.entries, dtype=dtype)
        return out

    def __repr__(self):
        return f"CorrelationMatrix(n_dims={self.n_dims}, rank={self.rank}, min_eigenvalue={self.min_eigenvalue:.3e})"

    @property
    def n_dims(self):
        """
        The dimension d

        Returns
        -------
        int :
            The dimension

        """
        return self.entries.shape[0]

    @property
    def rank(self):
        """
        The numerical rank at the stored rank_tol

        Returns
        -------
        int :
            The rank

        """
        return self._rank

    @property
    def min_eigenvalue(self):
        """
        The smallest eigenvalue

        Returns
        -------
        float :
            The smallest eigenvalue

        """
        return float(self.eigenvalues[-1])


class RankDecomposition:
    """
    A d x k matrix A with unit rows, such that A A^T
    reproduces a correlation matrix.

    Attributes
    ----------
    a: numpy.ndarray
        The factor, shape: (n_dims, k)
    residual: float
        The Frobenius norm of A A^T - R for the source R,
        or None if not known

    :group: core

    """

    def __init__(self, a, residual=None):
        """
        Constructor

        Parameters
        ----------
        a: array-like
            The factor with unit rows, shape: (n_dims, k)
        residual: float, optional
            The reconstruction residual

        """
        self.a = np.array(a, dtype=np.float64)
        if self.a.ndim != 2:
            raise ValueError(
                f"RankDecomposition: Expecting 2D factor, got shape {self.a.shape}"
            )
        norms = np.linalg.norm(self.a, axis=1)
        dev = np.max(np.abs(norms - 1.0)) if len(norms) else 0.0
        if dev > ROW_NORM_TOL:
            raise ValueError(
                f"RankDecomposition: Rows are not unit vectors, maximal norm deviation {dev:.3e}"
            )
        self.a.setflags(write=False)
        self.residual = residual

    @property
    def n_dims(self):
        """
        The number of rows d

        Returns
        -------
        int :
            The number of rows

        """
        return self.a.shape[0]

    @property
    def k(self):
        """
        The number of columns

        Returns
        -------
        int :
            The number of columns

        """
        return self.a.shape[1]

    def gram(self):
        """
        The matrix A A^T

        Returns
        -------
        numpy.ndarray :
            The Gram matrix, shape: (n_dims, n_dims)

        """
        return self.a @ self.a.T


def _count_rank(eigenvalues, rank_tol):
    """
    Helper function counting eigenvalues above the
    relative threshold
    """
    lmax = np.max(eigenvalues)
    if lmax <= 0:
        return 0
    return int(np.sum(eigenvalues > rank_tol * lmax))


def as_candidate(m):
    """
    Converts input into a square float matrix.

    Parameters
    ----------
    m: array-like or CorrelationMatrix
        The candidate matrix

    Returns
    -------
    entries: numpy.ndarray
        A float copy, shape: (d, d)

    :group: core

    """
    if isinstance(m, CorrelationMatrix):
        return np.array(m.entries, dtype=np.float64)
    a = np.array(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise NotSquareError(f"Matrix: Expecting square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise EntryOutOfRangeError("Matrix: Found non-finite entries")
    return a


def validate(m, psd_tol=None, rank_tol=RANK_TOL):
    """
    Validates a candidate matrix as element of the set
    of linear correlation matrices.

    Asymmetries up to 1e-9 are symmetrized, diagonal
    entries within 1e-9 of one are set to exactly one.

    Parameters
    ----------
    m: array-like or CorrelationMatrix
        The candidate matrix, shape: (d, d)
    psd_tol: float, optional
        Tolerance for negative eigenvalues,
        default 1e-8 * d
    rank_tol: float
        Relative eigenvalue threshold for the rank

    Returns
    -------
    r: CorrelationMatrix
        The validated matrix

    :group: core

    """
    a = as_candidate(m)
    d = a.shape[0]
    if psd_tol is None:
        psd_tol = default_psd_tol(d)

    asym = np.max(np.abs(a - a.T))
    if asym > SYMMETRY_TOL:
        raise NotSymmetricError(
            f"Matrix: Maximal asymmetry {asym:.3e} exceeds {SYMMETRY_TOL:.0e}"
        )
    a = 0.5 * (a + a.T)

    dev = np.max(np.abs(np.diag(a) - 1.0))
    if dev > DIAGONAL_TOL:
        raise NotStandardizedError(
            f"Matrix: Diagonal deviates from one by {dev:.3e}, exceeding {DIAGONAL_TOL:.0e}"
        )
    np.fill_diagonal(a, 1.0)

    eigvals = np.linalg.eigvalsh(a)[::-1]
    if eigvals[-1] < -psd_tol:
        raise NotPSDError(
            f"Matrix: Minimal eigenvalue {eigvals[-1]:.6e} below -psd_tol = {-psd_tol:.3e}"
        )

    emax = np.max(np.abs(a))
    if emax > 1.0 + ENTRY_TOL:
        raise EntryOutOfRangeError(f"Matrix: Entry of modulus {emax} exceeds 1")

    return CorrelationMatrix(a, eigvals, psd_tol, rank_tol)


def validation_report(m, psd_tol=None, rank_tol=RANK_TOL):
    """
    Runs `validate` and collects the outcome in a dict.

    Parameters
    ----------
    m: array-like
        The candidate matrix, shape: (d, d)
    psd_tol: float, optional
        Tolerance for negative eigenvalues,
        default 1e-8 * d
    rank_tol: float
        Relative eigenvalue threshold for the rank

    Returns
    -------
    report: dict
        Keys: dimension, rank, min_eigenvalue, valid,
        errors, psd_tol, rank_tol

    :group: core

    """
    a = np.array(m, dtype=np.float64)
    d = a.shape[0] if a.ndim == 2 else None
    if psd_tol is None and d is not None:
        psd_tol = default_psd_tol(d)
    report = dict(
        dimension=d,
        rank=None,
        min_eigenvalue=None,
        valid=False,
        errors=[],
        psd_tol=psd_tol,
        rank_tol=rank_tol,
    )
    try:
        r = validate(a, psd_tol, rank_tol)
    except RhoCompatError as e:
        report["errors"].append({"type": type(e).__name__, "message": str(e)})
        if a.ndim == 2 and a.shape[0] == a.shape[1] and np.all(np.isfinite(a)):
            eigvals = np.linalg.eigvalsh(0.5 * (a + a.T))
            report["min_eigenvalue"] = float(eigvals[0])
            report["rank"] = _count_rank(eigvals, rank_tol)
        return report

    report["rank"] = r.rank
    report["min_eigenvalue"] = r.min_eigenvalue
    report["valid"] = True
    return report


def rank_of(r, rank_tol=RANK_TOL):
    """
    The numerical rank of a correlation matrix.

    Parameters
    ----------
    r: CorrelationMatrix or array-like
        The matrix, validated if not yet
    rank_tol: float
        Count eigenvalues above rank_tol times the
        largest eigenvalue

    Returns
    -------
    rank: int
        The numerical rank

    :group: core

    """
    if not isinstance(r, CorrelationMatrix):
        r = validate(r, rank_tol=rank_tol)
    return _count_rank(r.eigenvalues, rank_tol)


def rank_decompose(r, rank_tol=None):
    """
    Computes a rank decomposition R = A A^T with
    unit rows from the eigendecomposition.

    Columns are ordered by descending eigenvalue, ties
    keep the eigensolver order, and each column's
    largest-modulus entry is made positive.

    Parameters
    ----------
    r: CorrelationMatrix or array-like
        The matrix, validated if not yet
    rank_tol: float, optional
        The rank tolerance, default is the one
        stored in r

    Returns
    -------
    dec: RankDecomposition
        The decomposition, shape of a: (d, rank)

    :group: core

    """
    if not isinstance(r, CorrelationMatrix):
        r = validate(r)
    rank_tol = r.rank_tol if rank_tol is None else rank_tol
    k = rank_of(r, rank_tol)
    d = r.n_dims

    w, u = np.linalg.eigh(r.entries)
    order = np.argsort(-w, kind="stable")[:k]
    w = w[order]
    u = u[:, order]

    imax = np.argmax(np.abs(u), axis=0)
    signs = np.sign(u[imax, np.arange(k)])
    signs[signs == 0] = 1.0
    u = u * signs[None, :]

    a = u * np.sqrt(np.clip(w, 0.0, None))[None, :]
    norms = np.linalg.norm(a, axis=1)
    dev = np.max(np.abs(norms - 1.0))
    if dev > RENORM_TOL:
        raise ReconstructionError(
            f"Matrix: Row norms of the rank {k} factor deviate from one by {dev:.3e}, check rank_tol = {rank_tol:.1e} against psd_tol = {r.psd_tol:.1e}"
        )
    a = a / norms[:, None]

    res = float(np.linalg.norm(a @ a.T - r.entries))
    if res > RECONSTRUCTION_FACTOR * d:
        raise ReconstructionError(
            f"Matrix: Reconstruction residual {res:.3e} of rank {k} factor exceeds {RECONSTRUCTION_FACTOR * d:.3e}"
        )

    return RankDecomposition(a, residual=res)


def pad_columns(a, k):
    """
    Zero-pads a factor to k columns.

    Parameters
    ----------
    a: array-like
        The factor, shape: (d, k0)
    k: int
        The target number of columns, k >= k0

    Returns
    -------
    b: numpy.ndarray
        The padded factor, shape: (d, k)

    :group: core

    """
    a = np.asarray(a, dtype=np.float64)
    if a.shape[1] > k:
        raise ValueError(f"Cannot pad factor with {a.shape[1]} columns to {k} columns")
    b = np.zeros((a.shape[0], k), dtype=np.float64)
    b[:, : a.shape[1]] = a
    return b


def k_max(d):
    """
    The largest k with k(k+1)/2 <= d.

    This bounds the rank of extreme points of the
    set of d x d correlation matrices.

    Parameters
    ----------
    d: int
        The dimension, d >= 1

    Returns
    -------
    k: int
        The maximal rank of extreme points

    :group: core

    """
    if d < 1:
        raise DimensionTooSmallError(f"k_max: Expecting d >= 1, got {d}")
    return (math.isqrt(8 * d + 1) - 1) // 2
