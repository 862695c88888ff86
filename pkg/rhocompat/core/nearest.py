import numpy as np

from .errors import NotSymmetricError, NoConvergenceError
from .matrices import as_candidate, validate, SYMMETRY_TOL, RANK_TOL


def project_psd(a):
    """
    Projects a symmetric matrix onto the cone of positive
    semi-definite matrices by eigenvalue clipping.

    Parameters
    ----------
    a: numpy.ndarray
        The symmetric matrix, shape: (d, d)

    Returns
    -------
    p: numpy.ndarray
        The projection, shape: (d, d)

    :group: core

    """
    w, u = np.linalg.eigh(a)
    p = (u * np.clip(w, 0.0, None)[None, :]) @ u.T
    return 0.5 * (p + p.T)


def nearest_correlation(m, tol=1e-10, max_iter=10000, psd_tol=None, verbosity=0):
    """
    Finds the nearest correlation matrix in Frobenius norm
    by alternating projections with Dykstra's correction.

    Iterates between the PSD cone and the affine set of
    unit-diagonal matrices until successive iterates differ
    by less than tol. The final iterate is projected on the
    PSD cone and rescaled to unit diagonal, which keeps it
    positive semi-definite.

    Parameters
    ----------
    m: array-like
        The symmetric input matrix, shape: (d, d)
    tol: float
        The Frobenius tolerance between successive iterates
    max_iter: int
        The maximal number of iterations
    psd_tol: float, optional
        The PSD tolerance for validating the result
    verbosity: int
        The verbosity level, 0 = silent

    Returns
    -------
    r: CorrelationMatrix
        The validated nearest correlation matrix

    :group: core

    """
    a = as_candidate(m)
    asym = np.max(np.abs(a - a.T))
    if asym > SYMMETRY_TOL:
        raise NotSymmetricError(
            f"nearest_correlation: Maximal asymmetry {asym:.3e} exceeds {SYMMETRY_TOL:.0e}"
        )
    a = 0.5 * (a + a.T)

    y = a.copy()
    ds = np.zeros_like(a)
    converged = False
    delta = np.inf
    for it in range(max_iter):
        r = y - ds
        x = project_psd(r)
        ds = x - r
        ynew = x.copy()
        np.fill_diagonal(ynew, 1.0)
        delta = np.linalg.norm(ynew - y)
        y = ynew
        if verbosity > 1:
            print(f"  nearest_correlation: it {it:>5}, delta = {delta:.3e}")
        if delta < tol:
            converged = True
            break

    if not converged:
        raise NoConvergenceError(
            f"nearest_correlation: No convergence after {max_iter} iterations, last delta = {delta:.3e}"
        )

    x = project_psd(y)
    dg = np.diag(x)
    if np.any(dg <= 0):
        raise NoConvergenceError(
            "nearest_correlation: Degenerate diagonal in final projection"
        )
    s = 1.0 / np.sqrt(dg)
    x = x * s[:, None] * s[None, :]
    np.fill_diagonal(x, 1.0)

    if verbosity > 0:
        print(
            f"nearest_correlation: converged after {it + 1} iterations, distance {np.linalg.norm(x - a):.6e}"
        )

    return validate(x, psd_tol=psd_tol, rank_tol=RANK_TOL)
