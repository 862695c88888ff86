import numpy as np
from scipy.stats import norm

from rhocompat.core import (
    CorrelationMatrix,
    OutOfRangeError,
    NotPSDError,
    NoConvergenceError,
    RepairFailedError,
    validate,
    nearest_correlation,
)
from .model import CopulaModel

RANGE_TOL = 1e-12


def _check_range(x, name):
    """
    Helper function for [-1, 1] checks
    """
    x = np.asarray(x, dtype=np.float64)
    if np.any(~np.isfinite(x)) or np.any(np.abs(x) > 1.0 + RANGE_TOL):
        raise OutOfRangeError(f"{name}: Values outside [-1, 1] found")
    return np.clip(x, -1.0, 1.0)


def _out(x):
    """
    Helper function returning python floats for scalars
    """
    return float(x) if np.ndim(x) == 0 else x


def pearson_param_from_spearman(r):
    """
    The Gaussian copula parameter with Spearman's
    rho r, rho_P = 2 sin(pi r / 6).

    Parameters
    ----------
    r: float or array-like
        The Spearman's rho value(s) in [-1, 1]

    Returns
    -------
    rho: float or numpy.ndarray
        The Pearson parameter(s) in [-1, 1]

    :group: models

    """
    r = _check_range(r, "pearson_param_from_spearman")
    return _out(2.0 * np.sin(np.pi * r / 6.0))


def spearman_of_gaussian(rho):
    """
    The Spearman's rho of a bivariate Gaussian copula,
    (6 / pi) arcsin(rho / 2).

    Parameters
    ----------
    rho: float or array-like
        The Pearson parameter(s) in [-1, 1]

    Returns
    -------
    r: float or numpy.ndarray
        The Spearman's rho value(s)

    :group: models

    """
    rho = _check_range(rho, "spearman_of_gaussian")
    return _out(6.0 / np.pi * np.arcsin(0.5 * rho))


def worst_case_error():
    """
    The worst-case relative error (pi - 3) / pi of using
    a target rank correlation directly as Gaussian
    copula parameter.

    Returns
    -------
    float :
        The constant, approximately 0.045070

    :group: models

    """
    return (np.pi - 3.0) / np.pi


class GaussianModel(CopulaModel):
    """
    A Gaussian copula with uniform margins on [0, 1].

    Attributes
    ----------
    param: rhocompat.core.CorrelationMatrix
        The Pearson correlation parameter
    repaired: bool
        Flag for an applied PSD repair
    repair_distance: float
        Frobenius distance moved by the repair

    :group: models

    """

    def __init__(self, param, repaired=False, repair_distance=0.0, name=None):
        """
        Constructor

        Parameters
        ----------
        param: CorrelationMatrix or array-like
            The Pearson correlation parameter
        repaired: bool
            Flag for an applied PSD repair
        repair_distance: float
            Frobenius distance moved by the repair
        name: str, optional
            The model name

        """
        super().__init__(name)
        self.param = param if isinstance(param, CorrelationMatrix) else validate(param)
        self.repaired = bool(repaired)
        self.repair_distance = float(repair_distance) if repaired else 0.0

        w, u = np.linalg.eigh(self.param.entries)
        self._factor = u * np.sqrt(np.clip(w, 0.0, None))[None, :]

    @property
    def n_dims(self):
        return self.param.n_dims

    def margin_bounds(self):
        return 0.0, 1.0

    def spearman_law(self):
        r = 6.0 / np.pi * np.arcsin(0.5 * np.asarray(self.param.entries))
        np.fill_diagonal(r, 1.0)
        return r

    def relative_error(self, target):
        """
        Maximal entrywise relative error of the model's
        Spearman's rho matrix against a target.

        Entries with zero target are skipped.

        Parameters
        ----------
        target: array-like
            The target matrix, shape: (n_dims, n_dims)

        Returns
        -------
        float :
            The maximal relative error

        """
        t = np.asarray(target, dtype=np.float64)
        law = self.spearman_law()
        sel = np.abs(t) > 0
        np.fill_diagonal(sel, False)
        if not np.any(sel):
            return 0.0
        return float(np.max(np.abs(law[sel] - t[sel]) / np.abs(t[sel])))

    def sample_block(self, n, rng):
        z = rng.standard_normal((n, self.n_dims)) @ self._factor.T
        return norm.cdf(z)

    def to_dict(self):
        return dict(
            type="gaussian",
            param=np.asarray(self.param.entries).tolist(),
            repaired=self.repaired,
            repair_distance=self.repair_distance,
        )


def build_gaussian_model(target, calibrate=True, tol=1e-10, max_iter=10000, verbosity=0):
    """
    Builds a Gaussian copula approximating a target
    Spearman's rho matrix.

    The calibrated variant converts every entry by
    `pearson_param_from_spearman`, the naive variant uses
    the target itself. A converted matrix that is not
    positive semi-definite is replaced by its nearest
    correlation matrix and flagged as repaired.

    Parameters
    ----------
    target: CorrelationMatrix or array-like
        The target matrix, validated if not yet
    calibrate: bool
        Apply the entrywise conversion
    tol: float
        The nearest correlation tolerance
    max_iter: int
        The nearest correlation iteration limit
    verbosity: int
        The verbosity level, 0 = silent

    Returns
    -------
    model: GaussianModel
        The Gaussian model

    :group: models

    """
    if not isinstance(target, CorrelationMatrix):
        target = validate(target)

    p = np.array(target.entries, dtype=np.float64)
    if calibrate:
        p = pearson_param_from_spearman(p)
    np.fill_diagonal(p, 1.0)

    try:
        param = validate(p)
        return GaussianModel(param)
    except NotPSDError:
        if verbosity > 0:
            print("build_gaussian_model: converted parameter not PSD, repairing")

    try:
        param = nearest_correlation(p, tol=tol, max_iter=max_iter, verbosity=verbosity)
    except NoConvergenceError as e:
        raise RepairFailedError(f"build_gaussian_model: Repair failed: {e}")

    dist = float(np.linalg.norm(np.asarray(param.entries) - p))
    if verbosity > 0:
        print(f"build_gaussian_model: repair distance {dist:.6e}")

    return GaussianModel(param, repaired=True, repair_distance=dist)


def sample_gaussian(model, n, rng=None, workers=1):
    """
    Draws observations from a Gaussian copula model.

    Parameters
    ----------
    model: GaussianModel
        The model
    n: int
        The number of observations
    rng: int or numpy.random.Generator, optional
        The seed or master generator
    workers: int
        The number of parallel workers

    Returns
    -------
    sample: rhocompat.stats.Sample
        The observations with U[0, 1] margins

    :group: models

    """
    return model.sample(n, rng, workers)
