import numpy as np

from rhocompat.core import (
    CorrelationMatrix,
    RankTooHighError,
    validate,
    rank_of,
    rank_decompose,
    pad_columns,
)
from rhocompat.core.matrices import ROW_NORM_TOL
from .model import CopulaModel, validate_weights

SQRT3 = np.sqrt(3.0)


def sample_sphere_points(n, rng):
    """
    Draws uniform points on the unit sphere in R^3
    by normalizing standard normal triples.

    The measure-zero event of a zero triple is
    handled by re-drawing.

    Parameters
    ----------
    n: int
        The number of points
    rng: numpy.random.Generator
        The random stream

    Returns
    -------
    v: numpy.ndarray
        The points, shape: (n, 3)

    :group: models

    """
    v = rng.standard_normal((n, 3))
    nrm = np.linalg.norm(v, axis=1)
    bad = np.where(nrm == 0)[0]
    while len(bad):
        v[bad] = rng.standard_normal((len(bad), 3))
        nrm[bad] = np.linalg.norm(v[bad], axis=1)
        bad = bad[nrm[bad] == 0]
    return v / nrm[:, None]


def sample_sphere_point(rng):
    """
    Draws a single uniform point on the unit
    sphere in R^3.

    Parameters
    ----------
    rng: numpy.random.Generator
        The random stream

    Returns
    -------
    v: numpy.ndarray
        The unit vector, shape: (3,)

    :group: models

    """
    return sample_sphere_points(1, rng)[0]


def _check_sphere_factor(a, name):
    """
    Helper function checking a d x 3 factor with unit rows
    """
    a = np.array(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[1] != 3 or a.shape[0] < 1:
        raise ValueError(
            f"Model '{name}': Expecting factor of shape (d, 3), got {a.shape}"
        )
    dev = np.max(np.abs(np.linalg.norm(a, axis=1) - 1.0))
    if dev > ROW_NORM_TOL:
        raise ValueError(
            f"Model '{name}': Factor rows are not unit vectors, maximal norm deviation {dev:.3e}"
        )
    a.setflags(write=False)
    return a


class SphereModel(CopulaModel):
    """
    The random vector A V with V uniform on the unit
    sphere in R^3 and A a d x 3 matrix with unit rows.

    Every margin is uniform on [-1, 1], and the
    Spearman's rho matrix is A A^T.

    Attributes
    ----------
    a: numpy.ndarray
        The factor, shape: (n_dims, 3)
    unit_variance: bool
        Rescale margins to [-sqrt(3), sqrt(3)]

    :group: models

    """

    def __init__(self, a, unit_variance=False, name=None):
        """
        Constructor

        Parameters
        ----------
        a: array-like
            The factor with unit rows, shape: (n_dims, 3)
        unit_variance: bool
            Rescale margins to [-sqrt(3), sqrt(3)]
        name: str, optional
            The model name

        """
        super().__init__(name)
        self.a = _check_sphere_factor(a, self.name)
        self.unit_variance = unit_variance

    @property
    def n_dims(self):
        return self.a.shape[0]

    @property
    def scale(self):
        """
        The margin half width

        Returns
        -------
        float :
            1 or sqrt(3)

        """
        return SQRT3 if self.unit_variance else 1.0

    def margin_bounds(self):
        return -self.scale, self.scale

    def spearman_law(self):
        return self.a @ self.a.T

    def sample_block(self, n, rng):
        v = sample_sphere_points(n, rng)
        x = v @ self.a.T
        if self.unit_variance:
            x *= SQRT3
        return x

    def to_dict(self):
        return dict(type="sphere", a=self.a.tolist(), unit_variance=self.unit_variance)


class MixtureModel(CopulaModel):
    """
    A convex combination of sphere models of
    common dimension.

    Each observation first selects a component by
    one uniform draw, then draws from it. Within a
    block, all selection uniforms are drawn before
    the sphere points.

    Attributes
    ----------
    weights: numpy.ndarray
        The component weights, shape: (n_components,)
    components: list of SphereModel
        The components

    :group: models

    """

    def __init__(self, weights, components, unit_variance=False, name=None):
        """
        Constructor

        Parameters
        ----------
        weights: array-like
            The nonnegative weights summing to one,
            shape: (n_components,)
        components: list of SphereModel
            The components
        unit_variance: bool
            Rescale margins to [-sqrt(3), sqrt(3)]
        name: str, optional
            The model name

        """
        super().__init__(name)
        self.components = list(components)
        self.weights = validate_weights(weights, len(self.components))
        for c in self.components:
            if not isinstance(c, SphereModel):
                raise TypeError(
                    f"Model '{self.name}': Components must be SphereModel, got {type(c).__name__}"
                )
        dims = {c.n_dims for c in self.components}
        if len(dims) != 1:
            raise ValueError(
                f"Model '{self.name}': Components of different dimensions {sorted(dims)}"
            )
        self.unit_variance = unit_variance
        self._cumw = np.cumsum(self.weights)

    @property
    def n_dims(self):
        return self.components[0].n_dims

    @property
    def n_components(self):
        """
        The number of components

        Returns
        -------
        int :
            The number of components

        """
        return len(self.components)

    def margin_bounds(self):
        s = SQRT3 if self.unit_variance else 1.0
        return -s, s

    def spearman_law(self):
        r = np.zeros((self.n_dims, self.n_dims), dtype=np.float64)
        for w, c in zip(self.weights, self.components):
            r += w * c.spearman_law()
        return r

    def select_components(self, u):
        """
        Maps uniforms to component indices.

        Parameters
        ----------
        u: numpy.ndarray
            Uniform draws on [0, 1), shape: (n,)

        Returns
        -------
        numpy.ndarray :
            The component indices, shape: (n,)

        """
        ci = np.searchsorted(self._cumw, u, side="right")
        return np.minimum(ci, self.n_components - 1)

    def sample_block(self, n, rng):
        ci = self.select_components(rng.random(n))
        v = sample_sphere_points(n, rng)
        x = np.zeros((n, self.n_dims), dtype=np.float64)
        for i, c in enumerate(self.components):
            sel = ci == i
            if np.any(sel):
                x[sel] = v[sel] @ c.a.T
        if self.unit_variance:
            x *= SQRT3
        return x

    def to_dict(self):
        return dict(
            type="mixture",
            weights=self.weights.tolist(),
            components=[c.to_dict() for c in self.components],
            unit_variance=self.unit_variance,
        )


def build_from_rank3(r, unit_variance=False):
    """
    Builds the exact sphere model of a correlation
    matrix of rank at most 3.

    Parameters
    ----------
    r: CorrelationMatrix or array-like
        The target matrix, validated if not yet
    unit_variance: bool
        Rescale margins to [-sqrt(3), sqrt(3)]

    Returns
    -------
    model: SphereModel
        The model with Spearman's rho matrix r

    :group: models

    """
    if not isinstance(r, CorrelationMatrix):
        r = validate(r)
    k = rank_of(r, r.rank_tol)
    if k > 3:
        raise RankTooHighError(
            f"build_from_rank3: Target has rank {k} > 3, use the decomposer or the Gaussian approximation"
        )
    dec = rank_decompose(r)
    return SphereModel(pad_columns(dec.a, 3), unit_variance=unit_variance)


def sample_model(model, n, rng=None, workers=1):
    """
    Draws observations from a model.

    Parameters
    ----------
    model: rhocompat.models.CopulaModel
        The model
    n: int
        The number of observations, n >= 1
    rng: int or numpy.random.Generator, optional
        The seed or master generator
    workers: int
        The number of parallel workers

    Returns
    -------
    sample: rhocompat.stats.Sample
        The observations, shape: (n, n_dims)

    :group: models

    """
    return model.sample(n, rng, workers)


def spearman_law(model):
    """
    The exact Spearman's rho matrix of a model.

    Parameters
    ----------
    model: rhocompat.models.CopulaModel
        The model

    Returns
    -------
    numpy.ndarray :
        The matrix, shape: (n_dims, n_dims)

    :group: models

    """
    return model.spearman_law()
