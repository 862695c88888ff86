import numpy as np

from rhocompat.utils import get_rng


def random_sphere_factor(d, rng=None, k=3):
    """
    A random d x k factor with unit rows, each row
    uniform on the unit sphere.

    Parameters
    ----------
    d: int
        The number of rows
    rng: int or numpy.random.Generator, optional
        The seed or generator
    k: int
        The number of columns

    Returns
    -------
    a: numpy.ndarray
        The factor, shape: (d, k)

    :group: benchmarks

    """
    rng = get_rng(rng)
    a = rng.standard_normal((d, k))
    return a / np.linalg.norm(a, axis=1)[:, None]


def planted_mixture(d, weights=(0.3, 0.7), rng=None):
    """
    A planted decomposition instance

    R = sum_i w_i A_i A_i^T

    with random factors A_i of shape (d, 3) and
    unit rows. For d <= 9 every correlation matrix
    is of this form, the planted instance provides
    one known decomposition.

    Parameters
    ----------
    d: int
        The dimension
    weights: tuple
        The mixture weights, summing to one
    rng: int or numpy.random.Generator, optional
        The seed or generator

    Returns
    -------
    r: numpy.ndarray
        The target matrix, shape: (d, d)
    atoms: list of numpy.ndarray
        The planted factors, each of shape (d, 3)

    :group: benchmarks

    """
    rng = get_rng(rng)
    atoms = [random_sphere_factor(d, rng) for __ in weights]
    r = np.zeros((d, d), dtype=np.float64)
    for w, a in zip(weights, atoms):
        r += w * (a @ a.T)
    r = 0.5 * (r + r.T)
    np.fill_diagonal(r, 1.0)
    return r, atoms
