import numpy as np

from rhocompat.core import NotAFrameError
from rhocompat.utils import get_rng
from .families import VectorFamily


def frame_ratios(family, points):
    """
    Evaluates sum((a_i . v)^2) / |v|^2 and
    sum((a_i . v)^4) / |v|^4 at given points.

    Parameters
    ----------
    family: VectorFamily
        The vector family, shape of vectors: (m, k)
    points: numpy.ndarray
        Nonzero evaluation points, shape: (n_points, k)

    Returns
    -------
    r2: numpy.ndarray
        The quadratic ratios, shape: (n_points,)
    r4: numpy.ndarray
        The quartic ratios, shape: (n_points,)

    :group: certificates

    """
    p = np.atleast_2d(np.asarray(points, dtype=np.float64))
    proj = p @ family.vectors.T
    n2 = np.sum(p**2, axis=1)
    r2 = np.sum(proj**2, axis=1) / n2
    r4 = np.sum(proj**4, axis=1) / n2**2
    return r2, r4


def _random_points(n, k, rng):
    """
    Helper function drawing nonzero Gaussian points
    """
    p = rng.standard_normal((n, k))
    bad = np.where(np.all(p == 0, axis=1))[0]
    while len(bad):
        p[bad] = rng.standard_normal((len(bad), k))
        bad = bad[np.all(p[bad] == 0, axis=1)]
    return p


def check_frame_identities(family, trials=200, tol=1e-9, rng=None):
    """
    Verifies the quadratic and quartic frame identities
    by randomized identity testing.

    The constants are fitted at one random point and
    then checked at `trials` further random points,
    relative to max(1, |constant|). A single failing
    point disproves the identity.

    Parameters
    ----------
    family: VectorFamily or array-like
        The unit vector family, shape of vectors: (m, k)
    trials: int
        The number of verification points
    tol: float
        The relative tolerance
    rng: int or numpy.random.Generator, optional
        The seed or generator

    Returns
    -------
    c2: float
        The quadratic frame constant
    c4: float
        The quartic frame constant

    :group: certificates

    """
    if not isinstance(family, VectorFamily):
        family = VectorFamily(family)
    rng = get_rng(rng)

    pts = _random_points(trials + 1, family.k, rng)
    r2, r4 = frame_ratios(family, pts)
    c2 = float(r2[0])
    c4 = float(r4[0])

    for deg, r, c in ((2, r2, c2), (4, r4, c4)):
        bad = np.abs(r[1:] - c) > tol * max(1.0, abs(c))
        if np.any(bad):
            i = int(np.argmax(bad)) + 1
            raise NotAFrameError(
                f"VectorFamily '{family.name}': No degree {deg} identity, ratio {r[i]:.12g} at trial point {i} versus {c:.12g} at the fitting point",
                point=pts[i],
                degree=deg,
                ratio=float(r[i]),
                expected=c,
            )

    return c2, c4
