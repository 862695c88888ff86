import numpy as np

from rhocompat.core import Base

UNIT_TOL = 1e-12


class VectorFamily(Base):
    """
    A family of m unit vectors in R^k.

    Attributes
    ----------
    vectors: numpy.ndarray
        The vectors as rows, shape: (m, k)

    :group: certificates

    """

    def __init__(self, vectors, name=None):
        """
        Constructor

        Parameters
        ----------
        vectors: array-like
            The unit vectors as rows, shape: (m, k)
        name: str, optional
            The family name

        """
        super().__init__(name)
        v = np.array(vectors, dtype=np.float64)
        if v.ndim != 2 or v.shape[0] < 1 or v.shape[1] < 1:
            raise ValueError(
                f"VectorFamily '{self.name}': Expecting array of shape (m, k), got {v.shape}"
            )
        dev = np.max(np.abs(np.linalg.norm(v, axis=1) - 1.0))
        if dev > UNIT_TOL:
            raise ValueError(
                f"VectorFamily '{self.name}': Vectors are not unit vectors, maximal norm deviation {dev:.3e}"
            )
        v.setflags(write=False)
        self.vectors = v

    @property
    def m(self):
        """
        The number of vectors

        Returns
        -------
        int :
            The family size

        """
        return self.vectors.shape[0]

    @property
    def k(self):
        """
        The ambient dimension

        Returns
        -------
        int :
            The dimension k

        """
        return self.vectors.shape[1]

    def info(self):
        return dict(vectors=self.m, dimension=self.k)


def vectors_12():
    """
    The 12 unit vectors in R^4 whose Gram matrix is a
    correlation matrix but not a Spearman's rho matrix.

    The first four are the standard basis, the other
    eight are (1/2)(1, +-1, +-1, +-1).

    Returns
    -------
    family: VectorFamily
        The family, shape of vectors: (12, 4)

    :group: certificates

    """
    v = np.zeros((12, 4), dtype=np.float64)
    v[:4] = np.eye(4)
    i = 4
    for s1 in (1.0, -1.0):
        for s2 in (1.0, -1.0):
            for s3 in (1.0, -1.0):
                v[i] = 0.5 * np.array([1.0, s1, s2, s3])
                i += 1
    return VectorFamily(v, name="m12")


def icosahedron_family():
    """
    The 6 vertex directions of the icosahedron in R^3.

    Returns
    -------
    family: VectorFamily
        The family, shape of vectors: (6, 3)

    :group: certificates

    """
    phi = 0.5 * (1.0 + np.sqrt(5.0))
    v = np.array(
        [
            [0.0, 1.0, phi],
            [0.0, -1.0, phi],
            [1.0, phi, 0.0],
            [-1.0, phi, 0.0],
            [phi, 0.0, 1.0],
            [phi, 0.0, -1.0],
        ]
    )
    v /= np.linalg.norm(v, axis=1)[:, None]
    return VectorFamily(v, name="icosahedron")


def standard_basis_family(k=3):
    """
    The standard basis of R^k.

    Parameters
    ----------
    k: int
        The dimension

    Returns
    -------
    family: VectorFamily
        The family, shape of vectors: (k, k)

    :group: certificates

    """
    return VectorFamily(np.eye(k), name=f"e1..e{k}")


def gram_matrix(family):
    """
    The Gram matrix of a vector family.

    Parameters
    ----------
    family: VectorFamily or array-like
        The family, shape of vectors: (m, k)

    Returns
    -------
    g: numpy.ndarray
        The Gram matrix, shape: (m, m)

    :group: certificates

    """
    v = family.vectors if isinstance(family, VectorFamily) else np.asarray(family)
    return v @ v.T
