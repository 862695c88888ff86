import numpy as np
from abc import ABCMeta, abstractmethod

from rhocompat.core import Base
from rhocompat.stats import Sample
from rhocompat.utils import run_blocks


class CopulaModel(Base, metaclass=ABCMeta):
    """
    Abstract base class for samplable models with
    a known Spearman's rho matrix.

    :group: models

    """

    @property
    @abstractmethod
    def n_dims(self):
        """
        The dimension d of the model

        Returns
        -------
        int :
            The dimension

        """
        pass

    @abstractmethod
    def spearman_law(self):
        """
        The exact Spearman's rho matrix of the model.

        Returns
        -------
        numpy.ndarray :
            The matrix, shape: (n_dims, n_dims)

        """
        pass

    def info(self):
        low, high = self.margin_bounds()
        return dict(dimension=self.n_dims, margins=f"U[{low:.6g}, {high:.6g}]")

    @abstractmethod
    def sample_block(self, n, rng):
        """
        Draws a block of observations from one stream.

        Parameters
        ----------
        n: int
            The number of rows
        rng: numpy.random.Generator
            The random stream

        Returns
        -------
        numpy.ndarray :
            The observations, shape: (n, n_dims)

        """
        pass

    @abstractmethod
    def to_dict(self):
        """
        The json representation of the model.

        Returns
        -------
        dict :
            The model data

        """
        pass

    def margin_bounds(self):
        """
        The support of the uniform margins.

        Returns
        -------
        low: float
            The lower bound
        high: float
            The upper bound

        """
        return -1.0, 1.0

    def sample(self, n, rng=None, workers=1):
        """
        Draws observations from the model.

        Parameters
        ----------
        n: int
            The number of observations, n >= 1
        rng: int or numpy.random.Generator, optional
            The seed or master generator
        workers: int
            The number of parallel workers, each drawing
            a contiguous block of rows from its own stream

        Returns
        -------
        sample: rhocompat.stats.Sample
            The observations, shape: (n, n_dims)

        """
        if n < 1:
            raise ValueError(f"Model '{self.name}': Expecting n >= 1, got {n}")
        values = run_blocks(self.sample_block, n, rng, workers)
        return Sample(values)


def validate_weights(weights, n_components):
    """
    Checks mixture weights.

    Parameters
    ----------
    weights: array-like
        The weights, shape: (n_components,)
    n_components: int
        The expected number of weights

    Returns
    -------
    w: numpy.ndarray
        The weights, shape: (n_components,)

    :group: models

    """
    w = np.array(weights, dtype=np.float64)
    if w.ndim != 1 or len(w) != n_components or n_components < 1:
        raise ValueError(
            f"Mixture: Expecting {n_components} weights, got shape {w.shape}"
        )
    if np.any(w < 0):
        raise ValueError(f"Mixture: Negative weights found: {w[w < 0]}")
    s = np.sum(w)
    if abs(s - 1.0) > 1e-12:
        raise ValueError(f"Mixture: Weights sum to {s:.15f}, expecting 1")
    return w
