import numpy as np


class Sample:
    """
    Container for n observations of a d-dimensional
    random vector.

    Attributes
    ----------
    values: numpy.ndarray
        The observations, shape: (n, n_dims)
    names: list of str
        The column names

    :group: stats

    """

    def __init__(self, values, names=None):
        """
        Constructor

        Parameters
        ----------
        values: array-like
            The observations, shape: (n, n_dims)
        names: list of str, optional
            The column names

        """
        self.values = np.array(values, dtype=np.float64)
        if self.values.ndim != 2 or self.values.shape[0] < 1:
            raise ValueError(
                f"Sample: Expecting array of shape (n, n_dims) with n >= 1, got {self.values.shape}"
            )
        if names is None:
            names = [f"x{i}" for i in range(self.n_dims)]
        elif len(names) != self.n_dims:
            raise ValueError(
                f"Sample: Got {len(names)} names for {self.n_dims} columns: {names}"
            )
        self.names = list(names)

    def __len__(self):
        return self.n

    @property
    def n(self):
        """
        The number of observations

        Returns
        -------
        int :
            The number of rows

        """
        return self.values.shape[0]

    @property
    def n_dims(self):
        """
        The dimension

        Returns
        -------
        int :
            The number of columns

        """
        return self.values.shape[1]

    def column(self, i):
        """
        Get a column

        Parameters
        ----------
        i: int
            The column index

        Returns
        -------
        numpy.ndarray :
            The column, shape: (n,)

        """
        return self.values[:, i]
