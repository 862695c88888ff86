import numpy as np
import matplotlib.pyplot as plt

from rhocompat.core import RankDecomposition


def mixture_matrix(weights, atoms, n_dims):
    """
    The convex combination sum_i w_i A_i A_i^T.

    Parameters
    ----------
    weights: array-like
        The weights, shape: (n_atoms,)
    atoms: list of numpy.ndarray or RankDecomposition
        The factors, each of shape (n_dims, 3)
    n_dims: int
        The dimension

    Returns
    -------
    s: numpy.ndarray
        The matrix, shape: (n_dims, n_dims)

    :group: optimizers

    """
    s = np.zeros((n_dims, n_dims), dtype=np.float64)
    for w, a in zip(weights, atoms):
        a = a.a if isinstance(a, RankDecomposition) else a
        s += w * (a @ a.T)
    return s


class DecompositionResult:
    """
    Container for convex decompositions of a target
    matrix into rank-3 atoms.

    A converged result is a construction: the mixture of
    the atoms' sphere models has the target as Spearman's
    rho matrix up to the residual. A non-converged result
    proves nothing.

    Attributes
    ----------
    target: numpy.ndarray
        The target matrix, shape: (n_dims, n_dims)
    weights: numpy.ndarray
        The simplex weights, shape: (n_atoms,)
    atoms: list of rhocompat.core.RankDecomposition
        The atoms, factors of shape (n_dims, 3)
    residual: float
        Frobenius norm of target minus the mixture
    iterations: int
        The number of rounds run
    converged: bool
        True if residual < tol
    residual_trace: list of float
        The residual after each round
    tol: float
        The convergence tolerance
    name: str
        The solver name

    :group: optimizers

    """

    def __init__(
        self,
        target,
        weights,
        atoms,
        residual,
        iterations,
        converged,
        residual_trace,
        tol,
        name="decomposition",
    ):
        """
        Constructor

        Parameters
        ----------
        target: numpy.ndarray
            The target matrix, shape: (n_dims, n_dims)
        weights: array-like
            The simplex weights, shape: (n_atoms,)
        atoms: list
            The factors, numpy.ndarray or RankDecomposition
        residual: float
            The final residual
        iterations: int
            The number of rounds run
        converged: bool
            The convergence flag
        residual_trace: list of float
            The residual after each round
        tol: float
            The convergence tolerance
        name: str
            The solver name

        """
        self.target = np.array(target, dtype=np.float64)
        self.weights = np.array(weights, dtype=np.float64)
        self.atoms = [
            a if isinstance(a, RankDecomposition) else RankDecomposition(a)
            for a in atoms
        ]
        self.residual = float(residual)
        self.iterations = int(iterations)
        self.converged = bool(converged)
        self.residual_trace = [float(r) for r in residual_trace]
        self.tol = tol
        self.name = name

        if len(self.weights) != len(self.atoms):
            raise ValueError(
                f"DecompositionResult: {len(self.weights)} weights for {len(self.atoms)} atoms"
            )

    @property
    def n_dims(self):
        """
        The dimension

        Returns
        -------
        int :
            The dimension

        """
        return self.target.shape[0]

    @property
    def n_atoms(self):
        """
        The number of atoms

        Returns
        -------
        int :
            The number of atoms

        """
        return len(self.atoms)

    def approximation(self):
        """
        The mixture matrix sum_i w_i A_i A_i^T

        Returns
        -------
        numpy.ndarray :
            The matrix, shape: (n_dims, n_dims)

        """
        return mixture_matrix(self.weights, self.atoms, self.n_dims)

    def recompute_residual(self):
        """
        Recomputes the residual from the stored fields

        Returns
        -------
        float :
            The Frobenius norm of target minus mixture

        """
        return float(np.linalg.norm(self.target - self.approximation()))

    def to_dict(self):
        """
        The json representation

        Returns
        -------
        dict :
            The result data

        """
        return dict(
            weights=self.weights.tolist(),
            atoms=[a.a.tolist() for a in self.atoms],
            residual=self.residual,
            iterations=self.iterations,
            converged=self.converged,
            residual_trace=self.residual_trace,
        )

    def __str__(self):
        s = f"Results decomposition '{self.name}':\n"
        hline = "-" * len(s) + "\n"
        s += hline
        s += f"  Dimension : {self.n_dims}\n"
        s += f"  Atoms     : {self.n_atoms}\n"
        if self.n_atoms:
            L = len(str(self.n_atoms - 1))
            s += "  Weights:\n"
            for i, w in enumerate(self.weights):
                s += f"    {i:>{L}}: {w:.6e}\n"
        s += hline
        s += f"  Iterations: {self.iterations}\n"
        s += f"  Residual  : {self.residual:.6e}\n"
        s += f"  Converged : {self.converged}\n"
        s += hline
        return s

    def plot_residuals(self, ax=None, figsize=(5, 4), title=None):
        """
        Plots the residual trace on a log scale.

        Parameters
        ----------
        ax: pyplot.Axis, optional
            The axis to plot on
        figsize: tuple
            The figure size, if ax is not given
        title: str, optional
            The plot title

        Returns
        -------
        ax: pyplot.axis
            The plot axis

        """
        if ax is None:
            __, ax = plt.subplots(figsize=figsize)

        its = np.arange(1, len(self.residual_trace) + 1)
        ax.semilogy(its, self.residual_trace, marker=".", label="residual")
        ax.axhline(self.tol, color="red", linestyle="--", label="tol")
        ax.set_xlabel("round")
        ax.set_ylabel("Frobenius residual")
        ax.set_title(self.name if title is None else title)
        ax.legend(loc="best")
        ax.grid()

        return ax
