import numpy as np
from scipy.optimize import minimize

from rhocompat.core import (
    Base,
    CorrelationMatrix,
    NotConvergedError,
    validate,
    rank_of,
    rank_decompose,
    pad_columns,
)
from rhocompat.models import SphereModel, MixtureModel
from rhocompat.utils import get_rng, map_streams
from .results import DecompositionResult, mixture_matrix

ATOM_RANK = 3
WEIGHT_DROP_TOL = 1e-12

# rounds improving the residual by less than this factor get the long polish
STALL_RATIO = 0.9


def normalize_rows(b):
    """
    Scales all rows to unit length, zero rows
    become the first unit vector.

    Parameters
    ----------
    b: numpy.ndarray
        The matrix, shape: (d, k)

    Returns
    -------
    numpy.ndarray :
        The row-normalized matrix, shape: (d, k)

    :group: optimizers

    """
    nrm = np.linalg.norm(b, axis=1)
    out = np.zeros_like(b)
    sel = nrm > 0
    out[sel] = b[sel] / nrm[sel, None]
    out[~sel, 0] = 1.0
    return out


def project_simplex(v):
    """
    Euclidean projection onto the probability simplex.

    Parameters
    ----------
    v: numpy.ndarray
        The vector, shape: (n,)

    Returns
    -------
    numpy.ndarray :
        The projection, shape: (n,)

    :group: optimizers

    """
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    j = np.arange(1, len(v) + 1)
    rho = np.nonzero(u - css / j > 0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


def atom_value(g, b):
    """
    The linear oracle value <G, B B^T>.

    Parameters
    ----------
    g: numpy.ndarray
        The symmetric direction, shape: (d, d)
    b: numpy.ndarray
        The factor, shape: (d, k)

    Returns
    -------
    float :
        The value trace(B^T G B)

    :group: optimizers

    """
    return float(np.sum(b * (g @ b)))


def ascend_atom(g, b0, max_steps=200, f_tol=1e-14):
    """
    Projected gradient ascent of <G, B B^T> over
    factors with unit rows.

    Each step moves along the tangential part of the
    gradient 2 G B, renormalizes the rows and halves
    the step size until the value increases.

    Parameters
    ----------
    g: numpy.ndarray
        The symmetric direction, shape: (d, d)
    b0: numpy.ndarray
        The initial factor, shape: (d, k)
    max_steps: int
        The maximal number of ascent steps
    f_tol: float
        The relative value tolerance

    Returns
    -------
    b: numpy.ndarray
        The final factor with unit rows, shape: (d, k)
    f: float
        The final value

    :group: optimizers

    """
    b = normalize_rows(b0)
    f = atom_value(g, b)
    gnorm = np.linalg.norm(g, 2)
    if gnorm == 0:
        return b, f
    t = 1.0 / gnorm

    for __ in range(max_steps):
        grad = 2.0 * g @ b
        grad -= np.sum(grad * b, axis=1)[:, None] * b
        if np.linalg.norm(grad) < 1e-15:
            break

        step = t
        improved = False
        while step > 1e-14:
            bn = normalize_rows(b + step * grad)
            fn = atom_value(g, bn)
            if fn > f:
                improved = True
                break
            step *= 0.5
        if not improved:
            break

        done = fn - f <= f_tol * max(1.0, abs(f))
        b, f = bn, fn
        if done:
            break
        t = 2.0 * step

    return b, f


def spectral_start(g, k=ATOM_RANK):
    """
    The initial factor built from the top-k
    eigenpairs of G.

    Parameters
    ----------
    g: numpy.ndarray
        The symmetric direction, shape: (d, d)
    k: int
        The number of columns

    Returns
    -------
    numpy.ndarray :
        The factor with unit rows, shape: (d, k)

    :group: optimizers

    """
    w, u = np.linalg.eigh(g)
    order = np.argsort(-w, kind="stable")[:k]
    b = u[:, order] * np.sqrt(np.clip(w[order], 0.0, None))[None, :]
    if b.shape[1] < k:
        b = pad_columns(b, k)
    return normalize_rows(b)


def optimize_weights(target, atoms, w0, max_iter=2000, tol=1e-15):
    """
    Minimizes 1/2 |R - sum_i w_i A_i A_i^T|_F^2 over
    the simplex by projected gradient with step 1/L.

    Parameters
    ----------
    target: numpy.ndarray
        The target matrix, shape: (d, d)
    atoms: list of numpy.ndarray
        The factors, each of shape (d, 3)
    w0: numpy.ndarray
        The initial weights, shape: (n_atoms,)
    max_iter: int
        The maximal number of iterations
    tol: float
        The weight change tolerance

    Returns
    -------
    numpy.ndarray :
        The weights, shape: (n_atoms,)

    :group: optimizers

    """
    grams = np.stack([a @ a.T for a in atoms], axis=0)
    flat = grams.reshape(len(atoms), -1)
    q = flat @ flat.T
    c = flat @ target.reshape(-1)
    lip = np.linalg.eigvalsh(q)[-1]

    w = project_simplex(np.asarray(w0, dtype=np.float64))
    if lip <= 0:
        return w
    for __ in range(max_iter):
        wn = project_simplex(w - (q @ w - c) / lip)
        delta = np.max(np.abs(wn - w))
        w = wn
        if delta < tol:
            break
    return w


def _polish_objective(x, target, n_atoms, shape, scale):
    """
    Helper function: scaled residual and gradient for
    the joint polish, weights w = z^2 / |z|^2
    """
    z = x[:n_atoms]
    bs = x[n_atoms:].reshape(shape)
    zz = z**2
    zs = np.sum(zz)
    w = zz / zs
    nrm = np.linalg.norm(bs, axis=2)
    us = bs / nrm[:, :, None]

    s = np.einsum("i,idk,iek->de", w, us, us)
    e = target - s
    f = 0.5 * np.sum(e**2)

    gw = -np.einsum("de,idk,iek->i", e, us, us)
    gz = 2.0 * z / zs * (gw - np.dot(gw, w))
    gu = -2.0 * w[:, None, None] * np.einsum("de,iek->idk", e, us)
    gb = (gu - np.sum(gu * us, axis=2)[:, :, None] * us) / nrm[:, :, None]

    return f * scale, np.concatenate([gz, gb.reshape(-1)]) * scale


def polish_mixture(target, atoms, weights, max_iter=300):
    """
    Jointly refines all atoms and weights by L-BFGS-B on
    the residual. Rows are kept on the unit sphere by
    normalization, weights on the simplex by the
    parametrization w = z^2 / |z|^2.

    Parameters
    ----------
    target: numpy.ndarray
        The target matrix, shape: (d, d)
    atoms: list of numpy.ndarray
        The factors, each of shape (d, 3)
    weights: numpy.ndarray
        The simplex weights, shape: (n_atoms,)
    max_iter: int
        The maximal number of L-BFGS-B iterations

    Returns
    -------
    atoms: list of numpy.ndarray
        The refined factors with unit rows
    weights: numpy.ndarray
        The refined weights, shape: (n_atoms,)

    :group: optimizers

    """
    n = len(atoms)
    shape = (n,) + atoms[0].shape
    f0 = 0.5 * np.linalg.norm(target - mixture_matrix(weights, atoms, shape[1])) ** 2
    if f0 == 0:
        return atoms, weights

    x0 = np.concatenate(
        [np.sqrt(np.asarray(weights, dtype=np.float64)), np.stack(atoms, axis=0).reshape(-1)]
    )
    res = minimize(
        _polish_objective,
        x0,
        args=(target, n, shape, 1.0 / f0),
        jac=True,
        method="L-BFGS-B",
        options=dict(maxiter=max_iter, maxcor=20, ftol=1e-15, gtol=1e-13),
    )
    z = res.x[:n]
    w = z**2 / np.sum(z**2)
    bs = res.x[n:].reshape(shape)
    return [normalize_rows(b) for b in bs], w


def _drop_small(atoms, weights):
    """
    Helper function removing atoms of negligible
    weight, the rest renormalized
    """
    keep = weights >= WEIGHT_DROP_TOL
    atoms = [a for a, k in zip(atoms, keep) if k]
    return atoms, weights[keep] / np.sum(weights[keep])


class CGDecomposer(Base):
    """
    Conditional gradient (Frank-Wolfe) decomposition of a
    correlation matrix into a convex combination of
    rank-3 atoms A A^T with unit rows.

    Each round adds the atom that best ascends the linear
    oracle <R - S, B B^T>, re-optimizes all weights over the
    simplex, drops negligible atoms and polishes atoms and
    weights jointly. A round that stalls gets a longer
    polish. Rounds that do not lower the residual are
    rejected, so the residual trace is non-increasing.

    Attributes
    ----------
    target: rhocompat.core.CorrelationMatrix
        The target matrix
    max_atoms: int
        The maximal number of atoms
    max_iters: int
        The maximal number of rounds
    restarts: int
        The number of random oracle initializations
    tol: float
        The residual tolerance
    ascent_steps: int
        The maximal number of oracle ascent steps
    weight_iters: int
        The maximal number of weight iterations
    polish: bool
        Flag for the joint atom and weight polish
    polish_iters: int
        The maximal number of polish iterations per round
    stall_polish_iters: int
        The maximal number of polish iterations after
        a stalled round
    workers: int
        The number of threads for the restarts

    :group: optimizers

    """

    def __init__(
        self,
        target,
        max_atoms=None,
        max_iters=500,
        restarts=10,
        tol=1e-6,
        ascent_steps=200,
        weight_iters=2000,
        polish=True,
        polish_iters=300,
        stall_polish_iters=3000,
        workers=1,
        name="CG",
    ):
        """
        Constructor

        Parameters
        ----------
        target: CorrelationMatrix or array-like
            The target matrix, validated if not yet
        max_atoms: int, optional
            The maximal number of atoms, default
            is d(d+1)/2 + 1
        max_iters: int
            The maximal number of rounds
        restarts: int
            The number of random oracle initializations
        tol: float
            The residual tolerance
        ascent_steps: int
            The maximal number of oracle ascent steps
        weight_iters: int
            The maximal number of weight iterations
        polish: bool
            Flag for the joint atom and weight polish
        polish_iters: int
            The maximal number of polish iterations per round
        stall_polish_iters: int
            The maximal number of polish iterations after
            a stalled round
        workers: int
            The number of threads for the restarts
        name: str
            The name

        """
        super().__init__(name)
        self.target = target
        self.max_atoms = max_atoms
        self.max_iters = max_iters
        self.restarts = restarts
        self.tol = tol
        self.ascent_steps = ascent_steps
        self.weight_iters = weight_iters
        self.polish = polish
        self.polish_iters = polish_iters
        self.stall_polish_iters = stall_polish_iters
        self.workers = workers

    def initialize(self, verbosity=0):
        """
        Initialize the object.

        Parameters
        ----------
        verbosity: int
            The verbosity level, 0 = silent

        """
        if not isinstance(self.target, CorrelationMatrix):
            self.target = validate(self.target)

        d = self.target.n_dims
        if self.max_atoms is None:
            self.max_atoms = d * (d + 1) // 2 + 1
        if self.max_atoms < 1:
            raise ValueError(
                f"Decomposer '{self.name}': max_atoms must be positive, got {self.max_atoms}"
            )
        if self.max_iters < 1:
            raise ValueError(
                f"Decomposer '{self.name}': max_iters must be positive, got {self.max_iters}"
            )
        if self.restarts < 0:
            raise ValueError(
                f"Decomposer '{self.name}': restarts must be non-negative, got {self.restarts}"
            )

        super().initialize(verbosity)

    def info(self):
        return dict(
            dimension=self.target.n_dims,
            rank=self.target.rank,
            max_atoms=self.max_atoms,
            max_iters=self.max_iters,
            restarts=self.restarts,
            tol=self.tol,
        )

    def _residual(self, atoms, weights):
        """
        Helper function for the Frobenius residual
        """
        r = np.asarray(self.target.entries)
        return float(np.linalg.norm(r - mixture_matrix(weights, atoms, len(r))))

    def _best_atom(self, g, rng):
        """
        Helper function: oracle atom from the spectral
        start and all random restarts, first best wins
        """
        d = len(g)

        def _random(i, srng):
            b0 = srng.standard_normal((d, ATOM_RANK))
            return ascend_atom(g, b0, self.ascent_steps)

        cands = [ascend_atom(g, spectral_start(g), self.ascent_steps)]
        cands += map_streams(_random, range(self.restarts), rng, self.workers)

        best = 0
        for i, (__, f) in enumerate(cands):
            if f > cands[best][1]:
                best = i
        return cands[best][0]

    def _exact(self, verbosity):
        """
        Helper function: single atom result for
        targets of rank at most 3
        """
        dec = rank_decompose(self.target)
        atoms = [pad_columns(dec.a, ATOM_RANK)]
        weights = np.ones(1)
        res = self._residual(atoms, weights)
        if verbosity > 0:
            print(f"Decomposer '{self.name}': rank {dec.k} target, exact single atom")
        return DecompositionResult(
            self.target.entries,
            weights,
            atoms,
            residual=res,
            iterations=0,
            converged=res < self.tol,
            residual_trace=[res],
            tol=self.tol,
            name=self.name,
        )

    def solve(self, rng=None, verbosity=1):
        """
        Run the decomposition.

        Parameters
        ----------
        rng: int or numpy.random.Generator, optional
            The seed or master generator for the restarts
        verbosity: int
            The verbosity level, 0 = silent

        Returns
        -------
        results: DecompositionResult
            The decomposition result

        """
        self.check_initialized("solve")
        rng = get_rng(rng)

        if rank_of(self.target, self.target.rank_tol) <= ATOM_RANK:
            return self._exact(verbosity)

        r = np.asarray(self.target.entries)
        atoms = []
        weights = np.zeros(0)
        res = np.inf
        trace = []

        if verbosity > 0:
            s = f"{'it':<5} | {'Residual':<9} | atoms | accepted"
            hline = "-" * (len(s) + 1)
            print(f"\nRunning {self.name}")
            print(hline)
            print(s)
            print(hline)

        count = 0
        converged = False
        for count in range(1, self.max_iters + 1):
            s = mixture_matrix(weights, atoms, len(r))
            b = self._best_atom(r - s, rng)

            natoms = list(atoms)
            w0 = weights.copy()
            if len(natoms) >= self.max_atoms:
                j = int(np.argmin(w0))
                del natoms[j]
                w0 = np.delete(w0, j)
                w0 /= np.sum(w0)
            natoms.append(b)
            w0 = np.append(w0, 0.0) if len(w0) else np.ones(1)

            w = optimize_weights(r, natoms, w0, self.weight_iters)
            natoms, w = _drop_small(natoms, w)
            nres = self._residual(natoms, w)

            if self.polish:
                iters = self.polish_iters
                if nres > STALL_RATIO * res:
                    iters = self.stall_polish_iters
                patoms, pw = _drop_small(*polish_mixture(r, natoms, w, iters))
                pres = self._residual(patoms, pw)
                if pres < nres:
                    natoms, w, nres = patoms, pw, pres

            accepted = nres <= res
            if accepted:
                atoms, weights, res = natoms, w, nres
            trace.append(res)

            if verbosity > 0:
                print(f"{count:>5} | {res:9.3e} | {len(atoms):>5} | {accepted}")

            if res < self.tol:
                converged = True
                break

        if verbosity > 0:
            print("-" * 37)

        return DecompositionResult(
            r,
            weights,
            atoms,
            residual=res,
            iterations=count,
            converged=converged,
            residual_trace=trace,
            tol=self.tol,
            name=self.name,
        )

    def finalize(self, results, verbosity=1):
        """
        This function may be called after finishing
        the decomposition.

        Parameters
        ----------
        results: DecompositionResult
            The decomposition result
        verbosity: int
            The verbosity level, 0 = silent

        Returns
        -------
        results: DecompositionResult
            The decomposition result

        """
        if verbosity > 0:
            print()
            print(results)
        super().finalize(verbosity)
        return results


def decompose(
    r,
    max_atoms=None,
    max_iters=500,
    restarts=10,
    tol=1e-6,
    rng=None,
    workers=1,
    verbosity=0,
    **kwargs,
):
    """
    Decomposes a correlation matrix into a convex
    combination of rank-3 atoms.

    Non-convergence is reported by the result's
    converged flag and proves nothing.

    Parameters
    ----------
    r: CorrelationMatrix or array-like
        The target matrix, validated if not yet
    max_atoms: int, optional
        The maximal number of atoms, default
        is d(d+1)/2 + 1
    max_iters: int
        The maximal number of rounds
    restarts: int
        The number of random oracle initializations
    tol: float
        The residual tolerance
    rng: int or numpy.random.Generator, optional
        The seed or master generator
    workers: int
        The number of threads for the restarts
    verbosity: int
        The verbosity level, 0 = silent
    kwargs: dict, optional
        Additional parameters for CGDecomposer

    Returns
    -------
    results: DecompositionResult
        The decomposition result

    :group: optimizers

    """
    solver = CGDecomposer(
        r,
        max_atoms=max_atoms,
        max_iters=max_iters,
        restarts=restarts,
        tol=tol,
        workers=workers,
        **kwargs,
    )
    solver.initialize(verbosity)
    if verbosity > 0:
        solver.print_info()
    results = solver.solve(rng, verbosity)
    return solver.finalize(results, verbosity)


def copula_from_decomposition(res, unit_variance=False):
    """
    Builds the mixture of sphere models of a converged
    decomposition.

    Parameters
    ----------
    res: DecompositionResult
        The converged decomposition
    unit_variance: bool
        Rescale margins to [-sqrt(3), sqrt(3)]

    Returns
    -------
    model: rhocompat.models.MixtureModel
        The mixture, Spearman's rho matrix within
        res.residual of the target

    :group: optimizers

    """
    if not res.converged:
        raise NotConvergedError(
            f"copula_from_decomposition: Decomposition '{res.name}' did not converge, residual {res.residual:.3e} >= tol {res.tol:.1e}"
        )
    comps = [SphereModel(a.a) for a in res.atoms]
    return MixtureModel(res.weights, comps, unit_variance=unit_variance)
