import numpy as np
import pytest
from scipy.optimize import check_grad
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from rhocompat.optimizers import (  # noqa: E402
    CGDecomposer,
    DecompositionResult,
    decompose,
    copula_from_decomposition,
    project_simplex,
    ascend_atom,
    optimize_weights,
    polish_mixture,
    mixture_matrix,
)
from rhocompat.optimizers.cg_decomposer import _polish_objective  # noqa: E402
from rhocompat.models import SphereModel, MixtureModel  # noqa: E402
from rhocompat.benchmarks import planted_mixture, random_sphere_factor  # noqa: E402
from rhocompat.certificates import matrix_12  # noqa: E402
from rhocompat.stats import spearman_matrix, max_entry_error  # noqa: E402
from rhocompat.core import NotConvergedError  # noqa: E402


def check_result(res):

    assert isinstance(res, DecompositionResult)
    assert np.all(res.weights >= 0)
    assert abs(np.sum(res.weights) - 1.0) < 1e-12
    assert abs(res.recompute_residual() - res.residual) < 1e-10
    for a in res.atoms:
        assert a.a.shape == (res.n_dims, 3)
        assert np.allclose(np.linalg.norm(a.a, axis=1), 1.0, atol=1e-10)
    trace = np.array(res.residual_trace)
    assert np.all(np.diff(trace) <= 1e-12)
    assert res.converged == (res.residual < res.tol)


def test_project_simplex():

    assert np.allclose(project_simplex(np.array([0.5, 0.5])), [0.5, 0.5])
    assert np.allclose(project_simplex(np.array([2.0, 0.0])), [1.0, 0.0])
    assert np.allclose(project_simplex(np.array([0.0, 0.0, 0.0])), [1 / 3, 1 / 3, 1 / 3])

    rng = np.random.default_rng(0)
    for __ in range(20):
        w = project_simplex(rng.standard_normal(7))
        assert np.all(w >= 0)
        assert abs(np.sum(w) - 1.0) < 1e-12


def test_ascend_atom():

    rng = np.random.default_rng(1)
    r, __ = planted_mixture(6, rng=rng)
    g = r - np.eye(6)
    b0 = rng.standard_normal((6, 3))
    b0 /= np.linalg.norm(b0, axis=1)[:, None]
    f0 = np.sum(b0 * (g @ b0))
    b, f = ascend_atom(g, b0)
    print("oracle value:", f0, "->", f)
    assert f >= f0
    assert np.allclose(np.linalg.norm(b, axis=1), 1.0, atol=1e-12)


def test_optimize_weights():

    rng = np.random.default_rng(2)
    atoms = [random_sphere_factor(5, rng) for __ in range(3)]
    target = 0.2 * atoms[0] @ atoms[0].T + 0.8 * atoms[2] @ atoms[2].T
    w = optimize_weights(target, atoms, np.ones(3) / 3, max_iter=20000)
    print("weights:", w)
    assert np.allclose(w, [0.2, 0.0, 0.8], atol=1e-6)


def test_polish_gradient():

    rng = np.random.default_rng(3)
    r, __ = planted_mixture(5, rng=rng)
    atoms = [random_sphere_factor(5, rng) for __ in range(3)]
    w = np.array([0.2, 0.3, 0.5])
    x = np.concatenate([np.sqrt(w), np.stack(atoms).reshape(-1)])
    shape = (3, 5, 3)

    def _f(x):
        return _polish_objective(x, r, 3, shape, 1.0)[0]

    def _g(x):
        return _polish_objective(x, r, 3, shape, 1.0)[1]

    err = check_grad(_f, _g, x)
    gnorm = np.linalg.norm(_g(x))
    print("gradient error:", err, "norm:", gnorm)
    assert err < 1e-5 * max(gnorm, 1.0)


def test_polish_mixture():

    rng = np.random.default_rng(4)
    a0 = random_sphere_factor(6, rng)
    a1 = random_sphere_factor(6, rng)
    target = 0.4 * a0 @ a0.T + 0.6 * a1 @ a1.T

    atoms = []
    for a in (a0, a1):
        b = a + 0.05 * rng.standard_normal(a.shape)
        atoms.append(b / np.linalg.norm(b, axis=1)[:, None])
    w0 = np.array([0.5, 0.5])
    res0 = np.linalg.norm(target - mixture_matrix(w0, atoms, 6))

    patoms, w = polish_mixture(target, atoms, w0, max_iter=1000)
    res = np.linalg.norm(target - mixture_matrix(w, patoms, 6))
    print("polish:", res0, "->", res, "weights:", w)
    assert res < 1e-3 * res0
    assert np.all(w >= 0)
    assert abs(np.sum(w) - 1.0) < 1e-12
    for b in patoms:
        assert np.allclose(np.linalg.norm(b, axis=1), 1.0, atol=1e-12)


def test_rank3_single_atom():

    res = decompose(np.eye(3))
    print(res)
    check_result(res)
    assert res.n_atoms == 1
    assert res.iterations == 0
    assert res.weights[0] == 1.0
    assert res.residual < 1e-10
    assert np.allclose(res.atoms[0].a, np.eye(3), atol=1e-14)

    model = copula_from_decomposition(res)
    assert isinstance(model, MixtureModel)
    assert isinstance(model.components[0], SphereModel)
    assert np.allclose(model.components[0].a, np.eye(3), atol=1e-14)
    assert np.array_equal(model.weights, [1.0])

    res = decompose([[1.0, 0.6], [0.6, 1.0]])
    check_result(res)
    assert res.atoms[0].a.shape == (2, 3)
    assert res.residual < 1e-10


def test_planted_recovery():

    rng = np.random.default_rng(42)
    for i in range(10):
        r, __ = planted_mixture(6, (0.3, 0.7), rng)
        res = decompose(r, max_iters=500, tol=1e-6, rng=rng)
        print(i, res.iterations, res.n_atoms, res.residual)
        check_result(res)
        assert res.converged
        assert res.residual < 1e-6

        model = copula_from_decomposition(res)
        dev = np.max(np.abs(model.spearman_law() - r))
        assert dev < 1e-6


def test_planted_roundtrip():

    rng = np.random.default_rng(7)
    for d in (4, 5, 6, 7, 8, 9, 4, 5, 6, 7):
        r, __ = planted_mixture(d, (0.3, 0.7), rng)
        res = decompose(r, tol=1e-6, rng=rng)
        assert res.converged
        smp = copula_from_decomposition(res).sample(10**5, rng)
        err = max_entry_error(spearman_matrix(smp), r)
        print(d, res.n_atoms, res.residual, err)
        assert err <= 0.02


def test_planted_d9():

    for s in range(3):
        r, __ = planted_mixture(9, (0.3, 0.7), rng=100 + s)
        res = decompose(r, tol=1e-6, rng=s)
        print(s, res.iterations, res.n_atoms, res.residual)
        check_result(res)
        assert res.converged
        copula_from_decomposition(res)


def test_m12_not_decomposed():

    res = decompose(matrix_12(), max_iters=15, restarts=3, tol=1e-3, rng=0)
    print(res)
    check_result(res)
    assert not res.converged
    assert res.residual >= 1e-3
    with pytest.raises(NotConvergedError):
        copula_from_decomposition(res)


def test_m12_default_budget():

    res = decompose(matrix_12(), rng=0)
    print(res.iterations, res.n_atoms, res.residual)
    check_result(res)
    assert not res.converged
    assert res.residual > 1e-2


def test_determinism():

    r, __ = planted_mixture(5, (0.5, 0.5), rng=3)
    res1 = decompose(r, max_iters=5, restarts=4, rng=11)
    res2 = decompose(r, max_iters=5, restarts=4, rng=11)
    assert res1.to_dict() == res2.to_dict()

    res3 = decompose(r, max_iters=5, restarts=4, rng=11, workers=2)
    res4 = decompose(r, max_iters=5, restarts=4, rng=11, workers=2)
    assert res3.to_dict() == res4.to_dict()


def test_solver_object():

    r, __ = planted_mixture(5, rng=4)
    solver = CGDecomposer(r, max_iters=3, restarts=2)
    with pytest.raises(ValueError):
        solver.solve(rng=0, verbosity=0)

    solver.initialize()
    solver.print_info()
    assert solver.max_atoms == 16
    results = solver.solve(rng=0, verbosity=1)
    results = solver.finalize(results)
    check_result(results)
    assert results.iterations <= 3
    assert len(results.residual_trace) == results.iterations

    with pytest.raises(ValueError):
        CGDecomposer(r, max_iters=0).initialize()


def test_plot_residuals():

    r, __ = planted_mixture(5, rng=5)
    res = decompose(r, max_iters=4, restarts=2, rng=0)
    ax = res.plot_residuals()
    assert len(ax.lines) == 2
    plt.close(ax.get_figure())


if __name__ == "__main__":
    test_project_simplex()
    test_ascend_atom()
    test_optimize_weights()
    test_polish_gradient()
    test_polish_mixture()
    test_rank3_single_atom()
    test_planted_recovery()
    test_planted_roundtrip()
    test_planted_d9()
    test_m12_not_decomposed()
    test_m12_default_budget()
    test_determinism()
    test_solver_object()
    test_plot_residuals()
