import numpy as np
import pytest

from rhocompat.stats import (
    Sample,
    ranks,
    spearman_pair,
    spearman_formula,
    spearman_matrix,
    max_entry_error,
)
from rhocompat.core import (
    TooFewObservationsError,
    ConstantColumnError,
    LengthMismatchError,
)


def test_ranks_ties():

    r = ranks([3.0, 1.0, 2.0, 2.0])
    print(r)
    assert np.array_equal(r, [4.0, 1.0, 2.5, 2.5])

    with pytest.raises(TooFewObservationsError):
        ranks([1.0])


def test_spearman_pair_ties():

    x = [1.0, 2.0, 3.0, 4.0, 5.0]
    y = [5.0, 6.0, 7.0, 8.0, 7.0]
    rho = spearman_pair(x, y)
    print("rho =", rho)
    assert abs(rho - 8.0 / np.sqrt(95.0)) < 1e-12

    assert abs(spearman_pair(x, x[::-1]) + 1.0) < 1e-14
    assert abs(spearman_pair(x, x) - 1.0) < 1e-14


def test_spearman_formula():

    rng = np.random.default_rng(1)
    maxd = 0.0
    for __ in range(100):
        n = rng.integers(3, 200)
        x = rng.standard_normal(n)
        y = 0.5 * x + rng.standard_normal(n)
        d = abs(spearman_pair(x, y) - spearman_formula(x, y))
        maxd = max(maxd, d)
    print("max deviation:", maxd)
    assert maxd < 1e-12


def test_spearman_pair_symmetric():

    rng = np.random.default_rng(4)
    for __ in range(50):
        n = rng.integers(3, 100)
        x = rng.standard_normal(n)
        y = np.round(x + rng.standard_normal(n), 1)
        assert spearman_pair(x, y) == spearman_pair(y, x)


def test_spearman_matrix():

    rng = np.random.default_rng(2)
    x = rng.standard_normal((500, 4))
    x[:, 1] += x[:, 0]
    x[:, 3] = np.round(x[:, 3], 1)

    r = spearman_matrix(Sample(x))
    print(r)
    assert np.array_equal(r, r.T)
    assert np.array_equal(np.diag(r), np.ones(4))
    for i in range(4):
        for j in range(i + 1, 4):
            assert abs(r[i, j] - spearman_pair(x[:, i], x[:, j])) < 1e-12


def test_spearman_matrix_psd():

    rng = np.random.default_rng(8)
    mineig = np.inf
    for __ in range(100):
        n = int(rng.integers(3, 60))
        d = int(rng.integers(2, 9))
        x = rng.standard_normal((n, d))
        x[:, 1] += x[:, 0]
        r = spearman_matrix(x)
        mineig = min(mineig, np.min(np.linalg.eigvalsh(r)))
    print("min eigenvalue:", mineig)
    assert mineig >= -1e-10


def test_spearman_invariance():

    rng = np.random.default_rng(3)
    x = rng.standard_normal((1000, 3))
    x[:, 2] += x[:, 1]
    y = np.column_stack([np.exp(x[:, 0]), x[:, 1] ** 3, np.arctan(x[:, 2])])
    r1 = spearman_matrix(x)
    r2 = spearman_matrix(y)
    assert np.array_equal(r1, r2)


def test_spearman_errors():

    with pytest.raises(ConstantColumnError):
        spearman_matrix(np.column_stack([np.arange(5.0), np.ones(5)]))
    with pytest.raises(TooFewObservationsError):
        spearman_matrix(np.ones((1, 3)))
    with pytest.raises(LengthMismatchError):
        spearman_pair([1.0, 2.0, 3.0], [1.0, 2.0])


def test_max_entry_error():

    assert max_entry_error(np.eye(2), [[1.0, 0.25], [-0.5, 1.0]]) == 0.5


if __name__ == "__main__":
    test_ranks_ties()
    test_spearman_pair_ties()
    test_spearman_pair_symmetric()
    test_spearman_formula()
    test_spearman_matrix()
    test_spearman_matrix_psd()
    test_spearman_invariance()
    test_spearman_errors()
    test_max_entry_error()
