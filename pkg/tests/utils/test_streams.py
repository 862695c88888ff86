import numpy as np
import pytest

from rhocompat.utils import get_rng, spawn_streams, row_blocks, run_blocks, map_streams


def _block(n, rng):
    return rng.random((n, 2))


def test_get_rng():

    assert np.array_equal(get_rng().random(3), np.random.default_rng(0).random(3))
    g = np.random.default_rng(5)
    assert get_rng(g) is g


def test_spawn_streams():

    g = np.random.default_rng(1)
    assert spawn_streams(g, 1)[0] is g
    s1 = [s.random() for s in spawn_streams(2, 3)]
    s2 = [s.random() for s in spawn_streams(2, 3)]
    assert s1 == s2
    assert len(set(s1)) == 3
    with pytest.raises(ValueError):
        spawn_streams(0, 0)


def test_row_blocks():

    b = row_blocks(10, 3)
    print(b)
    assert b[0][0] == 0 and b[-1][1] == 10
    assert all(b[i][1] == b[i + 1][0] for i in range(2))
    assert sum(e - s for s, e in b) == 10


def test_run_blocks():

    x1 = run_blocks(_block, 1000, 3, workers=1)
    assert np.array_equal(x1, np.random.default_rng(3).random((1000, 2)))

    x4 = run_blocks(_block, 1000, 3, workers=4)
    y4 = run_blocks(_block, 1000, 3, workers=4)
    assert x4.shape == (1000, 2)
    assert np.array_equal(x4, y4)


def test_map_streams():

    r1 = map_streams(lambda i, rng: (i, rng.random()), range(5), 8, workers=1)
    r2 = map_streams(lambda i, rng: (i, rng.random()), range(5), 8, workers=3)
    assert [r[0] for r in r1] == list(range(5))
    assert r1 == r2
    assert map_streams(lambda i, rng: i, [], 8) == []


if __name__ == "__main__":
    test_get_rng()
    test_spawn_streams()
    test_row_blocks()
    test_run_blocks()
    test_map_streams()
