import numpy as np
from concurrent.futures import ThreadPoolExecutor

DEFAULT_SEED = 0


def get_rng(rng=None):
    """
    Turns a seed or generator into a numpy generator.

    Parameters
    ----------
    rng: int or numpy.random.Generator, optional
        The seed or generator, default seed is 0

    Returns
    -------
    rng: numpy.random.Generator
        The generator

    :group: utils

    """
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(DEFAULT_SEED if rng is None else rng)


def spawn_streams(rng, n_streams):
    """
    Derives independent child generators.

    For a single stream the master generator itself
    is returned, so serial runs consume the master
    stream directly.

    Parameters
    ----------
    rng: int or numpy.random.Generator
        The master seed or generator
    n_streams: int
        The number of streams

    Returns
    -------
    streams: list of numpy.random.Generator
        The generators, ordered by stream index

    :group: utils

    """
    rng = get_rng(rng)
    if n_streams < 1:
        raise ValueError(f"Expecting at least one stream, got {n_streams}")
    if n_streams == 1:
        return [rng]
    return rng.spawn(n_streams)


def row_blocks(n, n_blocks):
    """
    Splits row indices into contiguous blocks.

    Parameters
    ----------
    n: int
        The number of rows
    n_blocks: int
        The number of blocks

    Returns
    -------
    bounds: list of tuple
        The (start, end) index pairs, ordered

    :group: utils

    """
    edges = np.linspace(0, n, n_blocks + 1).astype(np.int64)
    return [(int(edges[i]), int(edges[i + 1])) for i in range(n_blocks)]


def run_blocks(func, n, rng, workers=1):
    """
    Evaluates a row-block function with deterministic
    per-worker random streams.

    Block j covers a contiguous range of rows and draws
    only from stream j. Results are stacked by row index,
    hence the output depends on (seed, workers, n) only.

    Parameters
    ----------
    func: Function
        Block function, parameters: (n_rows, rng),
        returns numpy.ndarray of shape (n_rows, ...)
    n: int
        The total number of rows
    rng: int or numpy.random.Generator
        The master seed or generator
    workers: int
        The number of workers

    Returns
    -------
    out: numpy.ndarray
        The stacked block results, shape: (n, ...)

    :group: utils

    """
    workers = max(1, int(workers))
    streams = spawn_streams(rng, workers)
    blocks = row_blocks(n, workers)

    if workers == 1:
        return func(n, streams[0])

    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(func, b1 - b0, streams[j]) for j, (b0, b1) in enumerate(blocks)
        ]
        parts = [f.result() for f in futures]

    return np.concatenate(parts, axis=0)


def map_streams(func, items, rng, workers=1):
    """
    Maps a function over items, each with its own
    random stream, preserving item order.

    Parameters
    ----------
    func: Function
        Parameters: (item, rng), returns any result
    items: list
        The items
    rng: int or numpy.random.Generator
        The master seed or generator
    workers: int
        The number of threads

    Returns
    -------
    results: list
        The results, ordered as items

    :group: utils

    """
    items = list(items)
    if not len(items):
        return []
    streams = get_rng(rng).spawn(len(items))
    if workers <= 1:
        return [func(it, s) for it, s in zip(items, streams)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(func, it, s) for it, s in zip(items, streams)]
        return [f.result() for f in futures]
