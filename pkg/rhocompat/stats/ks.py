import numpy as np
from scipy.stats import kstest

from .sample import Sample

KS_CRITICAL_001 = 1.63


def ks_critical_value(n):
    """
    Asymptotic Kolmogorov-Smirnov bound at level 0.01.

    Parameters
    ----------
    n: int
        The sample size

    Returns
    -------
    float :
        The bound 1.63 / sqrt(n)

    :group: stats

    """
    return KS_CRITICAL_001 / np.sqrt(n)


def ks_uniform(sample, low=-1.0, high=1.0):
    """
    Column-wise Kolmogorov-Smirnov test against
    the uniform distribution on [low, high].

    Parameters
    ----------
    sample: rhocompat.stats.Sample or array-like
        The observations, shape: (n, n_dims)
    low: float
        The lower bound
    high: float
        The upper bound

    Returns
    -------
    stats: numpy.ndarray
        The KS statistics, shape: (n_dims,)
    pvalues: numpy.ndarray
        The p-values, shape: (n_dims,)

    :group: stats

    """
    values = sample.values if isinstance(sample, Sample) else np.asarray(sample)
    values = np.atleast_2d(np.asarray(values, dtype=np.float64))
    d = values.shape[1]
    stats = np.zeros(d, dtype=np.float64)
    pvals = np.zeros(d, dtype=np.float64)
    for i in range(d):
        res = kstest(values[:, i], "uniform", args=(low, high - low))
        stats[i] = res.statistic
        pvals[i] = res.pvalue
    return stats, pvals
