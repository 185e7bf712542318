"""Shared statistical helpers for test suites (independent of package code)."""

import numpy as np


def ess(x):
    """Effective sample size from the initial positive autocorrelation sum."""
    x = np.asarray(x, dtype=float)
    x = x - x.mean()
    n = len(x)
    var = x.var()
    if var == 0:
        return float(n)
    acf = np.correlate(x, x, "full")[n - 1:] / (np.arange(n, 0, -1) * var)
    s = 0.0
    for k in range(1, n):
        if acf[k] <= 0.05:
            break
        s += acf[k]
    return n / (1.0 + 2.0 * s)


def mean_se(x):
    """Standard error of the mean, autocorrelation-adjusted."""
    x = np.asarray(x, dtype=float)
    return float(np.sqrt(x.var() / ess(x)))
