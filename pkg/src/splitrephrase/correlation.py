"""Spearman rank correlation with tie handling and significance testing.

Ranks use the average-rank convention for ties; rho is the Pearson
correlation of the ranks. The p-value comes from the t statistic
t = rho * sqrt((n-2) / (1-rho^2)) against Student's t with n-2 degrees of
freedom (two-sided), the standard approximation at survey-scale n. An exact
permutation p-value is available for small samples to audit the
approximation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .reliability import regularized_incomplete_beta

ALPHA = 0.05
EXACT_MAX_N = 10


@dataclass(frozen=True)
class CorrelationResult:
    rho: float
    p_value: float
    significant: bool
    n: int


def average_ranks(values: Sequence[float]) -> list[float]:
    """1-based ranks; tied values share the average of their positions."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j) / 2.0 + 1.0
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


def _pearson(x: Sequence[float], y: Sequence[float]) -> float:
    n = len(x)
    mx = sum(x) / n
    my = sum(y) / n
    sxy = sum((a - mx) * (b - my) for a, b in zip(x, y))
    sxx = sum((a - mx) ** 2 for a in x)
    syy = sum((b - my) ** 2 for b in y)
    if sxx == 0.0 or syy == 0.0:
        raise ValueError("correlation undefined for a constant sequence")
    return sxy / math.sqrt(sxx * syy)


def _student_t_sf(t: float, df: int) -> float:
    """P(T > t) for Student's t with df degrees of freedom, t >= 0."""
    x = df / (df + t * t)
    return 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x)


def _rho(x: Sequence[float], y: Sequence[float]) -> float:
    return _pearson(average_ranks(x), average_ranks(y))


def spearman(x: Sequence[float], y: Sequence[float]) -> CorrelationResult:
    """Spearman rho with a two-sided t-approximate p-value at alpha = .05."""
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    n = len(x)
    if n < 3:
        raise ValueError(f"need at least 3 observations, got {n}")
    rho = _rho(x, y)
    rho = max(-1.0, min(1.0, rho))
    if abs(rho) >= 1.0:
        p = 0.0
    else:
        t = abs(rho) * math.sqrt((n - 2) / (1.0 - rho * rho))
        p = 2.0 * _student_t_sf(t, n - 2)
        p = min(1.0, p)
    return CorrelationResult(rho=rho, p_value=p, significant=p < ALPHA, n=n)


def spearman_exact_p(
    x: Sequence[float], y: Sequence[float], mid_p: bool = False
) -> float:
    """Two-sided permutation p-value, exact by full enumeration (n <= 10).

    With mid_p=True, configurations exactly as extreme as the observed rho
    count half, the usual mid-p correction for discrete null distributions.
    """
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    n = len(x)
    if n < 3:
        raise ValueError(f"need at least 3 observations, got {n}")
    if n > EXACT_MAX_N:
        raise ValueError(f"exact enumeration is limited to n <= {EXACT_MAX_N}")
    observed = abs(_rho(x, y))
    ranks_x = average_ranks(x)
    ranks_y = average_ranks(y)
    eps = 1e-12
    geq = 0
    gt = 0
    total = 0
    for perm in itertools.permutations(ranks_y):
        r = abs(_pearson(ranks_x, perm))
        if r >= observed - eps:
            geq += 1
            if r > observed + eps:
                gt += 1
        total += 1
    if mid_p:
        return (geq + gt) / (2.0 * total)
    return geq / total
