"""Crowd-reliability analysis: agreement buckets and smoothed Beta posteriors.

Rewrites rated by exactly three crowd workers fall into buckets 0..3 by how
many of those ratings are correct. Within each bucket, expert verdicts give
k successes out of n; with a uniform prior the expert-correct proportion has
posterior Beta(k+1, n-k+1). One-sided quantiles of that posterior bound how
often an expert would agree with the bucket's crowd consensus.

The regularized incomplete beta function is evaluated with the standard
continued-fraction expansion; quantiles invert it by bisection.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Sequence

from .ratings import RatingRecord, is_correct

N_CROWD_RATERS = 3
_CF_MAX_ITER = 300
_CF_EPS = 3e-16
_CF_TINY = 1e-300
QUANTILE_TOL = 1e-9


def _beta_cf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta function (Lentz's method)."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            break
    return h


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b), the CDF of Beta(a, b) at x."""
    if a <= 0 or b <= 0:
        raise ValueError("shape parameters must be positive")
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def beta_pdf(x: float, a: float, b: float) -> float:
    if a <= 0 or b <= 0:
        raise ValueError("shape parameters must be positive")
    if x < 0.0 or x > 1.0:
        return 0.0
    ln_norm = math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
    if x == 0.0:
        if a < 1:
            return math.inf
        return math.exp(ln_norm) if a == 1 else 0.0
    if x == 1.0:
        if b < 1:
            return math.inf
        return math.exp(ln_norm) if b == 1 else 0.0
    return math.exp(ln_norm + (a - 1.0) * math.log(x) + (b - 1.0) * math.log1p(-x))


def beta_quantile_ab(q: float, a: float, b: float) -> float:
    """Inverse of I_x(a, b) by bisection to absolute tolerance 1e-9 on x."""
    if not 0.0 < q < 1.0:
        raise ValueError(f"quantile level must lie strictly in (0, 1), got {q}")
    lo, hi = 0.0, 1.0
    while hi - lo > QUANTILE_TOL:
        mid = (lo + hi) / 2.0
        if regularized_incomplete_beta(a, b, mid) < q:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


@dataclass(frozen=True)
class BetaFit:
    """Posterior over the expert-correct proportion in one agreement bucket."""

    alpha: float
    beta: float
    bucket: int
    support_count: int
    success_count: int

    def __post_init__(self):
        if not 0 <= self.bucket <= N_CROWD_RATERS:
            raise ValueError(f"bucket must be in 0..{N_CROWD_RATERS}, got {self.bucket}")
        if not 0 <= self.success_count <= self.support_count:
            raise ValueError("need 0 <= successes <= support")
        if self.alpha != self.success_count + 1 or self.beta != (
            self.support_count - self.success_count + 1
        ):
            raise ValueError("expected the smoothed posterior Beta(k+1, n-k+1)")

    @classmethod
    def from_counts(cls, bucket: int, support: int, successes: int) -> "BetaFit":
        return cls(
            alpha=successes + 1,
            beta=support - successes + 1,
            bucket=bucket,
            support_count=support,
            success_count=successes,
        )

    def mean(self) -> float:
        return self.alpha / (self.alpha + self.beta)

    def pdf(self, x: float) -> float:
        return beta_pdf(x, self.alpha, self.beta)

    def cdf(self, x: float) -> float:
        return regularized_incomplete_beta(self.alpha, self.beta, x)

    def quantile(self, q: float) -> float:
        return beta_quantile_ab(q, self.alpha, self.beta)


def beta_quantile(fit: BetaFit, q: float) -> float:
    return fit.quantile(q)


def bucket_and_fit(
    crowd: Sequence[RatingRecord], expert: Mapping[str, bool]
) -> list[BetaFit]:
    """Group crowd ratings by rewrite, bucket expert-rated rewrites, fit posteriors.

    Every rewrite in the crowd set must carry exactly three ratings; expert
    verdicts must reference known rewrites and select the bucketed subset.
    """
    groups: dict[str, list[RatingRecord]] = defaultdict(list)
    for record in crowd:
        groups[record.rewrite_id].append(record)
    for rewrite_id, records in groups.items():
        if len(records) != N_CROWD_RATERS:
            raise ValueError(
                f"rewrite {rewrite_id!r} has {len(records)} crowd ratings, "
                f"expected {N_CROWD_RATERS}"
            )
    unknown = sorted(set(expert) - set(groups))
    if unknown:
        raise ValueError(f"expert verdicts reference unknown rewrites: {unknown}")

    support = [0] * (N_CROWD_RATERS + 1)
    successes = [0] * (N_CROWD_RATERS + 1)
    for rewrite_id, verdict in expert.items():
        bucket = sum(is_correct(r) for r in groups[rewrite_id])
        support[bucket] += 1
        successes[bucket] += bool(verdict)
    return [
        BetaFit.from_counts(bucket, support[bucket], successes[bucket])
        for bucket in range(N_CROWD_RATERS + 1)
    ]
