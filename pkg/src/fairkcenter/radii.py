"""Fairness radii: exact computation, sampling estimate, 5-approximation.

The k-fair radius of ``p`` is the distance from ``p`` to its
``ceil(n/k)``-th nearest point, ``p`` itself included.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .metric import MetricInstance, RadiusAssignment
from .selection import kth_smallest

# points per distance block when scanning against the sample
_CHUNK = 512


def fair_rank(n: int, k: int) -> int:
    """ceil(n / k): the neighbor rank defining the k-fair radius."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return -(-n // k)


def exact_fair_radius(inst: MetricInstance, p: int, k: int) -> float:
    if k < 1:
        raise ValueError("k must be a positive integer")
    if not 0 <= p < inst.n:
        raise IndexError(f"point index {p} out of range for n={inst.n}")
    return kth_smallest(inst.row(p), fair_rank(inst.n, k))


def exact_fair_radii(inst: MetricInstance, k: int) -> RadiusAssignment:
    """Exact k-fair radius of every point, O(n^2) expected time."""
    m = fair_rank(inst.n, k)
    vals = np.empty(inst.n)
    for p in range(inst.n):
        vals[p] = kth_smallest(inst.row(p), m)
    return RadiusAssignment(vals, "exact")


@dataclass(frozen=True)
class SamplingParams:
    s: int
    t: int
    seed: int = 0

    def __post_init__(self):
        if self.s < 1 or self.t < 1 or self.t > self.s:
            raise ValueError(f"need 1 <= t <= s, got s={self.s}, t={self.t}")

    @classmethod
    def from_problem(cls, n: int, k: int, delta: float, seed: int = 0) -> "SamplingParams":
        if not 0 < delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        log_term = math.ceil(math.log(2 * n / delta))
        return cls(s=36 * k * log_term, t=27 * log_term, seed=seed)


def _check_k(n: int, k: int, allow_large_k: bool) -> None:
    if k < 1:
        raise ValueError("k must be a positive integer")
    if 6 * k > n and not allow_large_k:
        raise ValueError(f"sampling requires k <= n/6 (n={n}, k={k})")


def fair_sampling(
    inst: MetricInstance,
    k: int,
    delta: float,
    seed: int = 0,
    *,
    sample=None,
    t: Optional[int] = None,
    allow_large_k: bool = False,
) -> RadiusAssignment:
    """Estimate fairness radii from a uniform sample drawn with replacement.

    Each point gets the distance to its t-th nearest sample, ranks taken over
    the multiset of sample distances.  With probability at least 1 - delta
    every estimate lies in (r_{3k}(p), r_k(p)].

    ``sample`` and ``t`` override the drawn sample and rank; they exist so
    tests can pin the mechanics and are not used by the solvers.
    """
    _check_k(inst.n, k, allow_large_k)
    params = SamplingParams.from_problem(inst.n, k, delta, seed)
    if sample is None:
        rng = np.random.default_rng(seed)
        sample = rng.integers(0, inst.n, size=params.s)
    sample = np.asarray(sample, dtype=np.intp)
    t = params.t if t is None else t
    if not 1 <= t <= sample.size:
        raise ValueError(f"rank t={t} out of range for a sample of size {sample.size}")
    out = np.empty(inst.n)
    for start in range(0, inst.n, _CHUNK):
        rows = np.arange(start, min(start + _CHUNK, inst.n))
        D = inst.block(rows, sample)
        out[rows] = np.partition(D, t - 1, axis=1)[:, t - 1]
    return RadiusAssignment(out, "sampled")


@dataclass(frozen=True)
class ApproxRadiiResult:
    """Outcome of :func:`approx_fair_radii`.

    ``radii`` is None when the run failed (more than 3k exact computations
    would have been needed, which signals a bad sample).
    """

    radii: Optional[RadiusAssignment]
    exact_set: tuple
    exact_computations: int
    sampled: RadiusAssignment

    @property
    def failed(self) -> bool:
        return self.radii is None

    @property
    def exact_set_size(self) -> int:
        return len(self.exact_set)


def approx_fair_radii(
    inst: MetricInstance,
    k: int,
    delta: float,
    seed: int = 0,
    *,
    sampled: Optional[RadiusAssignment] = None,
    allow_large_k: bool = False,
) -> ApproxRadiiResult:
    """Radii within a factor 5 of the exact k-fair radii, or a failure flag.

    Points are scanned by increasing sampled radius.  A point whose sampled
    ball meets the ball of an already exact point q inherits
    ``d(p, q) + radius(q)``; otherwise its radius is computed exactly and it
    joins the exact set.  The run fails once the exact set exceeds 3k.

    Args:
      sampled: injected sampled radii (tests only); drawn with
        :func:`fair_sampling` otherwise.
    """
    _check_k(inst.n, k, allow_large_k)
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if sampled is None:
        sampled = fair_sampling(inst, k, delta, seed, allow_large_k=allow_large_k)
    sampled.check_length(inst.n)
    rp = sampled.values
    order = np.argsort(rp, kind="stable")

    approx = np.empty(inst.n)
    exact: list[int] = []
    exact_rp: list[float] = []
    for p in order:
        p = int(p)
        if exact:
            d = inst.block([p], exact)[0]
            hit = np.flatnonzero(rp[p] + np.asarray(exact_rp) >= d)
            if hit.size:
                q = hit[0]
                approx[p] = d[q] + approx[exact[q]]
                continue
        approx[p] = exact_fair_radius(inst, p, k)
        exact.append(p)
        exact_rp.append(rp[p])
        if len(exact) > 3 * k:
            return ApproxRadiiResult(None, tuple(exact), len(exact), sampled)
    return ApproxRadiiResult(RadiusAssignment(approx, "approx"), tuple(exact), len(exact), sampled)
