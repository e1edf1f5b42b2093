"""Fair k-center solvers.

``fair_center`` is the greedy primitive: scan points by increasing radius
and open a center whenever the current point is farther than
``2 * min(alpha * r(p), delta_cost)`` from all open centers.  The two
drivers search for the smallest cost guess at which the greedy opens at
most k centers:

* :func:`solve_exact22` uses exact radii and every pairwise distance as a
  candidate (deterministic, quadratic time).
* :func:`solve_fast10` uses sampled 5-approximate radii and a short list of
  candidates derived from a Gonzalez solution (randomized, near-linear).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .metric import MetricInstance, RadiusAssignment
from .radii import approx_fair_radii, exact_fair_radii
from .selection import kth_smallest


@dataclass(frozen=True)
class FairCenterParams:
    k: int
    alpha: float
    delta_cost: float
    radii: RadiusAssignment

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if not self.delta_cost >= 0:
            raise ValueError("delta_cost must be non-negative (inf allowed)")


@dataclass(frozen=True, eq=False)
class Solution:
    centers: tuple
    cost: float
    fairness_ratios: Optional[np.ndarray] = None
    meta: dict = field(default_factory=dict)

    @property
    def max_fairness_ratio(self) -> Optional[float]:
        if self.fairness_ratios is None:
            return None
        return float(self.fairness_ratios.max())

    def with_ratios(self, inst: MetricInstance, fair_radii: RadiusAssignment) -> "Solution":
        return replace(self, fairness_ratios=fairness_ratios(inst, self.centers, fair_radii))


@dataclass(frozen=True, eq=False)
class Fail:
    """Sampling detected its own failure; rerun with another seed."""

    meta: dict = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class NoFeasible:
    """No candidate cost admitted a greedy solution with at most k centers."""

    meta: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CostCandidateList:
    values: np.ndarray
    epsilon: float

    def __len__(self):
        return self.values.shape[0]


def fairness_ratios(inst: MetricInstance, centers, fair_radii: RadiusAssignment) -> np.ndarray:
    """d(p, C) / r_k(p) per point, with 0/0 -> 0 and x/0 -> inf."""
    fair_radii.check_length(inst.n)
    d = inst.dist_to_set(centers)
    r = fair_radii.values
    with np.errstate(divide="ignore", invalid="ignore"):
        out = d / r
    out[(r == 0) & (d == 0)] = 0.0
    out[(r == 0) & (d > 0)] = np.inf
    return out


def make_solution(inst, centers, fair_radii=None, **meta) -> Solution:
    centers = tuple(int(c) for c in centers)
    cost = float(inst.dist_to_set(centers).max()) if centers else math.inf
    ratios = None if fair_radii is None else fairness_ratios(inst, centers, fair_radii)
    return Solution(centers, cost, ratios, dict(meta))


def _greedy(inst, order, thresholds, limit=None) -> list:
    """Centers opened by the fair_center scan; stops once more than ``limit``."""
    thr = thresholds[order]
    nearest = np.full(inst.n, np.inf)
    centers = []
    pos = 0
    while pos < inst.n:
        open_ = np.flatnonzero(nearest[pos:] > thr[pos:])
        if open_.size == 0:
            break
        j = pos + int(open_[0])
        c = int(order[j])
        centers.append(c)
        if limit is not None and len(centers) > limit:
            break
        np.minimum(nearest, inst.row(c)[order], out=nearest)
        pos = j + 1
    return centers


def _scan_setup(inst, alpha, radii):
    radii.check_length(inst.n)
    r = radii.values
    order = np.argsort(r, kind="stable")
    return order, alpha * r


def fair_center(inst: MetricInstance, params: FairCenterParams) -> Solution:
    """Greedy center selection with threshold 2 * min(alpha * r(p), delta_cost).

    Returns the opened centers in insertion order.  Every point ends within
    its threshold of some center; when ``r >= r_k`` pointwise and an
    alpha-fair solution of cost at most ``delta_cost`` exists, at most k
    centers are opened.
    """
    order, scaled = _scan_setup(inst, params.alpha, params.radii)
    thresholds = 2.0 * np.minimum(scaled, params.delta_cost)
    centers = _greedy(inst, order, thresholds)
    return make_solution(
        inst, centers, algorithm="fair_center", k=params.k, alpha=params.alpha,
        delta_cost=params.delta_cost,
    )


def gonzalez(inst: MetricInstance, k: int) -> Solution:
    """Farthest-first traversal from point 0; ties go to the lowest index."""
    if not 1 <= k <= inst.n:
        raise ValueError(f"need 1 <= k <= n (n={inst.n}, k={k})")
    centers = [0]
    nearest = inst.row(0).copy()
    for _ in range(k - 1):
        cand = nearest.copy()
        cand[centers] = -1.0
        c = int(np.argmax(cand))
        centers.append(c)
        np.minimum(nearest, inst.row(c), out=nearest)
    return Solution(tuple(centers), float(nearest.max()), None, {"algorithm": "gonzalez", "k": k})


def _grid_length(base: float, target: float) -> int:
    """Smallest j >= 1 with base**j >= target."""
    j = max(1, math.ceil(math.log(target) / math.log(base)))
    while j > 1 and base ** (j - 1) >= target:
        j -= 1
    while base**j < target:
        j += 1
    return j


def candidate_bound(k: int, epsilon: float) -> int:
    """Upper bound on the number of cost candidates."""
    base = 1.0 + epsilon
    return _grid_length(base, 16.0) + (k * (k - 1) // 2) * _grid_length(base, 4.0)


def cost_candidates(inst: MetricInstance, k: int, epsilon: float) -> CostCandidateList:
    """Geometric grids around the Gonzalez cost and center-pair distances.

    When a feasible alpha-fair solution exists, some value lies within
    ``[opt, (1 + epsilon) * opt]``.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    g = gonzalez(inst, k)
    base = 1.0 + epsilon
    steps16 = 0.5 * base ** np.arange(1, _grid_length(base, 16.0) + 1)
    steps4 = 0.5 * base ** np.arange(1, _grid_length(base, 4.0) + 1)
    parts = [steps16 * g.cost]
    cs = list(g.centers)
    if len(cs) > 1:
        iu, ju = np.triu_indices(len(cs), 1)
        D = inst.block(cs, cs)
        parts.append((D[iu, ju][:, None] * steps4[None, :]).ravel())
    return CostCandidateList(np.unique(np.concatenate(parts)), epsilon)


def _search_selection(values, feasible):
    best = None
    while values.size:
        m = kth_smallest(values, (values.size + 1) // 2)
        centers = feasible(m)
        if centers is not None:
            best = (m, centers)
            values = values[values < m]
        else:
            values = values[values > m]
    return best


def _search_sorted(values, feasible):
    a = np.sort(values)
    lo, hi = 0, a.size
    best = None
    while lo < hi:
        m = float(a[lo + (hi - lo + 1) // 2 - 1])
        centers = feasible(m)
        if centers is not None:
            best = (m, centers)
            hi = int(np.searchsorted(a[:hi], m, side="left"))
        else:
            lo = int(np.searchsorted(a[:hi], m, side="right"))
    return best


def binary_search_cost(
    inst: MetricInstance,
    k: int,
    alpha: float,
    radii: RadiusAssignment,
    candidates: Sequence[float],
    mode: str = "selection",
):
    """Smallest visited cost guess at which ``fair_center`` opens <= k centers.

    Each probe takes the lower median of the remaining candidates.  If the
    greedy opens at most k centers the probe is recorded and the search
    continues below it, otherwise above it.  ``mode="selection"`` finds
    medians by linear-time selection on the shrinking candidate set without
    sorting; ``mode="sort"`` sorts once and bisects.  Both visit the same
    probes.

    Returns:
      ``(delta_cost, Solution)``, or None when no probe succeeded.
    """
    values = np.asarray(candidates, dtype=np.float64).ravel()
    if values.size == 0:
        raise ValueError("candidate list is empty")
    if np.isnan(values).any() or np.any(values < 0):
        raise ValueError("candidates must be non-negative numbers")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    order, scaled = _scan_setup(inst, alpha, radii)

    def feasible(delta_cost):
        centers = _greedy(inst, order, 2.0 * np.minimum(scaled, delta_cost), limit=k)
        return centers if len(centers) <= k else None

    if mode == "selection":
        found = _search_selection(values, feasible)
    elif mode == "sort":
        found = _search_sorted(values, feasible)
    else:
        raise ValueError(f"unknown search mode {mode!r}")
    if found is None:
        return None
    delta_cost, centers = found
    sol = make_solution(inst, centers, algorithm="fair_center", k=k, alpha=alpha, delta_cost=delta_cost)
    return delta_cost, sol


def _pad(inst, centers, k):
    taken = set(centers)
    extra = [p for p in range(inst.n) if p not in taken][: max(0, k - len(centers))]
    return list(centers) + extra


def _check_common(inst, k, alpha):
    if not 1 <= k <= inst.n:
        raise ValueError(f"need 1 <= k <= n (n={inst.n}, k={k})")
    if not alpha > 0:
        raise ValueError("alpha must be positive")


def solve_exact22(inst: MetricInstance, k: int, alpha: float, *, pad_to_k: bool = False):
    """Deterministic bicriteria solver: cost <= 2 opt, d(p, C) <= 2 alpha r_k(p).

    Returns a :class:`Solution` (with fairness ratios against the exact
    radii) or :class:`NoFeasible`, which certifies that no alpha-fair set of
    at most k centers exists.
    """
    _check_common(inst, k, alpha)
    radii = exact_fair_radii(inst, k)
    candidates = np.concatenate([[0.0], inst.pairwise_distances()])
    meta = dict(algorithm="exact22", k=k, alpha=alpha, radii_mode="exact",
                exact_radius_computations=inst.n, delegated=False)
    found = binary_search_cost(inst, k, alpha, radii, candidates, mode="selection")
    if found is None:
        return NoFeasible(meta)
    delta_cost, sol = found
    centers = _pad(inst, sol.centers, k) if pad_to_k else sol.centers
    return make_solution(inst, centers, radii, delta_cost=delta_cost, **meta)


def solve_fast10(
    inst: MetricInstance,
    k: int,
    alpha: float,
    epsilon: float = 0.5,
    delta: float = 0.1,
    seed: int = 0,
    *,
    pad_to_k: bool = False,
    fair_radii: Optional[RadiusAssignment] = None,
):
    """Randomized bicriteria solver: cost <= (2 + eps) opt, d(p, C) <= 10 alpha r_k(p).

    Guarantees hold with probability at least ``1 - delta``.  Falls back to
    :func:`solve_exact22` when ``k > n/6`` or ``k^2/eps > n^2 ln n``.

    Args:
      fair_radii: exact radii used only to fill ``fairness_ratios``; the
        solver itself never computes them on the fast path.

    Returns:
      :class:`Solution`, :class:`Fail` (bad sample detected), or
      :class:`NoFeasible`.
    """
    _check_common(inst, k, alpha)
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    n = inst.n
    meta = dict(algorithm="fast10", k=k, alpha=alpha, epsilon=epsilon, delta=delta, seed=seed)
    if 6 * k > n or k * k / epsilon > n * n * math.log(n):
        res = solve_exact22(inst, k, alpha, pad_to_k=pad_to_k)
        meta.update(radii_mode="exact", exact_radius_computations=n, delegated=True)
        if isinstance(res, NoFeasible):
            return NoFeasible(meta)
        return replace(res, meta={**res.meta, **meta})

    approx = approx_fair_radii(inst, k, delta, seed)
    meta.update(radii_mode="approx", exact_radius_computations=approx.exact_computations,
                delegated=False)
    if approx.failed:
        return Fail(meta)
    cands = cost_candidates(inst, k, epsilon / 2)
    found = binary_search_cost(inst, k, alpha, approx.radii, cands.values, mode="sort")
    if found is None:
        return NoFeasible(meta)
    delta_cost, sol = found
    centers = _pad(inst, sol.centers, k) if pad_to_k else sol.centers
    return make_solution(inst, centers, fair_radii, delta_cost=delta_cost,
                         n_candidates=len(cands), **meta)
