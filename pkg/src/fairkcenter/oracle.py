"""Brute-force ground truth for tiny instances."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .metric import MetricInstance, RadiusAssignment
from .radii import fair_rank

MAX_ORACLE_N = 20
_BATCH = 4096


@dataclass(frozen=True)
class OracleResult:
    feasible: bool
    optimal_cost: float
    optimal_centers: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "optimal_cost": self.optimal_cost if math.isfinite(self.optimal_cost) else None,
            "optimal_centers": [list(c) for c in self.optimal_centers],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OracleResult":
        cost = math.inf if d["optimal_cost"] is None else float(d["optimal_cost"])
        return cls(bool(d["feasible"]), cost, [tuple(c) for c in d["optimal_centers"]])


def brute_fair_radii(inst: MetricInstance, k: int) -> RadiusAssignment:
    """Fairness radii by fully sorting every distance row."""
    m = fair_rank(inst.n, k)
    rows = np.sort(inst.full_matrix(), axis=1)
    return RadiusAssignment(rows[:, m - 1], "exact")


def _enumerate(inst, k, limit=None):
    if inst.n > MAX_ORACLE_N:
        raise ValueError(f"oracle is limited to n <= {MAX_ORACLE_N}, got n={inst.n}")
    if not 1 <= k:
        raise ValueError("k must be a positive integer")
    D = inst.full_matrix()
    best = math.inf
    winners: list = []
    for size in range(1, min(k, inst.n) + 1):
        combos = itertools.combinations(range(inst.n), size)
        while True:
            chunk = list(itertools.islice(combos, _BATCH))
            if not chunk:
                break
            C = np.array(chunk, dtype=np.intp)
            # nearest[b, p] = d(p, C_b)
            nearest = D[:, C].min(axis=2).T
            ok = np.ones(len(chunk), dtype=bool) if limit is None else np.all(nearest <= limit, axis=1)
            if not ok.any():
                continue
            costs = nearest[ok].max(axis=1)
            lo = costs.min()
            if lo < best:
                best, winners = lo, []
            if lo == best:
                kept = C[ok][costs == best]
                winners.extend(tuple(int(x) for x in row) for row in kept)
    if not winners:
        return OracleResult(False, math.inf, [])
    return OracleResult(True, float(best), sorted(winners, key=lambda c: (len(c), c)))


def brute_fair_kcenter(inst: MetricInstance, k: int, alpha: float) -> OracleResult:
    """Optimal alpha-fair k-center cost and all optimal center sets (size <= k)."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if inst.n > MAX_ORACLE_N:
        raise ValueError(f"oracle is limited to n <= {MAX_ORACLE_N}, got n={inst.n}")
    return _enumerate(inst, k, limit=alpha * brute_fair_radii(inst, k).values)


def brute_kcenter(inst: MetricInstance, k: int) -> OracleResult:
    """Optimal unconstrained k-center cost and all optimal center sets."""
    if not 1 <= k <= inst.n:
        raise ValueError(f"need 1 <= k <= n (n={inst.n}, k={k})")
    return _enumerate(inst, k)
