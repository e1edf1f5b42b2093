"""Repeated-seed statistics and wall-time scaling for the fast solver."""

from __future__ import annotations

import time

import numpy as np

from .io import GeneratorSpec, generate
from .solver import Fail, NoFeasible, solve_fast10


def _summary(xs):
    if not xs:
        return None
    a = np.asarray(xs, dtype=float)
    return {"min": float(a.min()), "median": float(np.median(a)), "max": float(a.max())}


def run_trials(inst, k, alpha, epsilon=0.5, delta=0.1, seeds=range(10), fair_radii=None):
    """Run the fast solver once per seed and summarize the outcomes.

    Fairness ratios are reported only when exact ``fair_radii`` are given.
    """
    costs, ratios, times = [], [], []
    fails = infeasible = 0
    for seed in seeds:
        t0 = time.perf_counter()
        res = solve_fast10(inst, k, alpha, epsilon, delta, seed, fair_radii=fair_radii)
        times.append(1e3 * (time.perf_counter() - t0))
        if isinstance(res, Fail):
            fails += 1
        elif isinstance(res, NoFeasible):
            infeasible += 1
        else:
            costs.append(res.cost)
            if res.fairness_ratios is not None:
                ratios.append(res.max_fairness_ratio)
    trials = len(times)
    return {
        "trials": trials,
        "success_rate": (trials - fails - infeasible) / trials if trials else None,
        "fail": fails,
        "no_feasible": infeasible,
        "cost": _summary(costs),
        "max_fairness_ratio": _summary(ratios),
        "wall_ms": _summary(times),
    }


def scaling_table(sizes=(500, 1000, 2000, 4000), k=5, alpha=2.0, epsilon=0.5, delta=0.1,
                  seed=0, repeats=3, dim=2):
    """Median fast-solver wall time per n on uniform instances.

    ``ratio`` is the time relative to the previous row; for doubling n a
    quadratic algorithm would show about 4.
    """
    rows = []
    prev = None
    for n in sizes:
        inst = generate(GeneratorSpec("uniform_box", n=n, dim=dim, seed=seed))
        runs = []
        for r in range(repeats):
            t0 = time.perf_counter()
            solve_fast10(inst, k, alpha, epsilon, delta, seed + r)
            runs.append(1e3 * (time.perf_counter() - t0))
        ms = float(np.median(runs))
        rows.append({"n": n, "wall_ms": ms, "ratio": None if prev is None else ms / prev})
        prev = ms
    return rows
