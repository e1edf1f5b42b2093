"""
Fast versus exact solver
========================

The randomized solver replaces exact radii by sampled ones and the n^2
candidate costs by a short list built from a Gonzalez solution.  We compare
cost, fairness and wall time, then look at how the fast solver scales.
"""

import time

from fairkcenter import exact_fair_radii, solve_exact22, solve_fast10
from fairkcenter.bench import run_trials, scaling_table
from fairkcenter.io import GeneratorSpec, generate

k, alpha = 5, 2.0
inst = generate(GeneratorSpec("gaussian_blobs", n=1500, dim=2, blobs=8, seed=3))

t0 = time.perf_counter()
exact = solve_exact22(inst, k, alpha)
t_exact = time.perf_counter() - t0
print(f"exact22: cost {exact.cost:.4f}, max ratio / alpha {exact.max_fairness_ratio / alpha:.3f}, "
      f"{t_exact:.2f}s")

###############################################################################
# Twenty seeds of the fast solver; ratios are measured against exact radii.
stats = run_trials(inst, k, alpha, epsilon=0.5, delta=0.1, seeds=range(20),
                   fair_radii=exact_fair_radii(inst, k))
print("fast10 success rate:", stats["success_rate"])
print("fast10 cost:", stats["cost"])
print("fast10 max ratio:", stats["max_fairness_ratio"])
print("fast10 wall ms:", stats["wall_ms"])

###############################################################################
# Doubling n should roughly double the time (a quadratic method would be ~4x).
for row in scaling_table((500, 1000, 2000, 4000), k=k, alpha=alpha):
    ratio = "" if row["ratio"] is None else f"x{row['ratio']:.2f}"
    print(f"n={row['n']:5d}  {row['wall_ms']:8.1f} ms  {ratio}")
