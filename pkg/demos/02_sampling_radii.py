"""
Estimating fairness radii from a sample
=======================================

Exact radii cost O(n^2).  A uniform sample of size O(k log(n/delta))
brackets every radius between r_3k and r_k, and a second pass turns those
brackets into radii within a factor 5 while computing only O(k) radii
exactly.
"""

import numpy as np

from fairkcenter import SamplingParams, approx_fair_radii, exact_fair_radii, fair_sampling
from fairkcenter.io import GeneratorSpec, generate

n, k, delta = 600, 5, 0.1
inst = generate(GeneratorSpec("uniform_box", n=n, dim=2, seed=0))
params = SamplingParams.from_problem(n, k, delta)
print(f"sample size s={params.s}, rank t={params.t}")

r_k = exact_fair_radii(inst, k).values
r_3k = exact_fair_radii(inst, 3 * k).values

###############################################################################
# How often does the sample bracket every point at once?
hits = 0
for seed in range(200):
    est = fair_sampling(inst, k, delta, seed).values
    hits += np.all((r_3k < est) & (est <= r_k))
print(f"all points bracketed in {hits}/200 seeds (guaranteed rate >= {1 - delta:.0%})")

###############################################################################
# The approximation pass: most points borrow a radius from a nearby point
# whose radius was computed exactly.
res = approx_fair_radii(inst, k, delta, seed=0)
ratio = res.radii.values / r_k
print(f"exact computations: {res.exact_computations} (limit 3k = {3 * k})")
print(f"approx / exact: min {ratio.min():.3f}, median {np.median(ratio):.3f}, max {ratio.max():.3f}")
