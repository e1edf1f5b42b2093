"""
Fair k-center on four points
============================

Points 0, 1, 2 and 10 on a line, k = 2.  We compute fairness radii, run the
greedy selection by hand-sized steps, and compare the deterministic solver
against the brute-force optimum.
"""

import numpy as np

from fairkcenter import (FairCenterParams, MetricInstance, brute_fair_kcenter, exact_fair_radii,
                         fair_center, gonzalez, solve_exact22)

inst = MetricInstance.from_points([0.0, 1.0, 2.0, 10.0])
k, alpha = 2, 1.0

###############################################################################
# Each point's fairness radius is the distance to its ceil(n/k) = 2nd nearest
# point (itself first).  The outlier at 10 gets a radius of 8.
radii = exact_fair_radii(inst, k)
print("r_2 =", radii.values)

###############################################################################
# The greedy opens a center whenever a point is farther than
# 2 * min(alpha * r(p), cost_guess) from every open center.  With a cost guess
# of 1 the outlier is forced to open its own center.
for guess in (1.0, np.inf):
    sol = fair_center(inst, FairCenterParams(k, alpha, guess, radii))
    print(f"cost guess {guess}: centers {sol.centers}, cost {sol.cost}")

###############################################################################
# The solver searches the pairwise distances for the smallest guess that
# opens at most k centers.  Its cost is within 2x of the fair optimum and every
# point is within 2 * alpha * r_2 of a center.
sol = solve_exact22(inst, k, alpha)
opt = brute_fair_kcenter(inst, k, alpha)
print("exact22:", sol.centers, "cost", sol.cost, "max ratio", sol.max_fairness_ratio)
print("optimum:", opt.optimal_cost, "attained by", opt.optimal_centers)

###############################################################################
# Unconstrained farthest-first traversal happens to agree here.
print("gonzalez:", gonzalez(inst, k).centers)
