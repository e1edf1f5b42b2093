"""Bicriteria approximation algorithms for individually fair k-center."""

from .metric import MetricInstance, RadiusAssignment, ball_count, distance
from .oracle import OracleResult, brute_fair_kcenter, brute_fair_radii, brute_kcenter
from .radii import (ApproxRadiiResult, SamplingParams, approx_fair_radii, exact_fair_radii,
                    exact_fair_radius, fair_sampling)
from .selection import kth_smallest
from .solver import (CostCandidateList, Fail, FairCenterParams, NoFeasible, Solution,
                     binary_search_cost, cost_candidates, fair_center, fairness_ratios,
                     gonzalez, solve_exact22, solve_fast10)

__version__ = "0.1.0"
