"""Acceptance criteria, one test each.

Fairness guarantees are stated as multiples of alpha: a set is
gamma-fair when d(p, C) <= gamma * alpha * r_k(p), so the checked quantity
is ``max_fairness_ratio / alpha``.
"""

import math
import time

import numpy as np
import pytest

from fairkcenter import (FairCenterParams, Fail, NoFeasible, Solution, approx_fair_radii,
                         binary_search_cost, brute_fair_kcenter, brute_fair_radii, brute_kcenter,
                         cost_candidates, exact_fair_radii, fair_center, fair_sampling, gonzalez,
                         solve_exact22, solve_fast10)
from fairkcenter.bench import scaling_table
from fairkcenter.io import GeneratorSpec, generate
from fairkcenter.solver import candidate_bound

from instances import random_instance, tiny_cases

TOL = 1e-9
N_BIG, K_BIG, DELTA = 600, 5, 0.1


@pytest.fixture(scope="module")
def tiny():
    """300 small instances with their fair optimum."""
    cases = tiny_cases(300, seed=2024)
    return [(inst, k, alpha, brute_fair_kcenter(inst, k, alpha)) for inst, k, alpha in cases]


@pytest.fixture(scope="module")
def big():
    inst = generate(GeneratorSpec("uniform_box", n=N_BIG, dim=2, seed=0))
    d = inst.pairwise_distances()
    assert np.unique(d).size == d.size  # distinct pairwise distances
    return inst, exact_fair_radii(inst, K_BIG).values, exact_fair_radii(inst, 3 * K_BIG).values


def test_c01_exact_radii_match_oracle(record_criterion):
    rng = np.random.default_rng(1)
    t0 = time.perf_counter()
    mismatches = 0
    for i in range(1000):
        n = int(rng.integers(2, 51))
        kind = "duplicate_heavy" if i % 5 == 0 else None
        inst = random_instance(rng, n, kind)
        k = int(rng.integers(1, n + 1))
        if not np.array_equal(exact_fair_radii(inst, k).values, brute_fair_radii(inst, k).values):
            mismatches += 1
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < 60
    record_criterion("1 exact radii == brute force (1000 instances)", ok,
                     f"mismatches={mismatches}, {elapsed:.1f}s")
    assert ok


def test_c02_exact22_guarantee(tiny, record_criterion):
    t0 = time.perf_counter()
    violations = []
    for idx, (inst, k, alpha, opt) in enumerate(tiny):
        res = solve_exact22(inst, k, alpha)
        if isinstance(res, NoFeasible):
            if opt.feasible:
                violations.append((idx, "NoFeasible on feasible instance"))
            continue
        if opt.feasible:
            if len(res.centers) > k:
                violations.append((idx, "size"))
            if res.cost > 2 * opt.optimal_cost + TOL:
                violations.append((idx, "cost"))
            if res.max_fairness_ratio / alpha > 2 + TOL:
                violations.append((idx, "fairness"))
    elapsed = time.perf_counter() - t0
    ok = not violations and elapsed < 120
    record_criterion("2 (2,2) guarantee vs oracle (300 instances)", ok,
                     f"violations={violations[:5]}, {elapsed:.1f}s")
    assert ok


def test_c03_fair_center_size_lemma(tiny, record_criterion):
    size_bad = sep_bad = checked = 0
    for inst, k, alpha, opt in tiny:
        r = exact_fair_radii(inst, k)
        cands = np.unique(np.concatenate([[0.0], inst.pairwise_distances()]))
        for delta_cost in cands:
            sol = fair_center(inst, FairCenterParams(k, alpha, float(delta_cost), r))
            C = list(sol.centers)
            ball = np.minimum(alpha * r.values[C], delta_cost)
            D = inst.block(C, C)
            iu, ju = np.triu_indices(len(C), 1)
            if np.any(D[iu, ju] <= ball[iu] + ball[ju]) or np.any(D[iu, ju] <= 2 * ball[ju]):
                sep_bad += 1
            if opt.feasible and delta_cost >= opt.optimal_cost:
                checked += 1
                size_bad += len(C) > k
    ok = size_bad == 0 and sep_bad == 0
    record_criterion("3 FairCenter size lemma + disjoint balls", ok,
                     f"{checked} (instance, cost) pairs checked, size violations={size_bad}, "
                     f"separation violations={sep_bad}")
    assert ok


def test_c04_cost_candidate_coverage(tiny, record_criterion):
    missed = oversize = checked = 0
    for inst, k, alpha, opt in tiny:
        if not opt.feasible:
            continue
        for eps in (0.25, 0.5, 1.0):
            L = cost_candidates(inst, k, eps).values
            checked += 1
            lo, hi = opt.optimal_cost, (1 + eps) * opt.optimal_cost
            if not np.any((L >= lo - TOL) & (L <= hi + TOL)):
                missed += 1
            bound = (math.ceil(math.log(16) / math.log(1 + eps) - 1e-12)
                     + (k * (k - 1) // 2) * math.ceil(math.log(4) / math.log(1 + eps) - 1e-12))
            assert bound == candidate_bound(k, eps)
            oversize += L.size > bound
    ok = missed == 0 and oversize == 0
    record_criterion("4 cost candidates cover the optimum", ok,
                     f"{checked} checks, missed={missed}, size-bound violations={oversize}")
    assert ok


def test_c05_sampling_window(big, record_criterion):
    inst, rk, r3k = big
    t0 = time.perf_counter()
    successes = 0
    for seed in range(1000):
        rp = fair_sampling(inst, K_BIG, DELTA, seed).values
        successes += bool(np.all((r3k < rp) & (rp <= rk)))
    elapsed = time.perf_counter() - t0
    ok = successes >= 900 and elapsed < 300
    record_criterion("5 sampled radii in (r_3k, r_k] for all points", ok,
                     f"{successes}/1000 seeds, {elapsed:.1f}s")
    assert ok


def test_c06_approx_radii_factor_five(big, record_criterion):
    inst, rk, _ = big
    fails = bad = 0
    worst = 0.0
    for seed in range(100):
        res = approx_fair_radii(inst, K_BIG, DELTA, seed)
        if res.failed:
            fails += 1
            continue
        v = res.radii.values
        worst = max(worst, float(np.max(v / rk)))
        if np.any(v < rk) or np.any(v > 5 * rk) or res.exact_set_size > 3 * K_BIG:
            bad += 1
    ok = bad == 0 and fails <= 10
    record_criterion("6 approximate radii within [r_k, 5 r_k]", ok,
                     f"fails={fails}/100, violating runs={bad}, worst ratio={worst:.3f}")
    assert ok


def test_c07a_fast10_against_oracle(record_criterion):
    k, alpha, eps = 2, 2.0, 1.0
    bad = fails = 0
    for seed in range(100):
        inst = generate(GeneratorSpec("uniform_box", n=12, dim=2, seed=seed))
        opt = brute_fair_kcenter(inst, k, alpha)
        assert opt.feasible
        res = solve_fast10(inst, k, alpha, eps, DELTA, seed, fair_radii=exact_fair_radii(inst, k))
        if isinstance(res, Solution):
            assert not res.meta["delegated"]
            if (len(res.centers) > k or res.cost > (2 + eps) * opt.optimal_cost + TOL
                    or res.max_fairness_ratio / alpha > 10 + TOL):
                bad += 1
        else:
            fails += 1
    ok = bad + fails <= 10
    record_criterion("7a fast10 vs oracle at n=12", ok,
                     f"violations={bad}, Fail/NoFeasible={fails} (of 100)")
    assert ok


def test_c07b_fast10_surrogate_at_scale(big, record_criterion):
    inst, rk, _ = big
    alpha, eps = 2.0, 0.5
    ref = solve_exact22(inst, K_BIG, alpha)
    good = 0
    for seed in range(50):
        res = solve_fast10(inst, K_BIG, alpha, eps, DELTA, seed)
        good += isinstance(res, Solution) and len(res.centers) <= K_BIG and \
            res.cost <= (2 + eps) * ref.cost + TOL
    ok = good >= 45
    record_criterion("7b fast10 cost <= (2+eps) * exact22 cost at n=600", ok, f"{good}/50 seeds")
    assert ok


def test_c08_gonzalez_two_approximation(record_criterion):
    bad = 0
    for inst, k, _ in tiny_cases(300, seed=77):
        bad += gonzalez(inst, k).cost > 2 * brute_kcenter(inst, k).optimal_cost + TOL
    record_criterion("8 Gonzalez 2-approximation (300 instances)", bad == 0, f"violations={bad}")
    assert bad == 0


def test_c09_structural_checks(big, record_criterion):
    inst, _, _ = big
    over = runs = 0
    for seed in range(30):
        for k in (2, 5, 10):
            res = approx_fair_radii(inst, k, DELTA, seed)
            if not res.failed:
                runs += 1
                over += res.exact_computations > 3 * k + 1
    rng = np.random.default_rng(9)
    differ = 0
    for _ in range(200):
        n = int(rng.integers(2, 45))
        small = random_instance(rng, n)
        k = int(rng.integers(1, n + 1))
        alpha = float(rng.uniform(0.3, 3.0))
        r = exact_fair_radii(small, k)
        pool = np.concatenate([[0.0], small.pairwise_distances()])
        cands = rng.choice(pool, size=int(rng.integers(1, pool.size + 1)))
        a = binary_search_cost(small, k, alpha, r, cands, mode="selection")
        b = binary_search_cost(small, k, alpha, r, cands, mode="sort")
        same = (a is None and b is None) or (
            a is not None and b is not None and a[0] == b[0] and a[1].centers == b[1].centers)
        differ += not same
    table = scaling_table((500, 1000, 2000, 4000), k=5, repeats=3)
    ratios = [row["ratio"] for row in table[1:]]
    ok = over == 0 and differ == 0 and all(r <= 3.0 for r in ratios)
    record_criterion("9 structural runtime checks", ok,
                     f"exact computations over 3k+1: {over}/{runs}; selection!=sort: {differ}/200; "
                     f"doubling ratios {[round(r, 2) for r in ratios]}")
    assert ok


def test_c10_determinism(big, record_criterion):
    inst, _, _ = big
    a, b = solve_exact22(inst, K_BIG, 1.0), solve_exact22(inst, K_BIG, 1.0)
    stable22 = (a.centers == b.centers and a.cost == b.cost
                and a.fairness_ratios.tobytes() == b.fairness_ratios.tobytes())
    stable10 = True
    for seed in range(5):
        x = solve_fast10(inst, K_BIG, 2.0, 0.5, DELTA, seed)
        y = solve_fast10(inst, K_BIG, 2.0, 0.5, DELTA, seed)
        stable10 &= type(x) is type(y) and x.meta == y.meta
        if isinstance(x, Solution):
            stable10 &= x.centers == y.centers and x.cost == y.cost
    ok = stable22 and stable10
    record_criterion("10 determinism", ok, f"exact22 stable={stable22}, fast10 stable={stable10}")
    assert ok
