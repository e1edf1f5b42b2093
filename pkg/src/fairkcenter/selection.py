"""Order-statistic selection."""

from __future__ import annotations

import numpy as np

SORT_CUTOFF = 32


def kth_smallest(values, k: int, rng: np.random.Generator | None = None) -> float:
    """Return the k-th smallest element (1-based, with multiplicity).

    Randomized three-way partition selection in expected linear time.
    Arrays shorter than ``SORT_CUTOFF`` are finished by sorting.  The result
    does not depend on the pivots drawn, only the running time does.

    Args:
      values: 1-d array-like of reals.
      k: rank, ``1 <= k <= len(values)``.
      rng: pivot source; a fixed-seed generator is used when omitted.

    Raises:
      ValueError: on empty input, NaN entries, or ``k`` out of range.
    """
    a = np.asarray(values, dtype=np.float64).ravel()
    if a.size == 0:
        raise ValueError("kth_smallest of an empty sequence")
    if not 1 <= k <= a.size:
        raise ValueError(f"rank k={k} out of range for {a.size} values")
    if np.isnan(a).any():
        raise ValueError("kth_smallest does not accept NaN")
    if rng is None:
        rng = np.random.default_rng(a.size)
    while a.size >= SORT_CUTOFF:
        pivot = a[rng.integers(a.size)]
        below = a[a < pivot]
        if k <= below.size:
            a = below
            continue
        n_eq = int(np.count_nonzero(a == pivot))
        if k <= below.size + n_eq:
            return float(pivot)
        k -= below.size + n_eq
        a = a[a > pivot]
    return float(np.sort(a)[k - 1])
