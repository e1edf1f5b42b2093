"""Finite metric instances and radius assignments.

A :class:`MetricInstance` is either coordinate-backed (Euclidean or
Manhattan) or matrix-backed.  All distance queries go through
:func:`distance_block` so that every code path sees bitwise identical
distances for the same pair of points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

METRICS = ("euclidean", "manhattan")
RADIUS_KINDS = ("exact", "sampled", "approx", "injected")

SYMMETRY_ATOL = 1e-9
PERTURB_SCALE = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64, copy=True)
    a.setflags(write=False)
    return a


def _pair_hash(lo: np.ndarray, hi: np.ndarray, n: int) -> np.ndarray:
    """Deterministic pseudo-random values in [0, 1) for unordered pairs."""
    z = lo.astype(np.uint64) * np.uint64(n) + hi.astype(np.uint64)
    z = z + np.uint64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) / float(1 << 53)


@dataclass(frozen=True, eq=False)
class MetricInstance:
    """Immutable point set with a distance oracle.

    Build instances with :meth:`from_points` or :meth:`from_matrix`; the
    raw constructor does no validation.
    """

    n: int
    coords: Optional[np.ndarray] = None
    matrix: Optional[np.ndarray] = None
    metric: str = "euclidean"
    jitter: float = 0.0
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_points(cls, points, metric="euclidean", perturb=False):
        X = np.asarray(points, dtype=np.float64)
        if X.ndim == 1:
            X = X[:, None]
        if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
            raise ValueError(f"points must be an (n, d) array with n, d >= 1, got shape {X.shape}")
        if not np.all(np.isfinite(X)):
            raise ValueError("coordinates must be finite")
        if metric not in METRICS:
            raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")
        jitter = 0.0
        if perturb:
            span = np.ptp(X, axis=0)
            diam = float(np.sqrt(np.sum(span**2)) if metric == "euclidean" else np.sum(span))
            jitter = PERTURB_SCALE * diam
        return cls(n=X.shape[0], coords=_frozen(X), metric=metric, jitter=jitter)

    @classmethod
    def from_matrix(cls, matrix, check_triangle=False, perturb=False):
        M = np.asarray(matrix, dtype=np.float64)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
            raise ValueError(f"distance matrix must be square and non-empty, got shape {M.shape}")
        if not np.all(np.isfinite(M)):
            raise ValueError("distance matrix entries must be finite")
        if np.any(M < 0):
            i, j = np.argwhere(M < 0)[0]
            raise ValueError(f"negative distance at ({i}, {j})")
        if np.any(np.diag(M) != 0):
            i = int(np.flatnonzero(np.diag(M) != 0)[0])
            raise ValueError(f"nonzero diagonal entry at ({i}, {i})")
        asym = np.abs(M - M.T) > SYMMETRY_ATOL
        if np.any(asym):
            i, j = np.argwhere(asym)[0]
            raise ValueError(
                f"matrix not symmetric at ({i}, {j}): {M[i, j]!r} vs {M[j, i]!r}"
            )
        M = (M + M.T) / 2.0
        n = M.shape[0]
        jitter = 0.0
        if perturb:
            jitter = PERTURB_SCALE * float(M.max())
            iu, ju = np.triu_indices(n, 1)
            M[iu, ju] += jitter * _pair_hash(iu, ju, n)
            M[ju, iu] = M[iu, ju]
        if check_triangle:
            _check_triangle(M)
        return cls(n=n, matrix=_frozen(M), metric="matrix")

    @property
    def backing(self) -> str:
        return "matrix" if self.matrix is not None else "coords"

    def _check_index(self, i) -> None:
        idx = np.asarray(i)
        if idx.size and (idx.min() < 0 or idx.max() >= self.n):
            raise IndexError(f"point index out of range for n={self.n}: {i!r}")

    def block(self, rows, cols=None) -> np.ndarray:
        """Distances between ``rows`` and ``cols`` (all points by default)."""
        rows = np.atleast_1d(np.asarray(rows, dtype=np.intp))
        self._check_index(rows)
        if cols is None:
            cols = np.arange(self.n)
        else:
            cols = np.atleast_1d(np.asarray(cols, dtype=np.intp))
            self._check_index(cols)
        if self.matrix is not None:
            return self.matrix[np.ix_(rows, cols)]
        D = distance_block(self.coords[rows], self.coords[cols], self.metric)
        if self.jitter:
            lo = np.minimum(rows[:, None], cols[None, :])
            hi = np.maximum(rows[:, None], cols[None, :])
            D = D + np.where(lo != hi, self.jitter * _pair_hash(lo, hi, self.n), 0.0)
        return D

    def row(self, i) -> np.ndarray:
        """Distances from point ``i`` to every point."""
        return self.block([i])[0]

    def full_matrix(self) -> np.ndarray:
        """The full n x n distance matrix (cached; O(n^2) memory)."""
        M = self._cache.get("full")
        if M is None:
            M = self.matrix if self.matrix is not None else _frozen(self.block(np.arange(self.n)))
            self._cache["full"] = M
        return M

    def pairwise_distances(self) -> np.ndarray:
        """Condensed upper-triangle distances d(i, j) for i < j."""
        iu, ju = np.triu_indices(self.n, 1)
        return self.full_matrix()[iu, ju]

    def dist_to_set(self, centers) -> np.ndarray:
        """d(p, C) for every point p; +inf when C is empty."""
        centers = list(centers)
        out = np.full(self.n, np.inf)
        for c in centers:
            np.minimum(out, self.row(c), out=out)
        return out


def distance_block(A: np.ndarray, B: np.ndarray, metric: str) -> np.ndarray:
    # Accumulate one coordinate at a time: the summation order is then
    # independent of block shape and d(i, j) == d(j, i) bitwise.
    acc = np.zeros((A.shape[0], B.shape[0]))
    for c in range(A.shape[1]):
        diff = A[:, c][:, None] - B[:, c][None, :]
        if metric == "euclidean":
            acc += diff * diff
        else:
            acc += np.abs(diff)
    return np.sqrt(acc) if metric == "euclidean" else acc


def _check_triangle(M: np.ndarray, atol: float = 1e-9) -> None:
    n = M.shape[0]
    for j in range(n):
        via = M[:, j][:, None] + M[j, :][None, :]
        bad = M > via + atol
        if np.any(bad):
            i, k = np.argwhere(bad)[0]
            raise ValueError(f"triangle inequality violated: d({i},{k}) > d({i},{j}) + d({j},{k})")


def distance(inst: MetricInstance, i: int, j: int) -> float:
    """Distance between points ``i`` and ``j``."""
    for x in (i, j):
        if not 0 <= x < inst.n:
            raise IndexError(f"point index {x} out of range for n={inst.n}")
    if i == j:
        return 0.0
    return float(inst.block([i], [j])[0, 0])


def ball_count(inst: MetricInstance, p: int, r: float) -> int:
    """Number of points within distance ``r`` of ``p``, counting ``p`` itself."""
    if not 0 <= p < inst.n:
        raise IndexError(f"point index {p} out of range for n={inst.n}")
    if r < 0:
        raise ValueError("radius must be non-negative")
    return int(np.count_nonzero(inst.row(p) <= r))


@dataclass(frozen=True, eq=False)
class RadiusAssignment:
    """Per-point non-negative radii tagged with how they were obtained."""

    values: np.ndarray
    kind: str

    def __post_init__(self):
        v = _frozen(np.ravel(self.values))
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise ValueError("radii must be finite and non-negative")
        if self.kind not in RADIUS_KINDS:
            raise ValueError(f"unknown radius kind {self.kind!r}")
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.shape[0]

    def __getitem__(self, p):
        return self.values[p]

    def check_length(self, n: int) -> None:
        if len(self) != n:
            raise ValueError(f"radius assignment has length {len(self)}, instance has n={n}")
