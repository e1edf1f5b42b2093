"""Instance generators, file formats and the JSON run report.

Point files are CSV: one point per row, comma-separated floats, with an
optional header row (detected by a non-numeric first row).  Matrix files
hold ``n`` on the first line followed by ``n`` whitespace-separated rows of
``n`` values.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .metric import MetricInstance

GENERATOR_KINDS = ("uniform_box", "gaussian_blobs", "line", "duplicate_heavy")


class FormatError(ValueError):
    """Malformed instance file; the message carries line/column."""


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    dim: int = 2
    seed: int = 0
    side: float = 1.0
    blobs: int = 3
    sigma: float = 0.05
    multiplicity: int = 2
    coords: Optional[Sequence[float]] = None
    metric: str = "euclidean"

    def __post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}; expected one of {GENERATOR_KINDS}")
        if self.n < 1 or self.dim < 1:
            raise ValueError("n and dim must be >= 1")
        if self.side <= 0 or self.sigma < 0 or self.blobs < 1 or self.multiplicity < 1:
            raise ValueError("invalid generator parameters")
        if self.coords is not None and len(self.coords) != self.n:
            raise ValueError(f"explicit coordinates have length {len(self.coords)}, expected n={self.n}")

    @classmethod
    def parse(cls, text: str) -> "GeneratorSpec":
        """Parse ``kind:key=value,key=value`` (e.g. ``uniform_box:n=600,dim=2,seed=3``)."""
        kind, _, rest = text.partition(":")
        kwargs: dict = {}
        types = {f.name: f.type for f in fields(cls)}
        for item in filter(None, rest.split(",")):
            key, eq, value = item.partition("=")
            key = key.strip()
            if not eq or key not in types or key in ("kind", "coords"):
                raise ValueError(f"bad generator option {item!r}")
            kwargs[key] = value.strip() if key == "metric" else (
                float(value) if key in ("side", "sigma") else int(value))
        if "n" not in kwargs:
            raise ValueError("generator spec needs n=<int>")
        return cls(kind=kind.strip(), **kwargs)


def generate(spec: GeneratorSpec) -> MetricInstance:
    """Seed-deterministic synthetic instance."""
    rng = np.random.default_rng(spec.seed)
    n, dim = spec.n, spec.dim
    if spec.coords is not None:
        X = np.asarray(spec.coords, dtype=np.float64).reshape(n, -1)
    elif spec.kind == "uniform_box":
        X = rng.uniform(0.0, spec.side, size=(n, dim))
    elif spec.kind == "gaussian_blobs":
        centers = rng.uniform(0.0, spec.side, size=(spec.blobs, dim))
        labels = rng.integers(0, spec.blobs, size=n)
        X = centers[labels] + rng.normal(0.0, spec.sigma * spec.side, size=(n, dim))
    elif spec.kind == "line":
        X = np.zeros((n, dim))
        X[:, 0] = rng.uniform(0.0, spec.side, size=n)
    else:  # duplicate_heavy
        distinct = -(-n // spec.multiplicity)
        base = rng.uniform(0.0, spec.side, size=(distinct, dim))
        X = np.repeat(base, spec.multiplicity, axis=0)[:n]
    return MetricInstance.from_points(X, metric=spec.metric)


def _parse_float(text: str, where: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise FormatError(f"{where}: not a number: {text.strip()!r}") from None
    if not math.isfinite(v):
        raise FormatError(f"{where}: non-finite value {text.strip()!r}")
    return v


def load_points_csv(path, metric: str = "euclidean") -> MetricInstance:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    rows = []
    width = None
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        cells = line.split(",")
        if not rows and lineno == _first_nonblank(lines) and not _numeric_row(cells):
            continue  # header
        vals = [_parse_float(c, f"line {lineno}, column {col}") for col, c in enumerate(cells, start=1)]
        if width is None:
            width = len(vals)
        elif len(vals) != width:
            raise FormatError(f"line {lineno}: expected {width} columns, found {len(vals)}")
        rows.append(vals)
    if not rows:
        raise FormatError(f"{path}: no points")
    return MetricInstance.from_points(np.array(rows), metric=metric)


def _first_nonblank(lines) -> int:
    return next(i for i, line in enumerate(lines, start=1) if line.strip())


def _numeric_row(cells) -> bool:
    try:
        [float(c) for c in cells]
    except ValueError:
        return False
    return True


def _write_text(text: str, dest) -> None:
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text, encoding="utf-8")


def write_points_csv(inst: MetricInstance, dest) -> None:
    """Write coordinates as CSV to a path or text stream."""
    if inst.coords is None:
        raise ValueError("instance is matrix-backed; use write_matrix")
    _write_text("".join(",".join(repr(float(x)) for x in row) + "\n" for row in inst.coords), dest)


def load_matrix(path, check_triangle: bool = False) -> MetricInstance:
    lines = [(i, l) for i, l in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1) if l.strip()]
    if not lines:
        raise FormatError(f"{path}: empty matrix file")
    lineno, head = lines[0]
    try:
        n = int(head.strip())
    except ValueError:
        raise FormatError(f"line {lineno}: expected the point count n, found {head.strip()!r}") from None
    if n < 1:
        raise FormatError(f"line {lineno}: n must be positive")
    if len(lines) - 1 != n:
        raise FormatError(f"expected {n} matrix rows, found {len(lines) - 1}")
    M = np.empty((n, n))
    for r, (lineno, line) in enumerate(lines[1:]):
        cells = line.split()
        if len(cells) != n:
            raise FormatError(f"line {lineno}: expected {n} values, found {len(cells)}")
        for c, cell in enumerate(cells):
            M[r, c] = _parse_float(cell, f"line {lineno}, column {c + 1}")
    try:
        return MetricInstance.from_matrix(M, check_triangle=check_triangle)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_matrix(inst: MetricInstance, dest) -> None:
    lines = [f"{inst.n}\n"]
    lines += [" ".join(repr(float(x)) for x in row) + "\n" for row in inst.full_matrix()]
    _write_text("".join(lines), dest)


@dataclass
class RunReport:
    algorithm: str
    n: int
    k: int
    alpha: Optional[float] = None
    epsilon: Optional[float] = None
    delta: Optional[float] = None
    seed: Optional[int] = None
    centers: Optional[list] = None
    cost: Optional[float] = None
    max_fairness_ratio: Optional[float] = None
    radii_mode: Optional[str] = None
    exact_radius_computations: Optional[int] = None
    fail: bool = False
    feasible: Optional[bool] = None
    wall_ms: Optional[float] = None

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("cost", "max_fairness_ratio"):
            # JSON has no infinity; encode it as a string
            if d[key] is not None and math.isinf(d[key]):
                d[key] = "inf"
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunReport":
        names = {f.name for f in fields(cls)}
        if set(d) != names:
            raise FormatError(f"report keys differ from schema: {sorted(set(d) ^ names)}")
        d = dict(d)
        for key in ("cost", "max_fairness_ratio"):
            if d[key] == "inf":
                d[key] = math.inf
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)


def write_report(report: RunReport, path=None) -> None:
    """Write the report as JSON to ``path`` (stdout when None or "-")."""
    _write_text(report.to_json() + "\n", sys.stdout if path is None or str(path) == "-" else path)


def read_report(path) -> RunReport:
    return RunReport.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
