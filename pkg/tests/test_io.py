import math

import numpy as np
import pytest

from fairkcenter.io import (FormatError, GeneratorSpec, RunReport, generate, load_matrix,
                            load_points_csv, read_report, write_matrix, write_points_csv,
                            write_report)

from instances import LINE4


def test_line_override():
    inst = generate(GeneratorSpec("line", n=4, dim=1, coords=LINE4))
    assert inst.coords.ravel().tolist() == LINE4


@pytest.mark.parametrize("kind", ["uniform_box", "gaussian_blobs", "line", "duplicate_heavy"])
def test_generators_are_seed_deterministic(kind):
    a = generate(GeneratorSpec(kind, n=600, dim=2, seed=5))
    b = generate(GeneratorSpec(kind, n=600, dim=2, seed=5))
    c = generate(GeneratorSpec(kind, n=600, dim=2, seed=6))
    assert np.array_equal(a.coords, b.coords)
    assert not np.array_equal(a.coords, c.coords)
    assert a.n == 600 and a.coords.shape == (600, 2)


def test_duplicate_heavy_multiplicity():
    inst = generate(GeneratorSpec("duplicate_heavy", n=12, dim=2, multiplicity=3, seed=1))
    assert len(np.unique(inst.coords, axis=0)) == 4


def test_generator_validation():
    for bad in (dict(kind="spiral", n=3), dict(kind="line", n=0), dict(kind="line", n=3, dim=0),
                dict(kind="line", n=3, coords=[1.0])):
        with pytest.raises(ValueError):
            GeneratorSpec(**bad)


def test_spec_parse():
    spec = GeneratorSpec.parse("gaussian_blobs:n=50,dim=3,seed=2,sigma=0.1,blobs=4")
    assert spec == GeneratorSpec("gaussian_blobs", n=50, dim=3, seed=2, sigma=0.1, blobs=4)
    for bad in ("uniform_box:dim=2", "uniform_box:n=5,colour=3", "uniform_box:n"):
        with pytest.raises(ValueError):
            GeneratorSpec.parse(bad)


def test_csv_running_example(tmp_path):
    path = tmp_path / "line4.csv"
    path.write_text("0\n1\n2\n10\n")
    inst = load_points_csv(path)
    assert inst.coords.ravel().tolist() == LINE4


def test_csv_header_detected(tmp_path):
    path = tmp_path / "pts.csv"
    path.write_text("x,y\n0,0\n3,4\n")
    inst = load_points_csv(path)
    assert inst.n == 2 and inst.row(0)[1] == 5.0


@pytest.mark.parametrize("text, where", [
    ("0,0\n1\n", "line 2"),
    ("0,0\n1,nan\n", "line 2, column 2"),
    ("0,0\n1,inf\n", "line 2, column 2"),
    ("0,0\n1,abc\n", "line 2, column 2"),
    ("x,y\n", "no points"),
])
def test_csv_rejects(tmp_path, text, where):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    with pytest.raises(FormatError, match=where):
        load_points_csv(path)


def test_matrix_asymmetric_rejected(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("2\n0 1\n1.001 0\n")
    with pytest.raises(FormatError, match="symmetric"):
        load_matrix(path)


@pytest.mark.parametrize("text, where", [
    ("x\n", "line 1"),
    ("2\n0 1\n", "expected 2 matrix rows"),
    ("2\n0 1\n1\n", "line 3"),
    ("2\n1 1\n1 0\n", "diagonal"),
    ("2\n0 q\n1 0\n", "line 2, column 2"),
])
def test_matrix_rejects(tmp_path, text, where):
    path = tmp_path / "m.txt"
    path.write_text(text)
    with pytest.raises(FormatError, match=where):
        load_matrix(path)


def test_missing_file():
    with pytest.raises(OSError):
        load_points_csv("/nonexistent/points.csv")


def test_instance_roundtrips(tmp_path):
    inst = generate(GeneratorSpec("gaussian_blobs", n=40, dim=3, seed=8))
    write_points_csv(inst, tmp_path / "p.csv")
    again = load_points_csv(tmp_path / "p.csv")
    assert np.array_equal(inst.coords, again.coords)
    write_matrix(inst, tmp_path / "m.txt")
    M = load_matrix(tmp_path / "m.txt")
    assert np.array_equal(M.full_matrix(), inst.full_matrix())
    write_matrix(M, tmp_path / "m2.txt")
    assert (tmp_path / "m.txt").read_text() == (tmp_path / "m2.txt").read_text()


def test_report_roundtrip(tmp_path):
    reports = [
        RunReport("exact22", n=4, k=2, alpha=1.0, epsilon=0.5, delta=0.1, seed=0, centers=[0, 3],
                  cost=2.0, max_fairness_ratio=2.0, radii_mode="exact",
                  exact_radius_computations=4, fail=False, feasible=True, wall_ms=0.5),
        RunReport("fast10", n=600, k=5, alpha=2.0, seed=3, fail=True, radii_mode="approx",
                  exact_radius_computations=16),
        RunReport("gonzalez", n=3, k=1, centers=[0], cost=4.0, max_fairness_ratio=math.inf),
    ]
    for i, rep in enumerate(reports):
        path = tmp_path / f"r{i}.json"
        write_report(rep, path)
        assert read_report(path) == rep


def test_report_keys_and_nulls(tmp_path):
    import json
    rep = RunReport("fast10", n=10, k=1)
    d = json.loads(rep.to_json())
    assert list(d) == ["algorithm", "n", "k", "alpha", "epsilon", "delta", "seed", "centers",
                       "cost", "max_fairness_ratio", "radii_mode", "exact_radius_computations",
                       "fail", "feasible", "wall_ms"]
    assert d["feasible"] is None and d["cost"] is None
    with pytest.raises(FormatError):
        RunReport.from_dict({**d, "extra": 1})
