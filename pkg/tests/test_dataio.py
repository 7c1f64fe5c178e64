import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pinchkit.curvature import PointData
from pinchkit.dataio import (
    RunConfig,
    batch_classify,
    dump_point_data,
    load_point_data,
    parse_point_data,
    render_rows,
    save_point_data,
)
from pinchkit.errors import DimensionError, InputError, SchemaError, SymmetryError
from pinchkit.models import clifford_minimal, einstein_torus, umbilical_sphere


def doc(**over):
    base = {"n": 5, "m": 2, "c": 1.0, "shape_operators": np.eye(5)[None].repeat(2, 0).tolist()}
    base.update(over)
    return base


def test_well_formed():
    P = parse_point_data(doc())
    assert (P.n, P.m, P.c) == (5, 2, 1.0)


def test_rational_c_exact():
    P = parse_point_data(doc(c="1/4", exact=True))
    assert P.exact.c == Fraction(1, 4)
    assert roundtrip(P).exact == P.exact


def roundtrip(P):
    return parse_point_data(json.loads(dump_point_data(P)))


def test_symmetry_error_names_index():
    ops = np.zeros((2, 5, 5))
    ops[1, 2, 4] = 0.5
    with pytest.raises(SymmetryError, match=r"\(1, 2, 4\)"):
        parse_point_data(doc(shape_operators=ops.tolist()))
    with pytest.raises(SymmetryError):
        parse_point_data(doc(shape_operators=ops.tolist(), exact=True))


@pytest.mark.parametrize("bad,pattern", [
    ({"n": "5"}, r"^<document>: n:"),
    ({"c": "one"}, r"c:"),
    ({"extra": 1}, r"extra"),
    ({"shape_operators": [[[1, "x"]]]}, r"shape_operators\[0\]\[0\]\[1\]"),
])
def test_schema_errors_name_the_field(bad, pattern):
    with pytest.raises(SchemaError, match=pattern):
        parse_point_data(doc(**bad))


def test_missing_key():
    d = doc()
    del d["c"]
    with pytest.raises(SchemaError, match="'c' is a required property"):
        parse_point_data(d)


@pytest.mark.parametrize("ops,pattern", [
    (np.zeros((1, 5, 5)).tolist(), "has 1 matrices"),
    (np.zeros((2, 4, 5)).tolist(), r"shape_operators\[0\] has 4 rows"),
    ([np.zeros((5, 5)).tolist(), [[0] * 5] * 4 + [[0] * 3]], r"shape_operators\[1\]\[4\] has 3 entries"),
])
def test_dimension_errors(ops, pattern):
    with pytest.raises(DimensionError, match=pattern):
        parse_point_data(doc(shape_operators=ops))


def test_scale_squares_needs_exact():
    with pytest.raises(SchemaError):
        parse_point_data(doc(scale_squares=[1, 1]))


def test_exact_model_round_trip(tmp_path):
    P, _ = einstein_torus(7, 3, Fraction(1), Fraction(1, 4))
    path = tmp_path / "torus.json"
    save_point_data(P, path)
    Q = load_point_data(path)
    assert Q.exact == P.exact and Q.label == P.label
    np.testing.assert_array_equal(Q.shape_ops, P.shape_ops)


@given(st.integers(2, 7), st.integers(1, 3), st.integers(0, 2**31))
def test_float_round_trip(n, m, seed):
    g = np.random.default_rng(seed)
    raw = g.standard_normal((m, n, n)) * 10.0 ** g.integers(-5, 5)
    P = PointData(n, m, float(g.standard_normal()), 0.5 * (raw + raw.transpose(0, 2, 1)))
    Q = roundtrip(P)
    np.testing.assert_allclose(Q.shape_ops, P.shape_ops, rtol=1e-15, atol=0)
    assert Q.c == P.c


def test_load_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(SchemaError, match="not valid JSON"):
        load_point_data(bad)
    with pytest.raises(InputError):
        load_point_data(tmp_path / "missing.json")


@pytest.fixture
def model_files(tmp_path):
    paths = []
    P, _ = einstein_torus(7, 3, 1.0, 0.25)
    Q, _ = clifford_minimal(3, 1, 0)
    for name, pt in (("torus", P), ("clifford", Q), ("umbilical", umbilical_sphere(6, 1, 0, 1))):
        path = tmp_path / f"{name}.json"
        save_point_data(pt, path)
        paths.append(str(path))
    return paths


def test_batch_rows_in_order(model_files):
    report = batch_classify(model_files, 3)
    assert [r["index"] for r in report.rows] == [0, 1, 2]
    assert [r["verdict"] for r in report.rows] == ["EQUALITY_TORUS_STRUCTURE"] * 2 + ["STRICT_PINCHED_VANISHING"]
    assert all("tolerances" in r for r in report.rows)
    assert report.n_errors == 0


def test_batch_corrupt_file(model_files, tmp_path):
    bad = tmp_path / "corrupt.json"
    bad.write_text('{"n": 5}')
    report = batch_classify([model_files[0], str(bad), model_files[2]], 3)
    assert [r["status"] for r in report.rows] == ["ok", "error", "ok"]
    assert "SchemaError" in report.rows[1]["error"]


def test_batch_identical_bytes_across_workers(model_files):
    one = batch_classify(model_files * 2, 3, RunConfig(seed=7, workers=1)).render("json")
    many = batch_classify(model_files * 2, 3, RunConfig(seed=7, workers=8)).render("json")
    assert one == many


def test_render_formats(model_files):
    rows = batch_classify(model_files[:1], 3).rows
    csv_text = render_rows(rows, "csv")
    assert csv_text.splitlines()[0].startswith("index,file,status")
    md = render_rows(rows, "markdown")
    assert md.startswith("| index |")
    with pytest.raises(ValueError):
        render_rows(rows, "yaml")


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(fmt="yaml")
    with pytest.raises(ValueError):
        RunConfig(workers=0)
    with pytest.raises(ValueError):
        RunConfig(tolerances={"bogus": 1})
    assert RunConfig(seed=9).optimizer.seed == 9
