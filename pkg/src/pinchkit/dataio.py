"""Point-data files, run configuration, and the batch classifier.

A point-data file is a JSON object::

    {"n": 5, "m": 2, "c": "1/4", "exact": true,
     "shape_operators": [[[...], ...], [[...], ...]],
     "scale_squares": ["3/2", "1"], "label": "..."}

Numbers may be JSON numbers or rational strings ``"p/q"``. With
``"exact": true`` every entry is parsed as a Fraction and the point carries an
exact form; the optional ``scale_squares`` list (exact mode only) multiplies
operator ``alpha`` by ``sqrt(scale_squares[alpha])``, which is how models with
irrational entries but rational squares are stored exactly.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

import jsonschema
import numpy as np

from .curvature import PointData
from .errors import DimensionError, InputError, PinchkitError, SchemaError
from .lawson_simons import OptimizerConfig
from .rigidity import DETECT_TOL, EINSTEIN_TOL, classify_point

__all__ = [
    "POINT_SCHEMA",
    "RunConfig",
    "BatchReport",
    "parse_point_data",
    "load_point_data",
    "point_to_document",
    "dump_point_data",
    "save_point_data",
    "batch_classify",
    "render_rows",
]

_NUMBER = {
    "oneOf": [
        {"type": "number"},
        {"type": "string", "pattern": r"^\s*[+-]?\d+\s*(/\s*[1-9]\d*\s*)?$"},
    ]
}

POINT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["n", "m", "c", "shape_operators"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 2},
        "m": {"type": "integer", "minimum": 1},
        "c": _NUMBER,
        "shape_operators": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "items": {"type": "array", "items": _NUMBER}},
        },
        "scale_squares": {"type": "array", "items": _NUMBER},
        "label": {"type": "string"},
        "exact": {"type": "boolean"},
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(POINT_SCHEMA)


def _where(path):
    out = ""
    for part in path:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out or "<document>"


def _rational(x):
    if isinstance(x, str):
        return Fraction(x.replace(" ", ""))
    return Fraction(x)


def _real(x):
    return float(_rational(x)) if isinstance(x, str) else float(x)


def parse_point_data(doc, source: str = "<document>") -> PointData:
    """Validate a decoded JSON document and build the point."""
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise SchemaError(f"{source}: {_where(err.absolute_path)}: {err.message}")
    n, m = doc["n"], doc["m"]
    ops = doc["shape_operators"]
    if len(ops) != m:
        raise DimensionError(f"{source}: shape_operators has {len(ops)} matrices, m = {m}")
    for a, mat in enumerate(ops):
        if len(mat) != n:
            raise DimensionError(f"{source}: shape_operators[{a}] has {len(mat)} rows, n = {n}")
        for i, row in enumerate(mat):
            if len(row) != n:
                raise DimensionError(
                    f"{source}: shape_operators[{a}][{i}] has {len(row)} entries, n = {n}"
                )
    exact = bool(doc.get("exact", False))
    scales = doc.get("scale_squares")
    label = doc.get("label")
    if scales is not None:
        if not exact:
            raise SchemaError(f"{source}: scale_squares requires \"exact\": true")
        if len(scales) != m:
            raise DimensionError(f"{source}: scale_squares has {len(scales)} entries, m = {m}")
    if exact:
        mats = [[[_rational(x) for x in row] for row in mat] for mat in ops]
        sq = None if scales is None else [_rational(s) for s in scales]
        if sq is not None and any(s < 0 for s in sq):
            raise SchemaError(f"{source}: scale_squares must be non-negative")
        return PointData.from_exact(n, m, _rational(doc["c"]), mats, sq, label=label)
    mats = np.array([[[_real(x) for x in row] for row in mat] for mat in ops], dtype=float)
    return PointData(n, m, _real(doc["c"]), mats, label=label)


def load_point_data(path) -> PointData:
    """Read and validate a point-data JSON file."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    return parse_point_data(doc, str(path))


def _frac_str(x: Fraction) -> str:
    return str(x)


def point_to_document(P: PointData) -> dict:
    """JSON-ready document; exact points are written as rational strings."""
    doc = {"n": P.n, "m": P.m}
    if P.label is not None:
        doc["label"] = P.label
    if P.is_exact:
        ex = P.exact
        doc["exact"] = True
        doc["c"] = _frac_str(ex.c)
        doc["shape_operators"] = [[[_frac_str(x) for x in row] for row in mat] for mat in ex.mats]
        if any(s != 1 for s in ex.sq_scales):
            doc["scale_squares"] = [_frac_str(s) for s in ex.sq_scales]
    else:
        doc["c"] = P.c
        doc["shape_operators"] = P.shape_ops.tolist()
    return doc


def dump_point_data(P: PointData) -> str:
    return json.dumps(point_to_document(P), indent=2) + "\n"


def save_point_data(P: PointData, path) -> None:
    Path(path).write_text(dump_point_data(P))


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by every point of a batch.

    ``tolerances`` overrides ``detect`` and ``einstein`` (see
    :func:`pinchkit.rigidity.classify_point`). Identical seed and inputs give
    byte-identical reports for any ``workers``.
    """

    seed: int = 0
    workers: int = 1
    tolerances: dict = field(default_factory=dict)
    fmt: str = "json"
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)

    def __post_init__(self):
        if self.fmt not in ("json", "csv", "markdown"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        unknown = set(self.tolerances) - {"detect", "einstein"}
        if unknown:
            raise ValueError(f"unknown tolerance keys {sorted(unknown)}")
        object.__setattr__(self, "seed", int(self.seed) & (2**64 - 1))
        object.__setattr__(self, "optimizer", replace(self.optimizer, seed=self.seed))


@dataclass(frozen=True)
class BatchReport:
    rows: list

    @property
    def n_errors(self) -> int:
        return sum(row["status"] == "error" for row in self.rows)

    def render(self, fmt="json") -> str:
        return render_rows(self.rows, fmt)


def _classify_one(args):
    index, path, k, cfg = args
    row = {"index": index, "file": str(path)}
    try:
        P = load_point_data(path)
        v = classify_point(
            P,
            k,
            cfg.optimizer,
            detect_tol=cfg.tolerances.get("detect", DETECT_TOL),
            einstein_tol=cfg.tolerances.get("einstein", EINSTEIN_TOL),
            key=(index,),
        )
    except PinchkitError as exc:
        row.update(status="error", error=f"{type(exc).__name__}: {exc}")
        return row
    row.update(status="ok", label=P.label)
    row.update(v.as_dict())
    return row


def batch_classify(paths, k: int, cfg: RunConfig | None = None) -> BatchReport:
    """Classify every file at split index ``k``; rows follow input order.

    Errors in one file become an error row and do not stop the batch. Point
    ``i`` uses random streams keyed by ``i``, so the report does not depend on
    the worker count.
    """
    cfg = cfg or RunConfig()
    jobs = [(i, p, k, cfg) for i, p in enumerate(paths)]
    if cfg.workers == 1 or len(jobs) <= 1:
        rows = [_classify_one(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_classify_one, jobs))
    return BatchReport(rows)


_SUMMARY_COLUMNS = ("index", "file", "status", "label", "k", "verdict", "pinching_margin",
                    "einstein_residual", "error")


def _summary(row):
    return {col: row.get(col, "") for col in _SUMMARY_COLUMNS}


def _cell(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def render_rows(rows, fmt="json", columns=None) -> str:
    """Render report rows. JSON keeps everything; CSV/markdown keep scalar columns."""
    if fmt == "json":
        return json.dumps(rows, indent=2, sort_keys=True, default=str) + "\n"
    if columns is None:
        rows = [_summary(r) for r in rows]
        columns = list(_SUMMARY_COLUMNS)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_cell(r.get(c)) for c in columns])
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
        for r in rows:
            lines.append("| " + " | ".join(_cell(r.get(c)).replace("|", "\\|") for c in columns) + " |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
