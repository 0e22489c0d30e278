"""Scenario documents: JSON files whose mathematical content is expression strings."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..calculus import KForm, MetricTensor, VectorField
from ..connections import AffineConnection
from ..endo import EndoE
from ..errors import DegenerateMetric, SchemaError
from ..scalar import FieldMatrix, ScalarField, parse_expr

STATUSES = ("pass", "fail", "hypothesis_not_met", "skipped")

_KNOWN = {
    "name", "description", "dimension", "metric", "two_form", "three_form", "connection",
    "endos", "isotropic_frame", "checks", "seed", "samples", "max_degree", "expect", "options",
}


@dataclass(eq=False)
class Scenario:
    name: str
    n: int
    g: MetricTensor
    b: KForm
    H: KForm | None = None
    connection: AffineConnection | None = None
    endos: dict[str, EndoE] = field(default_factory=dict)
    isotropic_frame: list[VectorField] | None = None
    checks: list[str] = field(default_factory=lambda: ["all"])
    seed: int | None = None
    samples: int | None = None
    max_degree: int | None = None
    expect: dict[str, str] = field(default_factory=dict)
    options: dict[str, Any] = field(default_factory=dict)
    description: str = ""


def _expr(text, n: int, where: str) -> ScalarField:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise SchemaError(where, f"expected an expression string, got {type(text).__name__}")
    return parse_expr(str(text), n)


def _indices(key: str, n: int, k: int, where: str) -> tuple[int, ...]:
    try:
        idx = tuple(int(p) - 1 for p in key.split(","))
    except ValueError:
        raise SchemaError(where, f"bad index key {key!r}") from None
    if len(idx) != k or any(not 0 <= i < n for i in idx):
        raise SchemaError(where, f"index key {key!r} needs {k} indices in 1..{n}")
    return idx


def _form(data, n: int, k: int, where: str) -> KForm:
    if not isinstance(data, dict):
        raise SchemaError(where, "expected an object of index keys")
    comps = {}
    for key, text in data.items():
        idx = _indices(key, n, k, where)
        if list(idx) != sorted(set(idx)):
            raise SchemaError(where, f"index key {key!r} must be strictly increasing")
        comps[idx] = _expr(text, n, f"{where}[{key}]")
    return KForm(n, k, comps)


def _matrix(rows, n: int, where: str) -> FieldMatrix:
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise SchemaError(where, f"expected a {n}x{n} array")
    return FieldMatrix(n, [[_expr(v, n, f"{where}[{i + 1}][{j + 1}]") for j, v in enumerate(r)] for i, r in enumerate(rows)])


def parse_scenario(data: dict, default_name: str = "scenario") -> Scenario:
    if not isinstance(data, dict):
        raise SchemaError("<root>", "scenario must be a JSON object")
    extra = set(data) - _KNOWN
    if extra:
        raise SchemaError(sorted(extra)[0], "unknown field")
    n = data.get("dimension")
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= 8:
        raise SchemaError("dimension", "must be an integer between 1 and 8")
    if "metric" not in data:
        raise SchemaError("metric", "missing")
    gm = _matrix(data["metric"], n, "metric")
    for i in range(n):
        for j in range(i + 1, n):
            if gm[i, j] != gm[j, i]:
                raise SchemaError("metric", "not symmetric")
    if not gm.det():
        raise DegenerateMetric("metric determinant vanishes identically")
    g = MetricTensor(gm)
    b = _form(data.get("two_form", {}), n, 2, "two_form")
    H = _form(data["three_form"], n, 3, "three_form") if "three_form" in data else None
    conn = None
    if "connection" in data:
        raw = data["connection"]
        if not isinstance(raw, dict):
            raise SchemaError("connection", "expected an object of k,i,j keys")
        conn = AffineConnection(n, {_indices(k, n, 3, "connection"): _expr(v, n, f"connection[{k}]") for k, v in raw.items()})
    endos = {}
    for name, blocks in (data.get("endos") or {}).items():
        if not isinstance(blocks, dict) or set(blocks) - {"H", "alpha", "beta", "K"}:
            raise SchemaError(f"endos.{name}", "expected blocks H, alpha, beta, K")
        zero = [["0"] * n for _ in range(n)]
        endos[name] = EndoE(*(_matrix(blocks.get(k, zero), n, f"endos.{name}.{k}") for k in ("H", "alpha", "beta", "K")))
    frame = None
    if "isotropic_frame" in data:
        raw = data["isotropic_frame"]
        if not isinstance(raw, list) or any(not isinstance(v, list) or len(v) != n for v in raw):
            raise SchemaError("isotropic_frame", f"expected a list of {n}-component vectors")
        frame = [VectorField(n, [_expr(c, n, "isotropic_frame") for c in v]) for v in raw]
    checks = data.get("checks", ["all"])
    if isinstance(checks, str):
        checks = [c.strip() for c in checks.split(",") if c.strip()]
    if not isinstance(checks, list) or not all(isinstance(c, str) for c in checks):
        raise SchemaError("checks", "expected a list of check identifiers")
    for key in ("seed", "samples", "max_degree"):
        v = data.get(key)
        if v is not None and (not isinstance(v, int) or isinstance(v, bool) or v < 0):
            raise SchemaError(key, "must be a non-negative integer")
    expect = data.get("expect", {})
    if not isinstance(expect, dict) or any(v not in STATUSES for v in expect.values()):
        raise SchemaError("expect", f"statuses must be one of {', '.join(STATUSES)}")
    options = data.get("options", {})
    if not isinstance(options, dict):
        raise SchemaError("options", "expected an object")
    return Scenario(
        name=str(data.get("name", default_name)),
        n=n,
        g=g,
        b=b,
        H=H,
        connection=conn,
        endos=endos,
        isotropic_frame=frame,
        checks=checks,
        seed=data.get("seed"),
        samples=data.get("samples"),
        max_degree=data.get("max_degree"),
        expect=dict(expect),
        options=dict(options),
        description=str(data.get("description", "")),
    )


def load_scenario(path) -> Scenario:
    """Read and validate a scenario file.

    Raises OSError for unreadable files, SchemaError for malformed documents
    and the expression errors of the scalar parser for bad expressions.
    """
    p = Path(path)
    text = p.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError("<root>", f"invalid JSON: {e.msg} at line {e.lineno}") from None
    return parse_scenario(data, default_name=p.stem)


def corpus_dir() -> Path:
    return Path(__file__).with_name("scenarios")


def corpus_paths() -> list[Path]:
    return sorted(corpus_dir().glob("*.json"))
