"""Rendering check results as JSON or text."""
from __future__ import annotations

import json

from .checks import CheckResult

SCHEMA = "gengeom.report/1"


def exit_code(results) -> int:
    return 1 if any(r.status == "fail" for r in results) else 0


def _summary(results) -> dict:
    out = {"pass": 0, "fail": 0, "hypothesis_not_met": 0, "skipped": 0}
    for r in results:
        out[r.status] += 1
    return out


def _entry(r: CheckResult, scenario: str | None, expected: str | None) -> dict:
    d = r.as_dict()
    if scenario is not None:
        d["scenario"] = scenario
    if expected is not None:
        d["expected"] = expected
        d["matches"] = expected == r.status
    return d


def emit_report(results, fmt: str = "text", scenario: str | None = None, expectations=None) -> bytes:
    """Serialize ``results``.

    ``results`` is a list of CheckResult or, for multi-scenario reports, a list
    of ``(scenario_name, [CheckResult, ...])`` pairs.  ``expectations`` maps
    ``(scenario, check_id)`` to an expected status.  The JSON form carries no
    timings, so equal inputs give equal bytes.
    """
    groups = _groups(results, scenario)
    expectations = expectations or {}
    if fmt == "json":
        flat = [r for _, rs in groups for r in rs]
        doc = {
            "schema": SCHEMA,
            "summary": _summary(flat),
            "exit_code": exit_code(flat),
            "results": [
                _entry(r, name, expectations.get((name, r.id)) if expectations else None)
                for name, rs in groups
                for r in sorted(rs, key=lambda r: r.id)
            ],
        }
        if expectations:
            doc["all_expected"] = all(d.get("matches", True) for d in doc["results"])
        return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    for name, rs in groups:
        if name is not None:
            lines.append(f"== {name}")
        for r in rs:
            tag = r.status.upper()
            exp = expectations.get((name, r.id))
            mark = "" if exp is None else ("  (expected)" if exp == r.status else f"  (EXPECTED {exp})")
            lines.append(f"{tag:<18} {r.id:<36} {r.elapsed * 1000:8.1f} ms{mark}")
            if r.witness:
                w = r.witness if len(r.witness) <= 240 else r.witness[:237] + "..."
                lines.append(f"    witness: {w}")
    flat = [r for _, rs in groups for r in rs]
    s = _summary(flat)
    lines.append(", ".join(f"{v} {k}" for k, v in s.items()))
    return ("\n".join(lines) + "\n").encode()


def _groups(results, scenario):
    results = list(results)
    if results and isinstance(results[0], tuple):
        return [(name, list(rs)) for name, rs in results]
    return [(scenario, results)]
