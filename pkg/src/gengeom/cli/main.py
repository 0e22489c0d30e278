"""``gengeom`` command line."""
from __future__ import annotations

import argparse
import sys

from ..errors import GenGeomError
from .checks import ALIASES, CHECKS, resolve, run_checks
from .report import emit_report, exit_code
from .scenario import corpus_paths, load_scenario


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gengeom", description="Exact checks for generalized geometry on polynomial charts.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", help="run checks on one scenario file")
    c.add_argument("scenario")
    c.add_argument("--checks", default=None, help="comma-separated identifiers, aliases or 'all'")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--samples", type=int, default=None)
    c.add_argument("--max-degree", type=int, default=None, dest="max_degree")
    s = sub.add_parser("selftest", help="run the built-in scenario corpus against its expectations")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--seed", type=int, default=None)
    sub.add_parser("list-checks", help="print the check identifiers")
    return p


def _write(data: bytes) -> None:
    sys.stdout.buffer.write(data)
    sys.stdout.flush()


def cmd_check(args) -> int:
    try:
        s = load_scenario(args.scenario)
        checks = None if args.checks is None else [c.strip() for c in args.checks.split(",") if c.strip()]
        if checks is not None:
            resolve(checks)
        else:
            resolve(s.checks)
    except KeyError as e:
        print(f"error: unknown check {e.args[0]!r}", file=sys.stderr)
        return 2
    except (OSError, GenGeomError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    results = run_checks(s, checks, seed=args.seed, samples=args.samples, max_degree=args.max_degree)
    _write(emit_report(results, args.format, scenario=s.name))
    return exit_code(results)


def run_selftest(seed: int | None = None):
    """Run every corpus scenario; return ``(groups, expectations, all_match)``."""
    groups, expectations, ok = [], {}, True
    for path in corpus_paths():
        s = load_scenario(path)
        results = run_checks(s, seed=seed)
        groups.append((s.name, results))
        for r in results:
            # unlisted checks must pass, or skip for lack of input
            exp = s.expect.get(r.id, "skipped" if r.status == "skipped" else "pass")
            expectations[(s.name, r.id)] = exp
            ok &= exp == r.status
    return groups, expectations, ok


def cmd_selftest(args) -> int:
    groups, expectations, ok = run_selftest(args.seed)
    _write(emit_report(groups, args.format, expectations=expectations))
    return 0 if ok else 1


def cmd_list(args) -> int:
    lines = list(CHECKS) + [f"{a} -> {', '.join(t)}" for a, t in ALIASES.items()]
    _write(("\n".join(lines) + "\n").encode())
    return 0


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    return {"check": cmd_check, "selftest": cmd_selftest, "list-checks": cmd_list}[args.command](args)


if __name__ == "__main__":
    raise SystemExit(main())
