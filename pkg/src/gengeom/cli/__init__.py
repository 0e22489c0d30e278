"""Command-line front end: scenarios, the check registry and report rendering."""
from .checks import ALIASES, CHECKS, CheckResult, resolve, run_checks
from .report import emit_report, exit_code
from .scenario import Scenario, load_scenario, parse_scenario

__all__ = [
    "ALIASES",
    "CHECKS",
    "CheckResult",
    "Scenario",
    "emit_report",
    "exit_code",
    "load_scenario",
    "parse_scenario",
    "resolve",
    "run_checks",
]
