import pytest
import sympy
from hypothesis import HealthCheck, settings, strategies as st

from gengeom.random_data import make_rng

settings.register_profile(
    "exact",
    max_examples=20,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

SYMS = sympy.symbols("x1:9")


def to_sympy(f):
    """Independent re-reading of a field through its printed form."""
    return sympy.sympify(str(f).replace("^", "**"), locals={f"x{i + 1}": s for i, s in enumerate(SYMS)})


def sympy_equal(f, expr):
    return sympy.simplify(to_sympy(f) - expr) == 0


seeds = st.integers(min_value=0, max_value=10**6)


def rng_for(seed, *salt):
    return make_rng(seed, "tests", *salt)


# -- acceptance criterion lines ------------------------------------------------

_CRITERIA: dict[int, tuple[str, list[bool]]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for number, title in getattr(report, "criteria", ()):
        _CRITERIA.setdefault(number, (title, []))[1].append(report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    outcome.get_result().criteria = [tuple(m.args) for m in item.iter_markers("criterion")]


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, outcomes = _CRITERIA[number]
        ok = all(outcomes)
        tr.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}")
