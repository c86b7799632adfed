import os

import pytest
from hypothesis import HealthCheck, settings

from wzproof import database
from wzproof.algebra import parse_poly, parse_rational
from wzproof.hyperterm import HyperTerm

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def P(text):
    return parse_poly(text)


def R(text):
    return parse_rational(text)


def spec(name):
    return database.get(name).spec


def shifted(name, param=None, step=None):
    """``(f, S, F)`` for a database entry after its configured shift."""
    entry = database.get(name)
    param, step = (param, step) if param else entry.shift
    s = entry.spec
    f = s.lhs.substitute_shift(param, step)
    S = s.rhs.substitute_shift(param, step)
    return f, S, f / S


@pytest.fixture(scope="session")
def kummer_F() -> HyperTerm:
    return shifted("kummer")[2]


@pytest.fixture(scope="session")
def bailey_F() -> HyperTerm:
    return shifted("bailey")[2]


@pytest.fixture(scope="session")
def dixon_F() -> HyperTerm:
    return shifted("dixon")[2]


# -- acceptance summary -----------------------------------------------------------------------------

_criteria: dict[int, list[bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _criteria.setdefault(int(mark.args[0]), []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria):
        results = _criteria[key]
        verdict = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {key}: {verdict} ({sum(results)}/{len(results)} checks)")
