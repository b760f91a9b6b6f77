import pytest

from dexact_index.algebra import Quiver, Relation, build_algebra
from dexact_index.algfile import bundled, load
from dexact_index.approx import AddSubcategory
from dexact_index.dexact import DClusterTilting, ModuleCategory
from dexact_index.repmod import build_catalog


@pytest.fixture(scope="session")
def a2():
    return build_algebra(Quiver(2, [("a", 0, 1)]))


@pytest.fixture(scope="session")
def a3():
    return build_algebra(Quiver(3, [("a", 0, 1), ("b", 1, 2)]))


@pytest.fixture(scope="session")
def aus():
    q = Quiver(3, [("a", 0, 1), ("b", 1, 2)])
    return build_algebra(q, [Relation.parse("b*a", q)])


@pytest.fixture(scope="session")
def cat2(a2):
    return build_catalog(a2)


@pytest.fixture(scope="session")
def cat3(a3):
    return build_catalog(a3)


@pytest.fixture(scope="session")
def cat_aus(aus):
    return build_catalog(aus)


@pytest.fixture(scope="session")
def mod2(cat2):
    return ModuleCategory(cat2)


@pytest.fixture(scope="session")
def mod3(cat3):
    return ModuleCategory(cat3)


@pytest.fixture(scope="session")
def proj2(cat2):
    return AddSubcategory.projectives(cat2)


@pytest.fixture(scope="session")
def x3(cat2):
    return AddSubcategory.from_names(cat2, ["P1", "S2", "S1"])


@pytest.fixture(scope="session")
def t_aus(cat_aus):
    return AddSubcategory.from_names(cat_aus, ["P1", "P2", "S3", "S1"])


@pytest.fixture(scope="session")
def dct(t_aus):
    return DClusterTilting(t_aus, 2)


@pytest.fixture(scope="session")
def bundled_file():
    return lambda name: load(bundled(name))


# ---------------------------------------------------------------------------
# Acceptance lines and the whole-suite time budget

import time

SUITE_BUDGET_SECONDS = 120
_ACCEPTANCE_LINES = []
_START = [0.0]


def pytest_sessionstart(session):
    _START[0] = time.perf_counter()


@pytest.fixture
def acceptance_line():
    """Record (and print) the single verdict line of an acceptance test."""
    def record(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    elapsed = time.perf_counter() - _START[0]
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda l: int(l.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
    verdict = "within" if elapsed < SUITE_BUDGET_SECONDS else "OVER"
    terminalreporter.write_line(f"suite runtime {elapsed:.1f} s, {verdict} the {SUITE_BUDGET_SECONDS} s budget")


def pytest_sessionfinish(session, exitstatus):
    if time.perf_counter() - _START[0] >= SUITE_BUDGET_SECONDS and exitstatus == 0:
        session.exitstatus = 1
