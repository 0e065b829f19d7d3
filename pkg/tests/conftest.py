import pytest

from latinhc import Hypercuboid
from latinhc.codes import MixedCode


def pytest_addoption(parser):
    parser.addoption("--extended", action="store_true", default=False,
                     help="run the slow extended-tier counts")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended"):
        return
    skip = pytest.mark.skip(reason="extended tier; pass --extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


_criteria: dict[int, list[str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n = mark.args[0]
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _criteria.setdefault(n, []).append(rep.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        outcomes = _criteria[n]
        ran = [o for o in outcomes if o != "skipped"]
        if not ran:
            verdict = "SKIP"
        else:
            verdict = "PASS" if all(o == "passed" for o in ran) else "FAIL"
        skipped = len(outcomes) - len(ran)
        extra = f" ({skipped} skipped)" if skipped else ""
        terminalreporter.write_line(f"CRITERION {n}: {verdict}{extra}")


@pytest.fixture
def cuboid_322():
    """The 3x2x2 class-2 example, displayed 1-based layer by layer."""
    return Hypercuboid.from_nested(
        [[[1, 2, 3], [4, 5, 6]],
         [[5, 6, 4], [2, 3, 1]]], r=2, one_based=True)


@pytest.fixture
def partial_m():
    """A 2x2x2 class-2 partial cube on 6 symbols with one empty cell."""
    return Hypercuboid.from_nested(
        [[["*", 3], [5, 6]],
         [[6, 4], [3, 1]]], r=2, order=6, one_based=True)


@pytest.fixture
def rectangle_code():
    """Six words over (3,3,2) read as (symbol, column, row)."""
    return MixedCode.of((3, 3, 2),
                        [(1, 1, 1), (2, 3, 1), (3, 2, 1), (1, 2, 2), (2, 1, 2), (3, 3, 2)],
                        one_based=True)
