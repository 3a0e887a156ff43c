from pathlib import Path

import pytest

from sforest.graphs import graph

from oracles import FIGURE_GRAPHS

ROOT = Path(__file__).resolve().parent.parent
GRAPH_DIR = ROOT / "graphs"


@pytest.fixture
def figure_graph():
    def get(name):
        return graph("xyzu", FIGURE_GRAPHS[name])

    return get


# -- acceptance report ------------------------------------------------------------

_criteria: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and rep.passed):
        return
    number, title = mark.args
    ok, _ = _criteria.get(number, (True, title))
    _criteria[number] = (ok and rep.passed, title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        ok, title = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
