import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_VERDICTS = []


class Criterion:
    """Records one PASS/FAIL line for an acceptance criterion."""

    def __init__(self, label: str):
        self.label = label
        self.detail = ""

    def note(self, text: str) -> None:
        self.detail = text


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    c = Criterion(marker.args[0] if marker else request.node.name)
    yield c
    rep = getattr(request.node, "rep_call", None)
    passed = rep is not None and rep.passed
    line = f"{'PASS' if passed else 'FAIL'}  {c.label}" + (f"  [{c.detail}]" if c.detail else "")
    _VERDICTS.append(line)
    print(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in _VERDICTS:
            terminalreporter.write_line(line)
