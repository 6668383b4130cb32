import time

import pytest

RESULTS = {}


@pytest.fixture
def criterion(request):
    """Record pass/fail and wall time of one acceptance criterion."""
    marker = request.node.get_closest_marker("criterion")
    num = marker.args[0]
    start = time.perf_counter()
    yield num
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    RESULTS[num] = (ok, time.perf_counter() - start, marker.args[1])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(RESULTS):
        ok, secs, title = RESULTS[num]
        tr.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  ({secs:6.1f} s)  {title}")
