from __future__ import annotations

import pytest

_results: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, seconds): acceptance criterion with a time bound")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title, seconds = marker.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _results[number] = (title, seconds, report.passed, getattr(item, "elapsed", None))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        title, seconds, passed, elapsed = _results[number]
        timing = f"{elapsed:.2f}s / {seconds}s" if elapsed is not None else f"bound {seconds}s"
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status} ({timing}) {title}")
