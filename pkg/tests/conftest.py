import time

import pytest

_results: list[tuple[str, str, str, float]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    start = time.perf_counter()
    yield
    item.user_properties.append(("elapsed", time.perf_counter() - start))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call":
        return
    elapsed = dict(item.user_properties).get("elapsed", 0.0)
    _results.append((str(mark.args[0]), mark.args[1], "PASS" if report.passed else "FAIL", elapsed))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance")
    for num, title, status, elapsed in sorted(_results, key=lambda r: int(r[0])):
        terminalreporter.write_line(f"{status} criterion {num}: {title} ({elapsed:.2f}s)")
