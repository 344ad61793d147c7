import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# criterion number -> (passed, seconds, title)
_RESULTS: dict[int, tuple[bool, float, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        seconds = report.duration if report.when == "call" else 0.0
        _RESULTS[n] = (report.passed, seconds, title)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        passed, seconds, title = _RESULTS[n]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"CRITERION {n:2d}: {verdict}  {title} ({seconds:.1f}s)")
