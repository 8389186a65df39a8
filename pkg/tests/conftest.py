import zlib

import numpy as np
import pytest

_CRITERIA = {}


@pytest.fixture
def rng(request):
    # distinct, reproducible stream per test
    return np.random.default_rng(zlib.crc32(request.node.nodeid.encode()))


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    number, title = crit
    entry = _CRITERIA.setdefault(number, {"title": title, "passed": 0, "failed": 0})
    entry["passed" if report.passed else "failed"] += 1


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            item.user_properties.append(("criterion", tuple(marker.args)))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        status = "PASS" if e["failed"] == 0 else "FAIL"
        total = e["passed"] + e["failed"]
        terminalreporter.write_line(f"criterion {number}: {status}  {e['title']}  ({e['passed']}/{total} tests)")
