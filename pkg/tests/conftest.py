from collections import defaultdict

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_criteria: dict[int, dict] = defaultdict(lambda: {"title": "", "ok": True, "ran": 0})


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        entry = _criteria[marker.args[0]]
        entry["title"] = marker.args[1]
        entry["ran"] += 1
        entry["ok"] = entry["ok"] and rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        e = _criteria[n]
        status = "PASS" if e["ok"] else "FAIL"
        terminalreporter.write_line(f"{status} criterion {n:2d}: {e['title']}")
