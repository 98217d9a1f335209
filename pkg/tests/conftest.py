from __future__ import annotations

import pytest

_RESULTS: dict[str, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    _RESULTS[item.nodeid] = {
        "label": marker.args[0],
        "passed": report.passed,
        "cases": [v for k, v in item.user_properties if k == "case"],
        "seconds": report.duration,
    }


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for res in _RESULTS.values():
        tr.write_line(f"{'PASS' if res['passed'] else 'FAIL'}  {res['label']}  ({res['seconds']:.2f}s)")
        for ok, text in res["cases"]:
            tr.write_line(f"        {'ok  ' if ok else 'FAIL'}  {text}")
    n_pass = sum(r["passed"] for r in _RESULTS.values())
    tr.write_line(f"{n_pass}/{len(_RESULTS)} criteria pass")
