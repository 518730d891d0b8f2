"""Shared pytest configuration: acceptance-criteria summary lines."""

import pytest


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "acceptance(label): end-to-end criterion reported in the terminal summary",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None and report.when == "call":
        report.acceptance_label = marker.args[0]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = []
    for reports in terminalreporter.stats.values():
        for rep in reports:
            label = getattr(rep, "acceptance_label", None)
            if label is not None:
                rows.append((label, rep.outcome))
    if not rows:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for label, outcome in sorted(rows):
        word = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{word}  {label}")
