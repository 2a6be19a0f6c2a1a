"""Shared fixtures, and the per-criterion PASS/FAIL summary of the acceptance suite."""
import pytest

from thermorep.densities import named_density

_CRITERIA = []


@pytest.fixture(scope="session")
def gaussian_p():
    return named_density("gaussian:1", mass=1.0)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        n, label = marker.args
        detail = getattr(item, "criterion_detail", "")
        _CRITERIA.append((n, label, item.callspec.id if hasattr(item, "callspec") else "", report.outcome, detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, label, param, outcome, detail in sorted(_CRITERIA, key=lambda r: r[0]):
        flag = "PASS" if outcome == "passed" else "FAIL"
        name = f"{label} [{param}]" if param else label
        tr.write_line(f"criterion {n:>2} {flag}  {name}" + (f"  -- {detail}" if detail else ""))
