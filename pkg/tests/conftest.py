import re

_RESULTS: dict = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_", report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    if report.failed:
        _RESULTS[k] = ("FAIL", report.duration)
    elif report.when == "call":
        _RESULTS.setdefault(k, ("PASS", report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        status, dur = _RESULTS.get(k, ("NOT RUN", 0.0))
        terminalreporter.write_line(f"criterion {k:>2} {CRITERIA[k]:<28} {status}  [{dur:.2f}s]")
