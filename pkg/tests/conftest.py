import re

ACCEPTANCE = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)$")
_verdicts: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = ACCEPTANCE.search(report.nodeid)
    if not m:
        return
    n, title = int(m.group(1)), m.group(2).replace("_", " ")
    if report.failed:
        _verdicts[n] = (title, "FAIL")
    elif report.when == "call" and n not in _verdicts:
        _verdicts[n] = (title, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_verdicts):
        title, verdict = _verdicts[n]
        terminalreporter.write_line(f"criterion {n:2d} {title}: {verdict}")
