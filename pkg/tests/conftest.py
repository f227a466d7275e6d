import pytest

_criteria = {}
_outcomes = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            _criteria[item.nodeid] = (mark.args[0], mark.args[1])


def pytest_runtest_logreport(report):
    if report.nodeid not in _criteria:
        return
    if report.when == "call" or report.failed:
        prev = _outcomes.get(report.nodeid, "PASS")
        _outcomes[report.nodeid] = "FAIL" if (report.failed or prev == "FAIL") else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, (number, desc) in sorted(_criteria.items(), key=lambda kv: kv[1][0]):
        status = _outcomes.get(nodeid, "NOT RUN")
        terminalreporter.write_line(f"criterion {number:>2}: {status:<7} {desc}")


@pytest.fixture
def rng():
    import random
    return random.Random(20240601)
