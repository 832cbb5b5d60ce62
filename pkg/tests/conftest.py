import pytest

from friable import build_rho_table, chamayou_histogram


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(number, title): acceptance criterion covered by the test")


_criteria: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "failed": [], "ran": 0})
    if report.when == "call" or (report.when == "setup" and not report.passed):
        entry["ran"] += 1
        if report.failed:
            entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "FAIL" if entry["failed"] else "PASS"
        detail = f"  ({', '.join(entry['failed'])})" if entry["failed"] else ""
        terminalreporter.write_line(f"{status}  criterion {number:>2}: {entry['title']}{detail}")


@pytest.fixture(scope="session")
def table_1024():
    """Fine table used wherever accuracy matters."""
    return build_rho_table(1.0 / 1024, 30.0)


@pytest.fixture(scope="session")
def table_256():
    return build_rho_table(1.0 / 256, 30.0)


@pytest.fixture(scope="session")
def mc_histogram():
    """One million Chamayou draws, 30 bins on [0, 3]."""
    return chamayou_histogram(10**6, bins=30, t_max=3.0, seed=20240601)
