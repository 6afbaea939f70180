import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    notes = [v for k, v in item.user_properties if k == "note"]
    item.config._criteria[number] = (title, report.passed, notes)


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_criteria", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, passed, notes = results[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {number:>2}. {title}")
        for note in notes:
            terminalreporter.write_line(f"          {note}")
