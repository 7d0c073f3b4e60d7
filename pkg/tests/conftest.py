import pytest

_RESULTS: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number n")


def pytest_runtest_logreport(report):
    # a failed setup never reaches the call phase, so count it there
    if report.when != "call" and report.passed:
        return
    crit = dict(report.user_properties).get("criterion")
    if crit is not None:
        _RESULTS.setdefault(crit, []).append(report.passed)


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    m = item.get_closest_marker("criterion")
    if m is not None:
        item.user_properties.append(("criterion", (m.args[0], m.args[1])))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for (n, title), outcomes in sorted(_RESULTS.items()):
        verdict = "PASS" if all(outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {verdict}  {title}")
