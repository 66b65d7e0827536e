import pytest

_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    key = marker.args[0]
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        ok = rep.passed and _ACCEPTANCE.get(key, True)
        _ACCEPTANCE[key] = ok


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(id): acceptance criterion id, e.g. A1")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: int(k[1:])):
        terminalreporter.write_line(f"{key}: {'PASS' if _ACCEPTANCE[key] else 'FAIL'}")
