import time

import pytest

_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _CRITERIA.append((mark.args[0], mark.args[1], rep.outcome, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, outcome, dur in sorted(_CRITERIA):
        tag = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {tag}  {title}  ({dur:.1f}s)")


@pytest.fixture(scope="session")
def deep_scan(tmp_path_factory):
    """Odd-order subgroups with |H| < (l-1)/2 for 23 <= l <= 499 (cached)."""
    from stickelberger.session import scan
    cache = tmp_path_factory.mktemp("scan-cache")
    t0 = time.perf_counter()
    rows = scan(23, 499, odd_only=True, proper_only=True, cache_dir=cache)
    return rows, time.perf_counter() - t0
