import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from primetri.sieve import build_sieve  # noqa: E402

_criteria = []


def pytest_addoption(parser):
    parser.addoption("--extended", action="store_true", help="run the long (to 3e7) scans")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended") or os.environ.get("PRIMETRI_EXTENDED"):
        return
    skip = pytest.mark.skip(reason="extended scan; use --extended or PRIMETRI_EXTENDED=1")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        status = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")
        _criteria.append((mark.args[0], status, mark.args[1], rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, title, secs in sorted(_criteria, key=lambda c: str(c[0])):
        terminalreporter.write_line(f"{status}  criterion {number}: {title}  ({secs:.2f}s)")


@pytest.fixture(scope="session")
def sieve_small():
    return build_sieve(200_000)


@pytest.fixture(scope="session")
def sieve_big():
    # S_9(r) at n <= 10^6 needs primes up to 9*10^6 + 9
    return build_sieve(9_000_009)
