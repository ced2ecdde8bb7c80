from functools import lru_cache

import pytest

from orbichi.corpus import all_entries, get_entry
from orbichi.verify import prove_by_decomposition

# criterion number -> (PASS/FAIL, description), filled by test_acceptance
RESULTS = {}


@lru_cache(maxsize=None)
def proof_report(name):
    return prove_by_decomposition(get_entry(name).orbifold)


@pytest.fixture(scope="session")
def entries():
    return all_entries()


@pytest.fixture(scope="session")
def entry():
    return get_entry


@pytest.fixture(scope="session")
def proof():
    return proof_report


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        status, text = RESULTS[n]
        terminalreporter.write_line(f"{status} criterion {n}: {text}")
