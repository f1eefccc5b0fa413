import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from tunnelinfo import DswpParams, make_superposition, solve_spectrum  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def dswp():
    return DswpParams()


@pytest.fixture(scope="session")
def spectrum(dswp):
    return solve_spectrum(dswp)


@pytest.fixture(scope="session")
def dswp_sup(spectrum):
    return make_superposition("dswp", "ground", "left", spectrum=spectrum)


@pytest.fixture(scope="session")
def iswp_sup():
    return make_superposition("iswp", "ground", "left")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        title, ok, detail = RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}")
