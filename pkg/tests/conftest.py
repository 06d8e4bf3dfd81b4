import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from primenet.sieve import build_table  # noqa: E402


@pytest.fixture(scope="session")
def table_1e4():
    return build_table(10**4)


@pytest.fixture(scope="session")
def table_1e6():
    return build_table(10**6 + 1)


_CRITERIA = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Record and print one PASS/FAIL line for an acceptance criterion."""
    store = request.config.stash.setdefault(_CRITERIA, {})

    def report(number, ok, detail):
        line = f"CRITERION {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        store[number] = line
        capman = request.config.pluginmanager.getplugin("capturemanager")
        with capman.global_and_fixture_disabled():
            print("\n" + line, flush=True)
        return ok

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_CRITERIA, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for k in sorted(lines):
            terminalreporter.write_line(lines[k])
