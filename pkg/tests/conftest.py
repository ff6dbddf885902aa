import random
from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "binomiality" / "fixtures"
DEFAULT_SEED = 20261016


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED, help="seed for the randomized suites")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)


@pytest.fixture
def fixture_path():
    return lambda name: FIXTURES / name


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    """Collects (criterion, passed, seconds, note) rows for the summary."""
    return request.config.stash.setdefault(ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = config.stash.get(ACCEPTANCE, [])
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, secs, note in sorted(rows):
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'} ({secs:.1f}s) {note}")
