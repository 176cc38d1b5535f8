import random

import pytest

from nonrep.checker import is_nonrepetitive
from nonrep.core import PartialSequence


class ScriptedRng:
    """Feeds fixed ranks to the generator, then falls back to a seeded RNG."""

    def __init__(self, ranks, seed=0):
        self.ranks = list(ranks)
        self.fallback = random.Random(seed)

    def randrange(self, m):
        r = self.ranks.pop(0) if self.ranks else self.fallback.randrange(m)
        assert 0 <= r < m, f"scripted rank {r} out of range {m}"
        return r


def random_squarefree_partial(rng: random.Random, n, q, K, hole_p=0.35):
    """Rejection-sample a partial sequence with no fully assigned square."""
    while True:
        cells = [None if rng.random() < hole_p else rng.randint(1, q) for _ in range(n)]
        seq = PartialSequence.from_symbols(cells)
        if is_nonrepetitive(seq, K):
            return seq


@pytest.fixture
def scripted():
    return ScriptedRng


_ACCEPTANCE_LINES = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and item.module.__name__.endswith("test_acceptance"):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        status = "PASS" if report.passed else "FAIL"
        _ACCEPTANCE_LINES.append(f"{status}  {doc}  ({report.duration:.2f}s)")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
