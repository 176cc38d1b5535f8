import itertools
import json

import pytest

from nonrep.checker import is_nonrepetitive
from nonrep.core import DifferenceSet, PartialSequence
from nonrep.search import ends_with_square, longest_sequence

K1 = DifferenceSet([1])


def test_binary_alphabet():
    r = longest_sequence(2, K1, 10)
    assert (r.max_length, r.witness, r.exhausted) == (3, [1, 2, 1], True)


def test_ternary_reaches_cap():
    r = longest_sequence(3, K1, 100, budget=10**7)
    assert r.max_length == 100 and r.exhausted
    assert is_nonrepetitive(PartialSequence.from_symbols(r.witness), K1)


def test_k_plus_one_symbols_dead_end():
    # q = k+1 = 3 with K={1,2}: exact maximum found by the exhaustive DFS
    r = longest_sequence(3, DifferenceSet([1, 2]), 50)
    assert r.exhausted and r.max_length == 5
    assert r.witness == [1, 2, 3, 1, 2]


def _brute_exists(q, K, length):
    for word in itertools.product(range(1, q + 1), repeat=length):
        if is_nonrepetitive(PartialSequence.from_symbols(list(word)), K):
            return True
    return False


@pytest.mark.parametrize("q, diffs", [(2, [1]), (3, [1, 2]), (2, [2]), (3, [1, 3])])
def test_exhausted_results_are_tight(q, diffs):
    K = DifferenceSet(diffs)
    r = longest_sequence(q, K, 30)
    assert r.exhausted and r.max_length < 30
    assert _brute_exists(q, K, r.max_length)
    assert q ** (r.max_length + 1) <= 10**7
    assert not _brute_exists(q, K, r.max_length + 1)


@pytest.mark.parametrize("diffs", [[1], [1, 2], [2, 3]])
def test_monotone_in_alphabet(diffs):
    K = DifferenceSet(diffs)
    lengths = [longest_sequence(q, K, 40, budget=10**6).max_length for q in range(1, 6)]
    assert lengths == sorted(lengths)


@pytest.mark.parametrize("k", [2, 3, 5])
def test_k_plus_two_reaches_cap(k):
    r = longest_sequence(k + 2, DifferenceSet.up_to(k), 60, budget=10**6)
    assert r.max_length == 60
    assert is_nonrepetitive(PartialSequence.from_symbols(r.witness), DifferenceSet.up_to(k))


def test_budget_exhaustion_reported():
    r = longest_sequence(3, DifferenceSet([1, 2]), 50, budget=5)
    assert not r.exhausted and r.nodes == 5


def test_checkpoint_and_resume(tmp_path):
    K = DifferenceSet([1, 2])
    full = longest_sequence(3, K, 50)
    ck = tmp_path / "dfs.json"
    part = longest_sequence(3, K, 50, budget=10, checkpoint=str(ck), checkpoint_every=4)
    assert not part.exhausted
    state = json.loads(ck.read_text())
    assert state["nodes"] == 10
    resumed = longest_sequence(3, K, 50, resume=str(ck))
    assert resumed == full
    with pytest.raises(ValueError):
        longest_sequence(4, K, 50, resume=str(ck))


def test_single_symbol():
    assert longest_sequence(1, K1, 10).max_length == 1


def test_ends_with_square():
    assert ends_with_square([1, 2, 1, 2], K1)
    assert not ends_with_square([1, 2, 1, 2, 3], K1)
    assert ends_with_square([1, 2, 1], DifferenceSet([2]))
