import json

import pytest
from hypothesis import given, strategies as st

from nonrep.core import (
    Alphabet,
    ConfigurationError,
    DifferenceSet,
    InputError,
    ListAssignment,
    PartialSequence,
    Repetition,
    ap_positions,
    default_list_size,
)


@pytest.mark.parametrize("args, n, expected", [
    ((1, 1, 3), None, [1, 2, 3]),
    ((3, 2, 2), None, [3, 5]),
    ((2, 3, 4), 11, [2, 5, 8, 11]),
])
def test_ap_positions(args, n, expected):
    assert ap_positions(*args, n=n) == expected


def test_ap_positions_out_of_range():
    with pytest.raises(IndexError):
        ap_positions(2, 3, 5, n=11)
    with pytest.raises(IndexError):
        ap_positions(0, 1, 2)


@given(st.integers(1, 50), st.integers(1, 10), st.integers(1, 30))
def test_ap_positions_constant_gap(first, d, count):
    pos = ap_positions(first, d, count)
    assert len(pos) == count
    assert all(b - a == d for a, b in zip(pos, pos[1:]))


@given(st.integers(1, 40), st.integers(1, 6), st.integers(1, 8))
def test_repetition_halves_partition_progression(first, d, h):
    rep = Repetition(first, d, h)
    a, b = rep.first_half(), rep.second_half()
    assert not set(a) & set(b)
    assert a + b == ap_positions(first, d, 2 * h)
    assert rep.last == b[-1]


def test_repetition_rejects_bad_fields():
    with pytest.raises(ValueError):
        Repetition(0, 1, 1)
    with pytest.raises(ValueError):
        Repetition(1, 1, 0)


def test_difference_set():
    K = DifferenceSet([5, 2, 9])
    assert list(K) == [2, 5, 9] and K.k == 3
    assert DifferenceSet.parse("2,5, 9") == K
    assert DifferenceSet.up_to(3).to_list() == [1, 2, 3]
    for bad in ([], [1, 1], [0], [-2]):
        with pytest.raises(ConfigurationError):
            DifferenceSet(bad)


def test_default_list_size():
    # ceil(2k + 10 sqrt k)
    assert [default_list_size(k) for k in (1, 2, 3, 4, 5)] == [12, 19, 24, 28, 33]


def test_list_assignment_validation_and_json():
    la = ListAssignment([[3, 1, 2], [5, 4]])
    assert la[1] == (1, 2, 3) and la[2] == (4, 5)
    assert ListAssignment.from_json(la.to_json()) == la
    assert la.min_size() == 2
    for bad in ([[]], [[1, 1]], [[0, 1]]):
        with pytest.raises(ConfigurationError):
            ListAssignment(bad)
    with pytest.raises(IndexError):
        la[3]


def test_partial_sequence_basics():
    seq = PartialSequence(5)
    assert seq.assigned_count() == 0 and seq.smallest_unassigned() == 1
    seq[1] = 4
    seq[3] = 2
    assert seq[2] is None and seq.is_assigned(3)
    assert seq.snapshot() == [4, 0, 2, 0, 0]
    assert seq.smallest_unassigned() == 2
    assert seq.smallest_unassigned(3) == 4
    seq.clear(3)
    assert seq.assigned_count() == 1
    with pytest.raises(IndexError):
        seq[0]
    with pytest.raises(IndexError):
        seq[6] = 1
    with pytest.raises(ValueError):
        seq[2] = 0


def test_unassigned_never_equals_a_symbol():
    seq = PartialSequence.from_snapshot([0, 1])
    assert seq[1] is None and seq[1] != 0


def test_text_round_trip():
    seq = PartialSequence.from_text("1 0 3 2")
    assert seq.to_text() == "1 0 3 2"
    assert PartialSequence.from_snapshot(seq.snapshot()) == seq
    with pytest.raises(InputError):
        PartialSequence.from_text("1 x 2")
    with pytest.raises(InputError):
        PartialSequence.from_text("1 -1")


def test_copy_is_independent():
    seq = PartialSequence.from_text("1 2 0")
    other = seq.copy()
    other[3] = 1
    assert seq[3] is None and other[3] == 1
    assert seq.array[3] == 0 and other.array[3] == 1


def test_alphabet_relabeling_is_bijective():
    abc = Alphabet("abca")
    assert len(abc) == 3
    seq = abc.encode_word("abcab")
    assert seq.to_text() == "1 2 3 1 2"
    assert abc.decode_word(seq) == list("abcab")
    with pytest.raises(InputError):
        abc.encode("z")
    assert json.dumps(abc.labels) == '["a", "b", "c"]'
