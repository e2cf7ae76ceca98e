import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cph.encodings import (SlidingPdState, build_cartesian_tree, check_sequence, ct_match,
                           dag_from_fp, dag_from_pd, fp_encode, front_pointers, in_degrees,
                           pd_encode, pd_prepend, pd_window_access, zero_positions)


def digits(s):
    return [int(c) for c in s]


def naive_pd(s):
    out = []
    for i in range(len(s)):
        d = 0
        for j in range(i - 1, -1, -1):
            if s[j] <= s[i]:
                d = i - j
                break
        out.append(d)
    return out


def naive_fp(s):
    return [len(front_pointers(naive_pd(s[i:]))) for i in range(len(s))]


texts = st.lists(st.integers(0, 5), max_size=30)


@pytest.mark.parametrize("text, expected", [
    ("316486759", "001212141"),
    ("713286945", "001212141"),
    ("", ""),
    ("123", "011"),
    ("6486759", "0012141"),
])
def test_pd_encode_examples(text, expected):
    assert pd_encode(digits(text)) == digits(expected)


@given(texts)
def test_pd_encode_matches_definition(s):
    assert pd_encode(s) == naive_pd(s)


def test_check_sequence_rejects_bad_characters():
    with pytest.raises(ValueError):
        check_sequence([1, -2])
    with pytest.raises(ValueError):
        check_sequence([1, 2**32])


@pytest.mark.parametrize("pd, expected", [
    ("01214501", [2, 3, 5, 6]),
    ("0", []),
    ("011", [2]),
    ("", []),
])
def test_front_pointers(pd, expected):
    assert front_pointers(digits(pd)) == expected


def test_zero_positions():
    assert zero_positions(digits("001212141")) == [1, 2]


def test_prepend_resolves_front_pointers():
    state = SlidingPdState(4)
    assert pd_prepend(state, 4) == []
    assert state.pending == [3]
    assert pd_prepend(state, 6) == []
    assert pd_prepend(state, 1) == [2, 3]
    assert state.zero_positions() == [1]


def test_prepend_on_empty_window():
    state = SlidingPdState()
    assert state.prepend(7) == []
    assert state.zero_positions() == [1]


@given(texts)
def test_sliding_state_tracks_every_suffix(s):
    state = SlidingPdState(len(s) + 1)
    for i in range(len(s) - 1, -1, -1):
        resolved = state.prepend(s[i])
        pd = naive_pd(s[i:])
        assert resolved == front_pointers(pd)
        assert state.zero_positions() == zero_positions(pd)


def test_undo_restores_state():
    rng = random.Random(5)
    state = SlidingPdState(0, undoable=True)
    history = []
    for _ in range(300):
        if history and rng.random() < 0.4:
            state.undo()
            history.pop(0)
        else:
            c = rng.randint(1, 4)
            state.prepend(c)
            history.insert(0, c)
        assert state.zero_positions() == zero_positions(naive_pd(history))
    with pytest.raises(RuntimeError):
        SlidingPdState(undoable=True).undo()


@pytest.mark.parametrize("text, expected", [
    ("3164", "0200"),
    ("5343", "0200"),
    ("4253", "0200"),
    ("", ""),
])
def test_fp_encode_examples(text, expected):
    assert fp_encode(digits(text)) == digits(expected)


@given(texts)
def test_fp_encode_matches_definition(s):
    assert fp_encode(s) == naive_fp(s)


def test_cartesian_tree_examples():
    t = build_cartesian_tree(digits("316486759"))
    assert t.root == 2
    t = build_cartesian_tree([2, 1, 3])
    assert (t.root, t.left[1], t.right[1]) == (2, 1, 3)
    t = build_cartesian_tree([9])
    assert (t.root, t.left, t.right) == (1, [0], [0])


@given(texts)
def test_cartesian_tree_inorder_and_heap_order(s):
    t = build_cartesian_tree(s)
    assert t.inorder() == list(range(1, len(s) + 1))
    for v in range(1, len(s) + 1):
        # leftmost minimum: ties go to the right subtree
        if t.left[v - 1]:
            assert s[v - 1] < s[t.left[v - 1] - 1]
        if t.right[v - 1]:
            assert s[v - 1] <= s[t.right[v - 1] - 1]


@pytest.mark.parametrize("a, b, expected", [
    ("316486759", "713286945", True),
    ("12", "21", False),
    ("5", "5", True),
    ("12", "123", False),
])
def test_ct_match_examples(a, b, expected):
    assert ct_match(digits(a), digits(b)) is expected


@given(st.lists(st.integers(0, 3), min_size=1, max_size=8),
       st.lists(st.integers(0, 3), min_size=1, max_size=8))
def test_ct_match_agrees_with_tree_shape(a, b):
    if len(a) == len(b):
        same = build_cartesian_tree(a).shape() == build_cartesian_tree(b).shape()
        assert ct_match(a, b) is same


def test_window_access_examples():
    pd = digits("001212141")
    assert [pd_window_access(pd, 3, j) for j in range(1, 8)] == digits("0012141")
    assert [pd_window_access(pd, 1, j) for j in range(1, 10)] == pd
    assert pd_window_access(pd, 4, 1) == 0


@given(texts)
def test_window_access_matches_reencoding(s):
    pd = pd_encode(s)
    for i in range(1, len(s) + 1):
        suffix = naive_pd(s[i - 1:])
        assert [pd_window_access(pd, i, j) for j in range(1, len(s) - i + 2)] == suffix


def test_dag_examples():
    edges = {(2, 3), (2, 4), (4, 5), (4, 6), (6, 7), (4, 8), (8, 9)}
    assert set(dag_from_pd(digits("001212141"))) == edges
    assert dag_from_pd(digits("0012")) == [(2, 3), (2, 4)]
    assert dag_from_pd([0]) == []
    assert dag_from_fp(digits("0200")) == [(2, 3), (2, 4)]
    assert dag_from_fp([0, 0, 0]) == []


def test_dag_round_trip_fixture():
    s = digits("316486759")
    assert sorted(dag_from_fp(fp_encode(s))) == sorted(dag_from_pd(pd_encode(s)))


@given(texts)
def test_dag_from_fp_recovers_pointer_dag(s):
    assert sorted(dag_from_fp(fp_encode(s))) == sorted(dag_from_pd(pd_encode(s)))
    assert in_degrees(len(s), dag_from_pd(pd_encode(s))) == fp_encode(s)


def test_dag_from_fp_rejects_impossible_counts():
    with pytest.raises(ValueError):
        dag_from_fp([0, 3, 0])


@pytest.mark.parametrize("n", range(1, 7))
def test_fp_and_pd_equality_coincide_exhaustively(n):
    by_pd = {}
    for s in itertools.product(range(3), repeat=n):
        by_pd.setdefault(tuple(pd_encode(s)), set()).add(tuple(fp_encode(s)))
    fps = [next(iter(v)) for v in by_pd.values()]
    assert all(len(v) == 1 for v in by_pd.values())
    assert len(set(fps)) == len(fps)
