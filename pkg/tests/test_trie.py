import random

import pytest

from cph.encodings import fp_encode, pd_encode
from cph.oracle import random_trie
from cph.trie import (TrieFormatError, build_fp_trie, chain_trie, level_anc, parse_trie,
                      pd_access_trie, trie_from_records)

CHAIN_5343 = """
# leaf-to-root labels 5 3 4 3
r -
a r 3
b a 4
c b 3
d c 5
"""

# two paths sharing the root's 3-child; leaves spell 5343 and 4253
TWO_PATHS = """
r -
a r 3
b a 4
c b 3
d c 5
e a 5
f e 2
g f 4
"""


def random_tries(count, seed=0, max_size=60, max_sigma=4):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_trie(rng, rng.randint(1, max_size), rng.randint(1, max_sigma))


def parent_walk(t, x, j):
    for _ in range(j):
        x = t.parent[x]
    return x


def test_two_node_document():
    t = parse_trie("root -\nleaf root 5\n")
    assert t.N == 2 and t.root == 2
    assert t.parent[1] == 2 and t.label[1] == 5
    assert t.write_id_map() == "leaf\t1\nroot\t2\n"


def test_chain_document_ids_follow_depth():
    t = parse_trie(CHAIN_5343)
    assert [t.ext_ids[x] for x in range(1, 6)] == ["d", "c", "b", "a", "r"]
    assert t.path_string(1) == [5, 3, 4, 3]
    assert t.height == 4


def test_ties_broken_by_numeric_then_text_id():
    t = parse_trie("0 -\n10 0 1\n9 0 2\nb 0 3\na 0 4\n")
    assert t.ext_ids[1:5] == ["9", "10", "a", "b"]


def test_chain_trie_ids_are_positions():
    s = [5, 3, 4, 3]
    t = chain_trie(s)
    for i in range(1, 5):
        assert t.path_string(i) == s[i - 1:]
    assert t.depth[t.root] == 0


@pytest.mark.parametrize("doc, message", [
    ("a -\nb -\n", "exactly one root"),
    ("a b 1\nb a 1\n", "exactly one root"),
    ("r -\nx r 1\nx r 2\n", "duplicate node id"),
    ("r -\nx q 1\n", "unknown parent"),
    ("r -\nx r 1\ny r 1\n", "two children"),
    ("r -\nx y 1\ny x 1\n", "unreachable"),
    ("r -\nx r one\n", "not an integer"),
    ("r - 3\n", "malformed"),
    ("r -\nx r -4\n", "out of range"),
    ("# nothing\n", "empty trie"),
])
def test_malformed_documents(doc, message):
    with pytest.raises(TrieFormatError, match=message):
        parse_trie(doc)


def test_records_need_labels():
    with pytest.raises(TrieFormatError):
        trie_from_records([("r", None, None), ("x", "r", None)])


def test_level_ancestor():
    t = parse_trie(CHAIN_5343)
    assert level_anc(t, 1, 0) == 1
    assert level_anc(t, 1, 4) == t.root
    assert level_anc(t, 1, 2) == parent_walk(t, 1, 2)
    with pytest.raises(ValueError):
        level_anc(t, 1, 5)
    for t in random_tries(50, seed=1):
        for x in range(1, t.N + 1):
            for j in range(t.depth[x] + 1):
                assert t.level_anc(x, j) == parent_walk(t, x, j)


def test_nearest_label_ancestor_tables():
    t = parse_trie(CHAIN_5343)
    rank3 = t.alphabet.index(3)
    assert t.cnt[1][rank3] == 2
    # deepest proper ancestor whose parent edge carries 3 is the leaf's parent
    assert t.na[1][rank3] == 2
    for t in random_tries(50, seed=2):
        for x in range(1, t.N):
            for r, c in enumerate(t.alphabet):
                y = t.parent[x]
                while y != t.root and t.label[y] != c:
                    y = t.parent[y]
                assert t.na[x][r] == y
                assert t.cnt[x][r] == t.path_string(x).count(c)


def test_pd_access_examples():
    t = parse_trie(CHAIN_5343)
    assert pd_encode(t.path_string(1)) == [0, 0, 1, 2]
    assert pd_access_trie(t, 1, 4) == 2
    assert pd_access_trie(t, 1, 3) == 1
    assert pd_access_trie(t, 1, 1) == 0


def test_pd_access_matches_reencoding():
    for t in random_tries(150, seed=3, max_sigma=6):
        for x in range(1, t.N):
            word = pd_encode(t.path_string(x))
            assert [t.pd_access(x, l) for l in range(1, len(word) + 1)] == word


def test_fp_trie_merges_equal_fp_paths():
    t = parse_trie(TWO_PATHS)
    f = build_fp_trie(t)
    d, g = t.ext_ids.index("d"), t.ext_ids.index("g")
    assert fp_encode(t.path_string(d)) == fp_encode(t.path_string(g)) == [0, 2, 0, 0]
    assert f.class_of[d] == f.class_of[g] == min(d, g)
    node = f.nodes[min(d, g)]
    assert node.members == sorted([d, g])
    assert node.fp == 0 and node.depth == 4


def test_fp_trie_of_chain_is_the_chain():
    t = chain_trie([2, 7, 1, 8, 2, 8])
    f = build_fp_trie(t)
    assert f.num_classes == 6
    for x in range(1, 7):
        assert f.nodes[x].members == [x]
        assert f.nodes[x].parent == x + 1


def test_fp_classes_are_fp_equivalence():
    for t in random_tries(150, seed=4):
        f = build_fp_trie(t)
        seen = {}
        for x in range(1, t.N):
            word = t.path_string(x)
            fp = fp_encode(word)
            v = f.class_of[x]
            assert f.nodes[v].fp == fp[0]
            assert f.path_labels(v) == fp
            assert f.nodes[v].depth == len(word)
            assert x in f.nodes[v].members
            assert seen.setdefault(tuple(fp), v) == v
        assert f.num_classes == len(seen)
        for v in f.ids():
            assert v == min(f.nodes[v].members)
            assert f.nodes[v].front == [i for i, p in enumerate(pd_encode(t.path_string(v)), 1)
                                        if i >= 2 and i - p == 1]


def test_random_trie_respects_alphabet():
    for t in random_tries(30, seed=5):
        for x in range(1, t.N):
            labels = [t.label[c] for c in t.children[x]]
            assert len(labels) == len(set(labels))
