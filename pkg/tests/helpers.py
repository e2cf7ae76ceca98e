"""Shared checks for the test modules."""

from cph.encodings import front_pointers, pd_encode, pd_window_access
from cph.heap import ROOT


def digits(s):
    return [int(c) for c in s]


def strip_first(pd):
    """Encoding of the string with its first character removed."""
    return [pd_window_access(pd, 2, j) for j in range(1, len(pd))]


def walk_reach(heap, word):
    """Deepest node spelling a prefix of ``word``, found by a plain root walk."""
    v = ROOT
    for c in word:
        kids = {heap.label[x]: x for x in range(1, len(heap)) if heap.parent[x] == v}
        if c not in kids:
            break
        v = kids[c]
    return v


def heap_invariants(heap, sigma, expected_nodes):
    """Return a list of violated invariants (empty when the heap is sound)."""
    problems = []
    if len(heap) != expected_nodes:
        problems.append(f"node count {len(heap)} != {expected_nodes}")
    links = list(heap.rsl_items())
    targets = [u for _, _, u in links]
    if len(set(targets)) != len(targets):
        problems.append("a node is the target of two reversed suffix links")
    keys = [(v, a) for v, a, _ in links]
    if len(set(keys)) != len(keys):
        problems.append("an rsl slot holds two links")
    by_target = {u: (v, a) for v, a, u in links}
    for v, a, u in links:
        if not 0 <= a <= sigma:
            problems.append(f"rsl({v}, {a}) label exceeds sigma {sigma}")
        word = heap.path_string(u)
        if heap.path_string(v) != strip_first(word):
            problems.append(f"rsl({v}, {a}) = {u} does not strip one character")
        if a != len(front_pointers(word)):
            problems.append(f"rsl({v}, {a}) = {u} label is not the front pointer count")
        pu = heap.parent[u]
        if pu != ROOT and pu in by_target:
            pv, pa = by_target[pu]
            if pv != heap.parent[v] or not 0 <= a - pa <= 1:
                problems.append(f"rsl({v}, {a}) and rsl({pv}, {pa}) break monotonicity")
    kids = [0] * len(heap)
    for x in range(1, len(heap)):
        kids[heap.parent[x]] += 1
        if not 0 <= heap.label[x] < heap.depth[x]:
            problems.append(f"edge label {heap.label[x]} impossible at depth {heap.depth[x]}")
    for v in range(len(heap)):
        if kids[v] > heap.depth[v] + 1:
            problems.append(f"node {v} has {kids[v]} children at depth {heap.depth[v]}")
    return problems


def suffix_words(s):
    return [pd_encode(s[i:]) for i in range(len(s) - 1, -1, -1)]
