"""
Cartesian-tree pattern matching with a position heap.

The pattern is cut greedily into blocks, each the longest prefix of the
remainder whose (re-anchored) PD encoding is spelled by a heap node.  With
one block the answer is read off a subtree plus maximal reach pointers of
the path above it.  With several blocks, candidates come from the path to
the first block's node, are filtered block by block with the descendant
condition, and the survivors are verified on the positions where a block's
own PD is zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .encodings import pd_encode, pd_window_access
from .heap import ROOT, Cph, PositionHeap
from .trie_heap import TrieCph


@dataclass
class Factorization:
    nodes: list[int]
    lengths: list[int]
    lsum: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.lsum:
            acc = [0]
            for n in self.lengths:
                acc.append(acc[-1] + n)
            self.lsum = acc

    @property
    def k(self) -> int:
        return len(self.nodes)

    def blocks(self):
        return list(zip(self.nodes, self.lengths))


def _factorize_pd(heap: PositionHeap, pdp: Sequence[int]) -> Factorization:
    m = len(pdp)
    nodes, lengths = [], []
    start = 1
    child = heap.child
    while start <= m:
        v = ROOT
        j = 1
        while start + j - 1 <= m:
            c = child(v, pd_window_access(pdp, start, j))
            if c < 0:
                break
            v = c
            j += 1
        if v == ROOT:
            raise ValueError("heap has no node for a single-symbol block")
        nodes.append(v)
        lengths.append(j - 1)
        start += j - 1
    return Factorization(nodes, lengths)


def factorize(heap: PositionHeap, p: Sequence[int]) -> Factorization:
    if not p:
        raise ValueError("empty pattern")
    return _factorize_pd(heap, pd_encode(p))


def _block_zeros(pdp: Sequence[int], fact: Factorization) -> list[int]:
    """Pattern positions where the enclosing block's own PD is zero."""
    out = []
    for l, length in enumerate(fact.lengths):
        base = fact.lsum[l]
        for y in range(1, length + 1):
            if pd_window_access(pdp, base + 1, y) == 0:
                out.append(base + y)
    return out


def _single_block(heap: PositionHeap, u: int) -> list[int]:
    """Positions whose suffix encoding starts with the string of ``u``."""
    position, mrp = heap.position, heap.mrp
    hits = [position[v] for v in heap.subtree(u)]
    v = heap.parent[u]
    while v > ROOT:
        if heap.is_descendant(mrp[v], u):
            hits.append(position[v])
        v = heap.parent[v]
    return hits


def _first_block_candidates(heap: PositionHeap, u1: int) -> list[int]:
    out = []
    v = u1
    mrp = heap.mrp
    while v > ROOT:
        if mrp[v] == u1:
            out.append(v)
        v = heap.parent[v]
    return out


def query_string(cph: Cph, p: Sequence[int], stats: dict | None = None) -> list[int]:
    """All 1-based positions ``i`` with ``S[i..i+m-1]`` ct-matching ``p``.

    ``stats``, when given, receives the block count and the candidate,
    survivor and verification counts of the run.
    """
    m = len(p)
    if m == 0:
        raise ValueError("empty pattern")
    if not cph.has_mrp:
        raise ValueError("heap needs maximal reach pointers before querying")
    n = cph.n
    if stats is not None:
        stats.update(k=0, candidates=0, survivors=0, checks_per_survivor=0)
    if m > n:
        return []
    pdp = pd_encode(p)
    fact = _factorize_pd(cph, pdp)
    if stats is not None:
        stats.update(k=fact.k, lengths=list(fact.lengths))
    if fact.k == 1:
        return sorted(_single_block(cph, fact.nodes[0]))

    position, mrp, pos_to_node, pd = cph.position, cph.mrp, cph.pos_to_node, cph.pd
    is_desc = cph.is_descendant
    candidates = [position[v] for v in _first_block_candidates(cph, fact.nodes[0])]
    survivors = []
    for i in candidates:
        if i + m - 1 > n:
            continue
        for l in range(1, fact.k):
            x = pos_to_node[i + fact.lsum[l]]
            ul = fact.nodes[l]
            if not (is_desc(x, ul) or is_desc(mrp[x], ul)):
                break
        else:
            survivors.append(i)
    zeros = _block_zeros(pdp, fact)
    hits = [i for i in survivors
            if all(pd_window_access(pd, i, q) == pdp[q - 1] for q in zeros)]
    if stats is not None:
        stats.update(candidates=len(candidates), survivors=len(survivors),
                     checks_per_survivor=len(zeros))
    return sorted(hits)


def query_trie(heap: TrieCph, p: Sequence[int], stats: dict | None = None) -> list[int]:
    """All canonical trie ids ``x`` whose path string starts with a ct-match of ``p``.

    Works on FP classes and reports every member of each matching class.
    """
    m = len(p)
    if m == 0:
        raise ValueError("empty pattern")
    if not heap.has_mrp:
        raise ValueError("heap needs maximal reach pointers before querying")
    t, f = heap.trie, heap.fp
    if stats is not None:
        stats.update(k=0, candidates=0, survivors=0, checks_per_survivor=0)
    if m > t.height:
        return []
    pdp = pd_encode(p)
    fact = _factorize_pd(heap, pdp)
    if stats is not None:
        stats.update(k=fact.k, lengths=list(fact.lengths))
    if fact.k == 1:
        classes = _single_block(heap, fact.nodes[0])
    else:
        position, mrp, pos_to_node = heap.position, heap.mrp, heap.pos_to_node
        is_desc = heap.is_descendant
        candidates = [position[v] for v in _first_block_candidates(heap, fact.nodes[0])]
        survivors = []
        for w in candidates:
            if f.nodes[w].depth < m:
                continue
            for l in range(1, fact.k):
                x = pos_to_node[f.class_of[t.level_anc(w, fact.lsum[l])]]
                ul = fact.nodes[l]
                if not (is_desc(x, ul) or is_desc(mrp[x], ul)):
                    break
            else:
                survivors.append(w)
        zeros = _block_zeros(pdp, fact)
        classes = [w for w in survivors
                   if all(t.pd_access(w, q) == pdp[q - 1] for q in zeros)]
        if stats is not None:
            stats.update(candidates=len(candidates), survivors=len(survivors),
                         checks_per_survivor=len(zeros))
    return sorted(x for w in classes for x in f.nodes[w].members)
