"""
Brute-force references and deterministic instance generators.

Nothing here shares code with the indexed paths beyond :func:`pd_encode`
applied to freshly sliced windows.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .encodings import pd_encode
from .trie import ReversedTrie, chain_trie, trie_from_records

STRING_FAMILIES = ("uniform-random", "increasing", "all-equal", "lemma8-family")
TRIE_FAMILIES = ("random-trie", "chain-trie")


def brute_match_string(s: Sequence[int], p: Sequence[int]) -> list[int]:
    m = len(p)
    if m == 0 or m > len(s):
        return []
    target = pd_encode(p)
    return [i + 1 for i in range(len(s) - m + 1) if pd_encode(s[i:i + m]) == target]


def brute_match_trie(t: ReversedTrie, p: Sequence[int]) -> list[int]:
    m = len(p)
    if m == 0:
        return []
    target = pd_encode(p)
    out = []
    for x in range(1, t.N):
        if t.depth[x] < m:
            continue
        window = []
        y = x
        for _ in range(m):
            window.append(t.label[y])
            y = t.parent[y]
        if pd_encode(window) == target:
            out.append(x)
    return out


def brute_position_heap(words: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Sequence hash tree by explicit prefix sets; returns each word's node string."""
    present = {()}
    out = []
    for w in words:
        w = tuple(w)
        k = 1
        while k <= len(w) and w[:k] in present:
            k += 1
        if k > len(w):
            raise ValueError("word is already a path of the tree")
        present.add(w[:k])
        out.append(w[:k])
    return out


def branching_string(k: int) -> list[int]:
    """``1 12 122 ... 12^k 1`` over {1, 2}.

    Its heap branches widely: for k = 4 the node spelling ``011`` has four
    children, one more than its depth.
    """
    out = [1]
    for j in range(1, k + 1):
        out += [1] + [2] * j
    out.append(1)
    return out


@dataclass(frozen=True)
class GenSpec:
    """Instance recipe.

    ``size`` is the text length for string families, the node count for
    ``random-trie``, the chain text length for ``chain-trie`` and ``k`` for
    ``lemma8-family``.
    """

    seed: int
    size: int
    sigma: int
    family: str = "uniform-random"


def generate(spec: GenSpec):
    if spec.sigma < 1:
        raise ValueError("sigma must be at least 1")
    if spec.size < 0:
        raise ValueError("size must be non-negative")
    rng = random.Random(spec.seed)
    fam = spec.family
    if fam == "uniform-random":
        return [rng.randint(1, spec.sigma) for _ in range(spec.size)]
    if fam == "increasing":
        return list(range(1, spec.size + 1))
    if fam == "all-equal":
        return [1] * spec.size
    if fam == "lemma8-family":
        return branching_string(spec.size)
    if fam == "chain-trie":
        return chain_trie([rng.randint(1, spec.sigma) for _ in range(spec.size)])
    if fam == "random-trie":
        return random_trie(rng, max(spec.size, 1), spec.sigma)
    raise ValueError(f"unknown family {fam!r}")


def random_trie(rng: random.Random, size: int, sigma: int) -> ReversedTrie:
    records = [("0", None, None)]
    used: list[set[int]] = [set()]
    open_nodes = [0]
    for x in range(1, size):
        while True:
            k = rng.randrange(len(open_nodes))
            p = open_nodes[k]
            c = rng.randint(1, sigma)
            if c not in used[p]:
                break
        used[p].add(c)
        if len(used[p]) == sigma:
            open_nodes[k] = open_nodes[-1]
            open_nodes.pop()
        used.append(set())
        open_nodes.append(x)
        records.append((str(x), str(p), c))
    return trie_from_records(records)
