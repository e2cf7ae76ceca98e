"""
Reversed tries: parsing, canonical ids, ancestor tables, PD random access
on path strings, and the FP-trie quotient.

A trie is stored with canonical ids ``1..N`` assigned bottom-up by level
(deepest level first, ties by external id) so the root is ``N``.  The path
string of a node ``x`` is read from ``x`` up to the root: its first symbol
is the label of the edge above ``x``.  Per-node lists use index 0 as an
unused slot so canonical ids index them directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .encodings import MAX_CHAR, SlidingPdState


class TrieFormatError(ValueError):
    pass


def _ext_key(token: str):
    # numeric ids sort numerically, everything else after them as text
    try:
        return (0, int(token), "")
    except ValueError:
        return (1, 0, token)


def _build_jumps(up0: list[int]) -> list[list[int]]:
    """Binary-lifting tables; ``up0[x]`` is the parent of ``x`` (self at a top)."""
    jumps = [up0]
    total = len(up0)
    while (1 << len(jumps)) < total:
        prev = jumps[-1]
        jumps.append([prev[prev[x]] for x in range(total)])
    return jumps


def _jump(jumps: list[list[int]], x: int, j: int) -> int:
    k = 0
    while j:
        if j & 1:
            x = jumps[k][x]
        j >>= 1
        k += 1
    return x


class ReversedTrie:
    """Labelled tree with canonical ids and the tables for PD random access.

    ``na[x][a]`` is the deepest proper ancestor of ``x`` whose parent edge
    carries the ``a``-th smallest label (the root when there is none) and
    ``cnt[x][a]`` counts such edges on the path from ``x`` to the root.
    Labels are addressed by their rank in :attr:`alphabet`.
    """

    def __init__(self, parent: list[int], label: list[int], ext_ids: list[str] | None = None):
        self.N = len(parent) - 1
        self.root = self.N
        self.parent = parent
        self.label = label
        self.ext_ids = ext_ids
        depth = [0] * (self.N + 1)
        for x in range(self.N - 1, 0, -1):
            depth[x] = depth[parent[x]] + 1
        self.depth = depth
        self.children: list[list[int]] = [[] for _ in range(self.N + 1)]
        for x in range(1, self.N):
            self.children[parent[x]].append(x)
        self.alphabet = sorted({label[x] for x in range(1, self.N)})
        self.sigma = len(self.alphabet)
        rank = {c: r for r, c in enumerate(self.alphabet)}
        self.label_rank = [-1] * (self.N + 1)
        for x in range(1, self.N):
            self.label_rank[x] = rank[label[x]]
        up0 = list(parent)
        up0[0] = 0
        up0[self.root] = self.root
        self.jumps = _build_jumps(up0)
        self.build_na()

    @property
    def height(self) -> int:
        return max(self.depth)

    def level_anc(self, x: int, j: int) -> int:
        """The ``j``-th ancestor of ``x``."""
        if not 0 <= j <= self.depth[x]:
            raise ValueError(f"level {j} outside 0..{self.depth[x]} for node {x}")
        return _jump(self.jumps, x, j)

    def path_string(self, x: int, length: int | None = None) -> list[int]:
        out = []
        limit = self.depth[x] if length is None else min(length, self.depth[x])
        for _ in range(limit):
            out.append(self.label[x])
            x = self.parent[x]
        return out

    def build_na(self) -> None:
        """Fill ``na``, ``cnt`` and the per-label predecessor jump tables.

        Parents have larger ids than children, so a descending id scan
        visits every node after its parent.
        """
        N, sigma, root = self.N, self.sigma, self.root
        label_rank, parent = self.label_rank, self.parent
        na: list[list[int]] = [[]] * (N + 1)
        cnt: list[list[int]] = [[]] * (N + 1)
        na[root] = [root] * sigma
        cnt[root] = [0] * sigma
        for x in range(N - 1, 0, -1):
            p = parent[x]
            row = list(na[p])
            if p != root:
                row[label_rank[p]] = p
            na[x] = row
            c = list(cnt[p])
            c[label_rank[x]] += 1
            cnt[x] = c
        self.na = na
        self.cnt = cnt
        up0 = [0] * (N + 1)
        up0[root] = root
        for x in range(1, N):
            up0[x] = na[x][label_rank[x]]
        self.chain_jumps = _build_jumps(up0)

    def pd_access(self, x: int, ell: int) -> int:
        """``PD(str(x))[ell]``.

        With ``z`` the node ``ell - 1`` levels above ``x`` and ``b`` the label
        above ``z``, the answer is the distance from ``z`` down to the
        shallowest edge below it (on the path to ``x``) whose label is at
        most ``b``.  For each such label the shallowest occurrence is found
        by jumping along that label's predecessor chain.
        """
        if not 1 <= ell <= self.depth[x]:
            raise ValueError(f"position {ell} outside 1..{self.depth[x]} for node {x}")
        if ell == 1:
            return 0
        z = _jump(self.jumps, x, ell - 1)
        b = self.label_rank[z]
        dz = self.depth[z]
        cx, cz = self.cnt[x], self.cnt[z]
        own = self.label_rank[x]
        na_x = self.na[x]
        depth, chain = self.depth, self.chain_jumps
        best = 0
        for a in range(b + 1):
            c = cx[a] - cz[a]
            if c <= 0:
                continue
            y = x if own == a else na_x[a]
            if c > 1:
                y = _jump(chain, y, c - 1)
            d = depth[y] - dz
            if not best or d < best:
                best = d
        return best

    def write_id_map(self) -> str:
        lines = [f"{ext}\t{cid}" for cid, ext in enumerate(self.ext_ids or [], 0) if cid]
        return "\n".join(lines) + ("\n" if lines else "")


def pd_access_trie(t: ReversedTrie, i: int, ell: int) -> int:
    return t.pd_access(i, ell)


def level_anc(t: ReversedTrie, x: int, j: int) -> int:
    return t.level_anc(x, j)


def trie_from_records(records: Iterable[tuple[str, str | None, int | None]]) -> ReversedTrie:
    """Canonicalise ``(ext_id, ext_parent or None, label)`` records."""
    parent_of: dict[str, str | None] = {}
    label_of: dict[str, int] = {}
    roots = []
    for ext, par, lab in records:
        if ext in parent_of:
            raise TrieFormatError(f"duplicate node id {ext!r}")
        parent_of[ext] = par
        if par is None:
            roots.append(ext)
        else:
            if lab is None:
                raise TrieFormatError(f"node {ext!r} has a parent but no label")
            if not 0 <= lab <= MAX_CHAR:
                raise TrieFormatError(f"label out of range on node {ext!r}: {lab}")
            label_of[ext] = lab
    if len(roots) != 1:
        raise TrieFormatError(f"expected exactly one root, found {len(roots)}")
    kids: dict[str, list[str]] = {ext: [] for ext in parent_of}
    for ext, par in parent_of.items():
        if par is not None:
            if par not in parent_of:
                raise TrieFormatError(f"node {ext!r} refers to unknown parent {par!r}")
            kids[par].append(ext)
    for par, ks in kids.items():
        seen = set()
        for k in ks:
            if label_of[k] in seen:
                raise TrieFormatError(f"node {par!r} has two children labelled {label_of[k]}")
            seen.add(label_of[k])

    root = roots[0]
    levels = [[root]]
    reached = 1
    while True:
        nxt = [k for ext in levels[-1] for k in kids[ext]]
        if not nxt:
            break
        reached += len(nxt)
        levels.append(nxt)
    if reached != len(parent_of):
        raise TrieFormatError("nodes unreachable from the root (cycle or forest)")

    ordered = [ext for level in reversed(levels) for ext in sorted(level, key=_ext_key)]
    N = len(ordered)
    cid = {ext: k for k, ext in enumerate(ordered, 1)}
    parent = [0] * (N + 1)
    label = [0] * (N + 1)
    for ext, k in cid.items():
        par = parent_of[ext]
        if par is not None:
            parent[k] = cid[par]
            label[k] = label_of[ext]
    return ReversedTrie(parent, label, [""] + ordered)


def parse_trie(text: str) -> ReversedTrie:
    """Parse ``<ext_id> <ext_parent|-> <label>`` lines (root: ``<id> -``).

    Blank lines and ``#`` comments are ignored.
    """
    records = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 2 and parts[1] == "-":
            records.append((parts[0], None, None))
        elif len(parts) == 3 and parts[1] != "-":
            try:
                lab = int(parts[2])
            except ValueError:
                raise TrieFormatError(f"line {lineno}: label is not an integer: {parts[2]!r}")
            records.append((parts[0], parts[1], lab))
        else:
            raise TrieFormatError(f"line {lineno}: malformed node line {raw!r}")
    if not records:
        raise TrieFormatError("empty trie document")
    return trie_from_records(records)


def chain_trie(s: Sequence[int]) -> ReversedTrie:
    """Path-shaped trie whose deepest node spells ``s``.

    Canonical id ``i`` spells ``s[i-1:]``, so ids coincide with text
    positions.
    """
    n = len(s)
    parent = [0] * (n + 2)
    label = [0] * (n + 2)
    for i in range(1, n + 1):
        parent[i] = i + 1
        label[i] = s[i - 1]
    return ReversedTrie(parent, label, [""] + [str(i) for i in range(1, n + 2)])


@dataclass
class FpNode:
    id: int
    parent: int
    fp: int
    depth: int
    members: list[int] = field(default_factory=list)
    front: list[int] = field(default_factory=list)


class FpTrie:
    """Quotient of a reversed trie by equality of FP-encoded path strings.

    Nodes are keyed by their id, the smallest canonical trie id in their
    class; the root shares the trie root's id.  ``front`` holds the
    ascending front pointers of the representative's PD.
    """

    def __init__(self, nodes: dict[int, FpNode], root: int, class_of: list[int]):
        self.nodes = nodes
        self.root = root
        self.class_of = class_of

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def num_classes(self) -> int:
        return len(self.nodes) - 1

    def ids(self) -> list[int]:
        return sorted(k for k in self.nodes if k != self.root)

    def path_labels(self, v: int) -> list[int]:
        out = []
        while v != self.root:
            node = self.nodes[v]
            out.append(node.fp)
            v = node.parent
        return out


def build_fp_trie(t: ReversedTrie) -> FpTrie:
    """Depth-first pass carrying a sliding PD state along the current path.

    Descending into ``x`` prepends its edge label; the positions resolved by
    that prepend are the front pointers of ``PD(str(x))`` and their count is
    the FP value of ``x``.  Siblings' classes merge when their parents share
    a class and their FP values agree.
    """
    root = t.root
    class_key: dict[tuple[int, int], int] = {}
    class_of = [0] * (t.N + 1)
    class_of[root] = root
    fronts: dict[int, list[int]] = {}
    members: dict[int, list[int]] = {}
    fp_of: dict[int, int] = {}
    state = SlidingPdState(0, undoable=True)
    stack: list[tuple[int, bool]] = [(c, True) for c in t.children[root]]
    while stack:
        x, entering = stack.pop()
        if not entering:
            state.undo()
            continue
        resolved = state.prepend(t.label[x])
        key = (class_of[t.parent[x]], len(resolved))
        cls = class_key.get(key)
        if cls is None:
            cls = class_key[key] = x
            members[cls] = []
            fp_of[cls] = len(resolved)
            # members of a class share their PD, hence their front pointers
            fronts[cls] = list(resolved)
        members[cls].append(x)
        class_of[x] = cls
        stack.append((x, False))
        stack.extend((c, True) for c in t.children[x])

    # relabel each class by its smallest member
    rename = {cls: min(ms) for cls, ms in members.items()}
    rename[root] = root
    nodes = {root: FpNode(root, -1, 0, 0)}
    for cls, ms in members.items():
        v = rename[cls]
        rep_parent = t.parent[v]
        nodes[v] = FpNode(v, rename[class_of[rep_parent]], fp_of[cls], t.depth[v],
                          sorted(ms), fronts[cls])
    final_class = [rename[c] if c else 0 for c in class_of]
    return FpTrie(nodes, root, final_class)
