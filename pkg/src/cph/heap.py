"""
Cartesian-tree position heaps over strings.

A position heap is a trie that receives one node per text position: the
shortest prefix of that suffix's PD encoding not already in the trie.  Nodes
are inserted for the suffixes in increasing length, so node 0 is the root,
node 1 belongs to position ``n`` and node ``n`` to position 1.

Node data is kept in parallel lists indexed by node number.  Children are
not needed while building; :func:`finalize` lays them out once, sorted by
label, in compressed (CSR) form together with preorder intervals.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterator, Sequence

import numpy as np

from .encodings import SlidingPdState, check_sequence, pd_encode, pd_window_access

ROOT = 0


class PositionHeap:
    """Node storage shared by the string and trie heaps."""

    def __init__(self, stride: int):
        self.parent: list[int] = [-1]
        self.label: list[int] = [-1]
        self.depth: list[int] = [0]
        self.position: list[int] = [0]
        self.mrp: list[int] = [ROOT]
        # rsl(v, a) stored under the key v * stride + a
        self.stride = stride
        self.rsl: dict[int, int] = {}
        self.finalized = False
        self.has_mrp = False

    def __len__(self) -> int:
        return len(self.parent)

    @property
    def height(self) -> int:
        return max(self.depth)

    def add_node(self, parent: int, label: int, position: int) -> int:
        x = len(self.parent)
        self.parent.append(parent)
        self.label.append(label)
        self.depth.append(self.depth[parent] + 1)
        self.position.append(position)
        self.mrp.append(x)
        self.finalized = False
        return x

    # -- reversed suffix links -------------------------------------------

    def get_rsl(self, v: int, a: int) -> int | None:
        return self.rsl.get(v * self.stride + a)

    def set_rsl(self, v: int, a: int, u: int) -> None:
        key = v * self.stride + a
        if key in self.rsl:
            raise AssertionError(f"rsl({v}, {a}) written twice")
        self.rsl[key] = u

    def rsl_items(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(v, a, u)`` for every link ``rsl(v, a) = u``."""
        stride = self.stride
        for key, u in self.rsl.items():
            v, a = divmod(key, stride)
            yield v, a, u

    # -- finalized navigation --------------------------------------------

    def child(self, v: int, c: int) -> int:
        """Child of ``v`` along label ``c``, or -1."""
        lo, hi = self.child_start[v], self.child_start[v + 1]
        k = bisect_left(self.child_label, c, lo, hi)
        if k < hi and self.child_label[k] == c:
            return self.child_node[k]
        return -1

    def children(self, v: int) -> list[tuple[int, int]]:
        lo, hi = self.child_start[v], self.child_start[v + 1]
        return list(zip(self.child_label[lo:hi], self.child_node[lo:hi]))

    def is_descendant(self, x: int, u: int) -> bool:
        """True when ``x`` lies in the subtree of ``u`` (``x == u`` included)."""
        pre_in, pre_out = self.pre_in, self.pre_out
        return pre_in[u] <= pre_in[x] and pre_out[x] <= pre_out[u]

    def subtree(self, u: int) -> list[int]:
        r = self.rank[u]
        return self.order[r:r + self.size[u]]

    def path_to_root(self, v: int) -> list[int]:
        out = []
        while v != -1:
            out.append(v)
            v = self.parent[v]
        return out

    def path_string(self, v: int) -> list[int]:
        labels = []
        while v > ROOT:
            labels.append(self.label[v])
            v = self.parent[v]
        return labels[::-1]

    def descend(self, v: int, symbols: Sequence[int]) -> int:
        for c in symbols:
            v = self.child(v, c)
            if v < 0:
                break
        return v


def finalize(heap: PositionHeap) -> PositionHeap:
    """Sort children by label and assign preorder intervals.

    Edges are ordered with a two-pass LSD sort on (parent, label) pairs.
    Each node ``v`` gets an Euler interval ``[pre_in, pre_out]`` counted over
    both entries and exits, so the root spans ``[1, 2 * len(heap)]``.
    Relies on every node having a larger index than its parent.
    """
    total = len(heap)
    hp = heap.parent
    parent = np.asarray(hp[1:], dtype=np.int64)
    label = np.asarray(heap.label[1:], dtype=np.int64)
    order = np.argsort(label, kind="stable")
    order = order[np.argsort(parent[order], kind="stable")]
    start = np.zeros(total + 1, dtype=np.int64)
    np.cumsum(np.bincount(parent, minlength=total), out=start[1:])
    heap.child_node = (order + 1).tolist()
    heap.child_label = label[order].tolist()
    heap.child_start = start.tolist()

    size = [1] * total
    for x in range(total - 1, 0, -1):
        size[hp[x]] += size[x]
    # preorder offset of each child below its parent = sizes of earlier siblings
    sizes = np.asarray(size, dtype=np.int64)
    csr_size = sizes[order + 1]
    before = np.cumsum(csr_size) - csr_size
    offset = np.zeros(total, dtype=np.int64)
    offset[order + 1] = before - before[start[parent[order]]] + 1
    offset = offset.tolist()
    rank = [0] * total
    for x in range(1, total):
        rank[x] = rank[hp[x]] + offset[x]
    ranks = np.asarray(rank, dtype=np.int64)
    preorder = np.empty(total, dtype=np.int64)
    preorder[ranks] = np.arange(total)
    pre_in = 2 * ranks - np.asarray(heap.depth, dtype=np.int64) + 1
    heap.pre_in = pre_in.tolist()
    heap.pre_out = (pre_in + 2 * sizes - 1).tolist()
    heap.order = preorder.tolist()
    heap.rank = rank
    heap.size = size
    heap.finalized = True
    return heap


class Cph(PositionHeap):
    """Position heap of a text string.

    Node ``x`` belongs to the 1-based position ``n + 1 - x``; ``pd`` is the
    PD encoding of the whole text.  With a small alphabet the reversed
    suffix links live in a flat table indexed like the dict keys, which is
    markedly faster for large texts.
    """

    FLAT_STRIDE_LIMIT = 32

    def __init__(self, text: Sequence[int]):
        self.text = list(text)
        self.n = len(self.text)
        self.sigma = len(set(self.text))
        super().__init__(self.sigma + 1)
        self.pd = pd_encode(self.text)
        self.pos_to_node = [ROOT] * (self.n + 1)
        self.climb_steps = 0
        self.rsl_table: list[int] | None = None
        if self.stride <= self.FLAT_STRIDE_LIMIT:
            self.rsl_table = [0] * ((self.n + 1) * self.stride)

    def get_rsl(self, v: int, a: int) -> int | None:
        if self.rsl_table is None:
            return super().get_rsl(v, a)
        if not 0 <= a < self.stride:
            return None
        return self.rsl_table[v * self.stride + a] or None

    def set_rsl(self, v: int, a: int, u: int) -> None:
        if self.rsl_table is None:
            return super().set_rsl(v, a, u)
        key = v * self.stride + a
        if self.rsl_table[key]:
            raise AssertionError(f"rsl({v}, {a}) written twice")
        self.rsl_table[key] = u

    def rsl_items(self) -> Iterator[tuple[int, int, int]]:
        if self.rsl_table is None:
            yield from super().rsl_items()
            return
        stride = self.stride
        for key, u in enumerate(self.rsl_table):
            if u:
                v, a = divmod(key, stride)
                yield v, a, u

    def node_at_position(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} outside 1..{self.n}")
        return self.pos_to_node[i]

    def suffix_symbol(self, i: int, j: int) -> int:
        """``PD(S[i..])[j]``."""
        return pd_window_access(self.pd, i, j)


def build_cph_string(s: Sequence[int]) -> Cph:
    """Right-to-left online construction of the heap of ``s``.

    At step ``i`` the walk climbs from the node of suffix ``i + 1`` until an
    ancestor ``v`` has the reversed suffix link labelled with the number of
    front pointers of ``PD(S[i..i+|v|])``; that link leads to the parent of
    the new node.  The front pointers come from the sliding PD state, so no
    suffix encoding is ever materialised.
    """
    cph = Cph(check_sequence(s))
    n = cph.n
    if n == 0:
        raise ValueError("cannot index an empty text")
    text, pd, stride = cph.text, cph.pd, cph.stride
    parent, label, depth = cph.parent, cph.label, cph.depth
    parent.append(ROOT)
    label.append(0)
    depth.append(1)
    flat = cph.rsl_table is not None
    if flat:
        table = cph.rsl_table
        table[0] = 1
    else:
        table = cph.rsl
        table[0] = 1

    state = SlidingPdState(n + 1)
    state.prepend(text[n - 1])
    prepend = state.prepend
    u = 1
    du = 1
    total_steps = 0
    for i in range(n - 1, 0, -1):
        fps = prepend(text[i - 1])
        k = len(fps)
        vhat = u
        v = parent[u]
        t = du - 1
        # k = number of front pointers of PD(S[i..]) within its first t + 1 positions
        while k and fps[k - 1] > t + 1:
            k -= 1
        steps = 1
        p = table[v * stride + k] if flat else table.get(v * stride + k)
        while not p:
            vhat = v
            v = parent[v]
            t -= 1
            steps += 1
            while k and fps[k - 1] > t + 1:
                k -= 1
            p = table[v * stride + k] if flat else table.get(v * stride + k)
        total_steps += steps

        # the new node sits at depth t + 2; its label is PD(S[i..])[t + 2]
        g = i + t + 1
        d = pd[g - 1]
        x = len(parent)
        parent.append(p)
        label.append(d if d and g - d >= i else 0)
        du = t + 2
        depth.append(du)
        b = k + 1 if k < len(fps) and fps[k] == du else k
        key = vhat * stride + b
        if flat:
            assert not table[key], f"rsl({vhat}, {b}) written twice"
        else:
            assert key not in table, f"rsl({vhat}, {b}) written twice"
        table[key] = x
        u = x

    cph.position = [0] + list(range(n, 0, -1))
    cph.pos_to_node = [ROOT] + list(range(n, 0, -1))
    cph.mrp = list(range(n + 1))
    cph.climb_steps = total_steps
    return cph


def compute_mrp(cph: Cph) -> Cph:
    """Maximal reach pointers by walking each suffix's PD down the heap.

    Every node spells a prefix of its own suffix encoding, so the walk can
    start at the node itself instead of the root.
    """
    if not cph.finalized:
        finalize(cph)
    pd, n = cph.pd, cph.n
    child_start, child_label, child_node = cph.child_start, cph.child_label, cph.child_node
    depth, position, mrp = cph.depth, cph.position, cph.mrp
    for x in range(1, len(cph)):
        i = position[x]
        node = x
        g = i + depth[x]
        last = n
        while g <= last:
            d = pd[g - 1]
            c = d if d and g - d >= i else 0
            lo, hi = child_start[node], child_start[node + 1]
            if lo == hi:
                break
            k = bisect_left(child_label, c, lo, hi)
            if k == hi or child_label[k] != c:
                break
            node = child_node[k]
            g += 1
        mrp[x] = node
    cph.has_mrp = True
    return cph


def build_string_index(s: Sequence[int]) -> Cph:
    """Build, finalize and attach maximal reach pointers in one call."""
    cph = build_cph_string(s)
    finalize(cph)
    compute_mrp(cph)
    return cph
