"""
Position heap over the classes of an FP-trie.

Classes are inserted in decreasing id order, i.e. shallow path strings
first, mirroring the shortest-suffix-first order of the string heap.  The
parent of each new node is located through reversed suffix links: per label
``a``, the nodes that own ``rsl(., a)`` are marked, and a nearest marked
ancestor query finds the deepest usable link within the depth range where
``a`` is the right front pointer count.
"""

from __future__ import annotations

from bisect import bisect_right

from .heap import ROOT, PositionHeap, finalize
from .trie import FpTrie, ReversedTrie, build_fp_trie


class NearestMarkedAncestor:
    """Nearest marked ancestor-or-self per label over a growing tree.

    Queries leave compressed up-pointers on the walked path.  A pointer is
    stamped with its label's mark counter and ignored once another node has
    been marked for that label, because the new mark may sit inside a hop.
    Leaf insertions never invalidate pointers.
    """

    def __init__(self, parent: list[int]):
        self.parent = parent
        self.marks: dict[int, set[int]] = {}
        self._up: dict[int, dict[int, tuple[int | None, int]]] = {}
        self._epoch: dict[int, int] = {}

    def mark(self, v: int, a: int) -> None:
        self.marks.setdefault(a, set()).add(v)
        self._epoch[a] = self._epoch.get(a, 0) + 1

    def is_marked(self, v: int, a: int) -> bool:
        return v in self.marks.get(a, ())

    def query(self, v: int, a: int) -> int | None:
        marked = self.marks.get(a)
        if not marked:
            return None
        up = self._up.setdefault(a, {})
        epoch = self._epoch[a]
        parent = self.parent
        path = []
        x = v
        while True:
            if x in marked:
                found = x
                break
            hop = up.get(x)
            if hop is not None and hop[1] == epoch:
                found = hop[0]
                break
            path.append(x)
            x = parent[x]
            if x < 0:
                found = None
                break
        for y in path:
            up[y] = (found, epoch)
        return found


class DynamicLevelAncestor:
    """Binary-lifting tables extended on every leaf insertion."""

    def __init__(self, capacity: int):
        self.levels = max(1, capacity.bit_length())
        self.up: list[list[int]] = [[ROOT] for _ in range(self.levels)]

    def add_leaf(self, x: int, parent: int) -> None:
        up = self.up
        assert len(up[0]) == x
        up[0].append(parent)
        for k in range(1, self.levels):
            up[k].append(up[k - 1][up[k - 1][x]])

    def anc(self, x: int, j: int) -> int:
        k = 0
        while j:
            if j & 1:
                x = self.up[k][x]
            j >>= 1
            k += 1
        return x


class TrieCph(PositionHeap):
    """Heap whose node positions are FP-trie ids.

    ``pos_to_node`` maps an FP-trie id to its heap node.  ``max_label_steps``
    is the largest number of label decrements a single insertion needed.
    """

    def __init__(self, trie: ReversedTrie, fp: FpTrie):
        super().__init__(trie.sigma + 2)
        self.trie = trie
        self.fp = fp
        self.sigma = trie.sigma
        self.pos_to_node: dict[int, int] = {fp.root: ROOT}
        self.max_label_steps = 0

    def node_at_position(self, w: int) -> int:
        return self.pos_to_node[w]


def build_cph_trie(t: ReversedTrie, f: FpTrie | None = None) -> TrieCph:
    if f is None:
        f = build_fp_trie(t)
    heap = TrieCph(t, f)
    depth = heap.depth
    nma = NearestMarkedAncestor(heap.parent)
    la = DynamicLevelAncestor(len(f) + 1)
    kids: dict[tuple[int, int], int] = {}
    heap.nma = nma
    heap.kids = kids

    for w in sorted(f.ids(), reverse=True):
        node = f.nodes[w]
        front = node.front
        s = heap.pos_to_node[node.parent]
        D = depth[s]

        # label a applies to ancestors of depth t with front[a-1] <= t + 1 < front[a]
        a = bisect_right(front, D + 1)
        hi = D
        steps = 0
        while True:
            steps += 1
            lo = front[a - 1] - 1 if a else 0
            y = nma.query(la.anc(s, D - hi), a)
            if y is not None and depth[y] >= lo:
                p = heap.get_rsl(y, a)
                break
            if a == 0:
                # no rsl(root, 0) yet: the heap is still empty
                p = ROOT
                break
            hi = lo - 1
            a -= 1
        heap.max_label_steps = max(heap.max_label_steps, steps)

        # the link lands on a prefix of PD(str(w)); extend it while it is present
        j = depth[p] + 1
        while True:
            if j > node.depth:
                raise AssertionError(f"path string of class {w} already present")
            c = t.pd_access(w, j)
            q = kids.get((p, c))
            if q is None:
                break
            p = q
            j += 1

        x = heap.add_node(p, c, w)
        kids[(p, c)] = x
        la.add_leaf(x, p)
        heap.pos_to_node[w] = x

        # new link rsl(sl(x), |F_x|) = x, when sl(x) is already a node
        dp = depth[p]
        if dp <= D:
            src = la.anc(s, D - dp)
        else:
            src = s
            for jj in range(D + 1, dp + 1):
                src = kids.get((src, t.pd_access(node.parent, jj)))
                if src is None:
                    break
        if src is not None:
            b = bisect_right(front, dp + 1)
            heap.set_rsl(src, b, x)
            nma.mark(src, b)
    return heap


def nma_query(heap: TrieCph, v: int, a: int) -> int:
    found = heap.nma.query(v, a)
    if found is None:
        raise LookupError(f"no ancestor of node {v} is marked for label {a}")
    return found


def compute_mrp_trie(heap: TrieCph) -> TrieCph:
    if not heap.finalized:
        finalize(heap)
    t, f = heap.trie, heap.fp
    depth, mrp = heap.depth, heap.mrp
    for w, x in heap.pos_to_node.items():
        if x == ROOT:
            continue
        limit = f.nodes[w].depth
        node = x
        j = depth[x] + 1
        while j <= limit:
            c = heap.child(node, t.pd_access(w, j))
            if c < 0:
                break
            node = c
            j += 1
        mrp[x] = node
    heap.has_mrp = True
    return heap


def build_trie_index(t: ReversedTrie) -> TrieCph:
    """FP-trie, heap, finalization and maximal reach pointers in one call."""
    heap = build_cph_trie(t, build_fp_trie(t))
    finalize(heap)
    compute_mrp_trie(heap)
    return heap
