"""
Sequence encodings for Cartesian-tree matching.

Sequences are plain lists of non-negative integers.  Encoded values
(parent distances, front pointer counts) do not depend on how positions are
numbered, but every *position* this module reports (front pointers, tree
nodes, DAG endpoints, window coordinates) is 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

MAX_CHAR = 2**32 - 1


def check_sequence(s: Sequence[int]) -> list[int]:
    """Return ``s`` as a list, rejecting negative or oversized characters."""
    out = list(s)
    for c in out:
        if not 0 <= c <= MAX_CHAR:
            raise ValueError(f"character out of range: {c!r}")
    return out


def pd_encode(s: Sequence[int]) -> list[int]:
    """Parent-distance encoding.

    ``pd[i]`` is the distance from position ``i`` back to the nearest
    position holding a value ``<= s[i]``, or 0 when there is none.
    """
    pd = [0] * len(s)
    stack: list[int] = []
    for i, c in enumerate(s):
        while stack and s[stack[-1]] > c:
            stack.pop()
        if stack:
            pd[i] = i - stack[-1]
        stack.append(i)
    return pd


def zero_positions(pd: Sequence[int]) -> list[int]:
    return [i + 1 for i, v in enumerate(pd) if v == 0]


def front_pointers(pd: Sequence[int]) -> list[int]:
    """Positions ``i >= 2`` whose parent distance points at position 1."""
    return [i for i in range(2, len(pd) + 1) if i - pd[i - 1] == 1]


class SlidingPdState:
    """Zero positions of the PD encoding of a window grown leftwards.

    Each :meth:`prepend` moves the window start one position to the left
    and returns the local positions (in the new window) that stopped being
    zeros.  Those are exactly the front pointers of the new window's PD.
    The pending list never holds more entries than the window has distinct
    values, so a full right-to-left scan costs O(n).

    Window coordinates are arbitrary integers that decrease by one per
    prepend; strings start at ``len(s) + 1`` so that the coordinate equals
    the 1-based text position.  :meth:`undo` reverts the last prepend,
    which lets a depth-first traversal of a trie share one state.
    """

    def __init__(self, start: int = 1, undoable: bool = False):
        self.start = start
        # stacks with the leftmost pending position on top
        self._pos: list[int] = []
        self._val: list[int] = []
        self._undo: list[list[tuple[int, int]]] | None = [] if undoable else None
        self.resolved: list[int] = []

    def __len__(self) -> int:
        return len(self._pos)

    @property
    def pending(self) -> list[int]:
        """Pending zero positions, ascending, in window coordinates."""
        return self._pos[::-1]

    def zero_positions(self) -> list[int]:
        """Zero positions of the current window's PD, as local positions."""
        return [p - self.start + 1 for p in reversed(self._pos)]

    def prepend(self, c: int) -> list[int]:
        self.start -= 1
        start = self.start
        pos, val = self._pos, self._val
        resolved = []
        if self._undo is None:
            while val and c <= val[-1]:
                val.pop()
                resolved.append(pos.pop() - start + 1)
        else:
            removed = []
            while val and c <= val[-1]:
                p = pos.pop()
                removed.append((p, val.pop()))
                resolved.append(p - start + 1)
            self._undo.append(removed)
        pos.append(start)
        val.append(c)
        self.resolved = resolved
        return resolved

    def undo(self) -> None:
        if not self._undo:
            raise RuntimeError("nothing to undo")
        removed = self._undo.pop()
        self._pos.pop()
        self._val.pop()
        for p, v in reversed(removed):
            self._pos.append(p)
            self._val.append(v)
        self.start += 1
        self.resolved = []


def pd_prepend(state: SlidingPdState, c: int) -> list[int]:
    return state.prepend(c)


def fp_encode(s: Sequence[int]) -> list[int]:
    """``fp[i]`` = number of front pointers in the PD of ``s[i:]``."""
    n = len(s)
    fp = [0] * n
    state = SlidingPdState(n + 1)
    for i in range(n - 1, -1, -1):
        fp[i] = len(state.prepend(s[i]))
    return fp


@dataclass
class CartesianTree:
    """Cartesian tree over positions ``1..n``; children are 0 when absent."""

    root: int
    left: list[int] = field(default_factory=list)
    right: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.left)

    def inorder(self) -> list[int]:
        out: list[int] = []
        stack: list[int] = []
        x = self.root
        while stack or x:
            while x:
                stack.append(x)
                x = self.left[x - 1]
            x = stack.pop()
            out.append(x)
            x = self.right[x - 1]
        return out

    def shape(self) -> tuple:
        return self.root, tuple(self.left), tuple(self.right)


def build_cartesian_tree(s: Sequence[int]) -> CartesianTree:
    n = len(s)
    left = [0] * n
    right = [0] * n
    stack: list[int] = []
    for i in range(1, n + 1):
        last = 0
        while stack and s[stack[-1] - 1] > s[i - 1]:
            last = stack.pop()
        left[i - 1] = last
        if stack:
            right[stack[-1] - 1] = i
        stack.append(i)
    return CartesianTree(stack[0] if stack else 0, left, right)


def ct_match(s1: Sequence[int], s2: Sequence[int]) -> bool:
    return len(s1) == len(s2) and pd_encode(s1) == pd_encode(s2)


def pd_window_access(pd: Sequence[int], i: int, j: int) -> int:
    """``PD(S[i..])[j]`` read off the PD of the whole text in O(1)."""
    g = i + j - 1
    v = pd[g - 1]
    if v and g - v >= i:
        return v
    return 0


def dag_from_pd(pd: Sequence[int]) -> list[tuple[int, int]]:
    """Edges ``(j, i)`` with ``j = i - pd[i]``; positions with PD 0 get none."""
    return [(i - v, i) for i, v in enumerate(pd, 1) if v]


def dag_from_fp(fp: Sequence[int]) -> list[tuple[int, int]]:
    """Rebuild the pointer DAG from an FP encoding.

    Scanning right to left, node ``i`` gets edges to the ``fp[i]``
    leftmost unmarked nodes on its right, which then become marked.  The unmarked nodes always form
    a stack with the leftmost on top.
    """
    edges = []
    unmarked: list[int] = []
    for i in range(len(fp), 0, -1):
        k = fp[i - 1]
        if k > len(unmarked):
            raise ValueError(f"malformed FP encoding at position {i}: needs {k} "
                             f"targets, {len(unmarked)} available")
        for _ in range(k):
            edges.append((i, unmarked.pop()))
        unmarked.append(i)
    edges.sort(key=lambda e: (e[1], e[0]))
    return edges


def in_degrees(n: int, edges: Sequence[tuple[int, int]]) -> list[int]:
    deg = [0] * n
    for j, _ in edges:
        deg[j - 1] += 1
    return deg
