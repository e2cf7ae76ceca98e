"""
Index files.

An index is a single JSON document with a fixed field order and integers
only, so writing a loaded index reproduces the original bytes.  Only the
text (or trie), the FP-trie classes and the heap nodes in insertion order
are stored; children, preorder intervals and the trie's ancestor tables are
rebuilt on load.
"""

from __future__ import annotations

import json
from pathlib import Path

from .heap import ROOT, Cph, PositionHeap, finalize
from .trie import FpNode, FpTrie, ReversedTrie
from .trie_heap import TrieCph

VERSION = 1
STRING_KIND = "string-cph"
TRIE_KIND = "trie-cph"


class IndexFormatError(ValueError):
    pass


def _node_rows(heap: PositionHeap) -> list[list[int]]:
    return [[heap.position[x], heap.parent[x], heap.label[x], heap.mrp[x]]
            for x in range(len(heap))]


def _dump(doc: dict) -> str:
    # one heap node per line keeps large files diffable
    head = {k: v for k, v in doc.items() if k != "nodes"}
    parts = [json.dumps(head, separators=(",", ":"))[:-1], ',"nodes":[\n']
    parts.append(",\n".join(json.dumps(row, separators=(",", ":")) for row in doc["nodes"]))
    parts.append("\n]}\n")
    return "".join(parts)


def dumps(heap: PositionHeap) -> str:
    if not heap.has_mrp:
        raise ValueError("only finished heaps (with maximal reach pointers) can be saved")
    if isinstance(heap, Cph):
        doc = {"version": VERSION, "kind": STRING_KIND, "text": heap.text}
    elif isinstance(heap, TrieCph):
        t, f = heap.trie, heap.fp
        ext = t.ext_ids or [str(x) for x in range(t.N + 1)]
        trie_rows = [[x, t.parent[x] if x != t.root else 0,
                      t.label[x] if x != t.root else None, ext[x]]
                     for x in range(1, t.N + 1)]
        fp_rows = [[v, node.parent, node.fp, node.members, node.front]
                   for v, node in sorted(f.nodes.items())]
        doc = {"version": VERSION, "kind": TRIE_KIND, "trie": trie_rows, "fptrie": fp_rows}
    else:
        raise TypeError(f"cannot serialise {type(heap).__name__}")
    doc["nodes"] = _node_rows(heap)
    return _dump(doc)


def _fill_nodes(heap: PositionHeap, rows: list) -> None:
    if not rows or rows[0][1] != -1:
        raise IndexFormatError("first heap node must be the root")
    heap.parent, heap.label, heap.depth, heap.position, heap.mrp = [], [], [], [], []
    for x, row in enumerate(rows):
        try:
            pos, par, lab, mrp = row
        except (TypeError, ValueError):
            raise IndexFormatError(f"heap node {x}: expected 4 fields")
        if x and not 0 <= par < x:
            raise IndexFormatError(f"heap node {x}: parent {par} is not an earlier node")
        if not 0 <= mrp < len(rows):
            raise IndexFormatError(f"heap node {x}: mrp {mrp} out of range")
        heap.parent.append(par)
        heap.label.append(lab)
        heap.depth.append(heap.depth[par] + 1 if x else 0)
        heap.position.append(pos)
        heap.mrp.append(mrp)
    finalize(heap)
    heap.has_mrp = True


def loads(data: str) -> PositionHeap:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise IndexFormatError(f"not an index file: {exc}") from None
    if not isinstance(doc, dict) or doc.get("version") != VERSION:
        raise IndexFormatError(f"unsupported index version {doc.get('version')!r}"
                               if isinstance(doc, dict) else "not an index file")
    kind = doc.get("kind")
    if kind == STRING_KIND:
        cph = Cph(doc["text"])
        cph.rsl_table = None
        _fill_nodes(cph, doc["nodes"])
        if len(cph) != cph.n + 1:
            raise IndexFormatError("node count does not match text length")
        cph.pos_to_node = [ROOT] * (cph.n + 1)
        for x in range(1, len(cph)):
            cph.pos_to_node[cph.position[x]] = x
        return cph
    if kind == TRIE_KIND:
        rows = doc["trie"]
        N = len(rows)
        parent = [0] * (N + 1)
        label = [0] * (N + 1)
        ext = [""] * (N + 1)
        for cid, par, lab, ext_id in rows:
            parent[cid] = par
            label[cid] = lab if lab is not None else 0
            ext[cid] = ext_id
        t = ReversedTrie(parent, label, ext)
        nodes = {}
        class_of = [0] * (N + 1)
        class_of[t.root] = t.root
        for v, par, fp, members, front in doc["fptrie"]:
            depth = t.depth[v] if v != t.root else 0
            nodes[v] = FpNode(v, par, fp, depth, members, front)
            for x in members:
                class_of[x] = v
        f = FpTrie(nodes, t.root, class_of)
        heap = TrieCph(t, f)
        _fill_nodes(heap, doc["nodes"])
        heap.pos_to_node = {f.root: ROOT}
        for x in range(1, len(heap)):
            heap.pos_to_node[heap.position[x]] = x
        return heap
    raise IndexFormatError(f"unknown index kind {kind!r}")


def save(heap: PositionHeap, path: str | Path) -> None:
    Path(path).write_text(dumps(heap))


def load(path: str | Path) -> PositionHeap:
    return loads(Path(path).read_text())
