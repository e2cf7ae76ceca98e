"""
Command-line interface.

    cph build-string --input text.txt --output text.idx
    cph build-trie --input trie.txt --output trie.idx [--id-map map.tsv]
    cph query --index text.idx --pattern "1 3 2"
    cph verify --kind string --cases 200 --max-n 64 --sigma 2,4 --seed 1
    cph bench --n 100000,200000 --sigma 4 --seed 0 --repeats 3 --plot bench.png
    cph encode --pd --input text.txt

Exit status: 0 on success, 1 on failures and mismatches, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

from . import index_io
from .bench import format_table, run_bench
from .encodings import MAX_CHAR, dag_from_pd, fp_encode, pd_encode
from .heap import Cph, build_cph_string, build_string_index, compute_mrp, finalize
from .matching import query_string, query_trie
from .oracle import (STRING_FAMILIES, GenSpec, brute_match_string, brute_match_trie,
                     generate)
from .trie import TrieFormatError, parse_trie, trie_from_records
from .trie_heap import build_trie_index

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_FAIL):
        super().__init__(message)
        self.code = code


# -- input ---------------------------------------------------------------

def _read_bytes(path: str) -> bytes:
    try:
        if path == "-":
            return sys.stdin.buffer.read()
        return Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}")


def parse_ints(text: str, what: str = "input") -> list[int]:
    out = []
    for tok in text.split():
        try:
            v = int(tok)
        except ValueError:
            raise CliError(f"{what}: not an integer: {tok!r}")
        if not 0 <= v <= MAX_CHAR:
            raise CliError(f"{what}: character out of range: {v}")
        out.append(v)
    return out


def read_text(path: str, fmt: str) -> list[int]:
    data = _read_bytes(path)
    if fmt == "bytes":
        return list(data)
    try:
        return parse_ints(data.decode("ascii"), path)
    except UnicodeDecodeError:
        raise CliError(f"{path}: ints format expects ASCII digits and whitespace")


def parse_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("list values must be positive integers")
    return values


# -- build / query ---------------------------------------------------------

def cmd_build_string(args) -> int:
    text = read_text(args.input, args.format)
    if not text:
        raise CliError(f"{args.input}: empty text")
    t0 = time.perf_counter()
    cph = build_cph_string(text)
    build_s = time.perf_counter() - t0
    finalize(cph)
    compute_mrp(cph)
    index_io.save(cph, args.output)
    n = cph.n
    print(f"nodes\t{len(cph)}", file=sys.stderr)
    print(f"height\t{cph.height}", file=sys.stderr)
    print(f"climb_steps\t{cph.climb_steps}", file=sys.stderr)
    print(f"climb_per_n\t{cph.climb_steps / n:.4f}", file=sys.stderr)
    print(f"build_s\t{build_s:.4f}", file=sys.stderr)
    return EXIT_OK


def cmd_build_trie(args) -> int:
    data = _read_bytes(args.input)
    try:
        t = parse_trie(data.decode("utf-8"))
    except UnicodeDecodeError:
        raise CliError(f"{args.input}: trie document is not UTF-8 text")
    except TrieFormatError as exc:
        raise CliError(f"{args.input}: {exc}")
    t0 = time.perf_counter()
    heap = build_trie_index(t)
    build_s = time.perf_counter() - t0
    index_io.save(heap, args.output)
    if args.id_map:
        Path(args.id_map).write_text(t.write_id_map())
    print(f"trie_nodes\t{t.N}", file=sys.stderr)
    print(f"fp_classes\t{heap.fp.num_classes}", file=sys.stderr)
    print(f"nodes\t{len(heap)}", file=sys.stderr)
    print(f"height\t{heap.height}", file=sys.stderr)
    print(f"max_label_steps\t{heap.max_label_steps}", file=sys.stderr)
    print(f"build_s\t{build_s:.4f}", file=sys.stderr)
    return EXIT_OK


def cmd_query(args) -> int:
    if args.pattern is not None:
        raw = [args.pattern]
    else:
        raw = _read_bytes(args.patterns).decode("ascii", "replace").splitlines()
    patterns = []
    for k, line in enumerate(raw, 1):
        p = parse_ints(line, f"pattern {k}")
        if not p:
            raise CliError(f"pattern {k} is empty", EXIT_USAGE)
        patterns.append(p)
    if not Path(args.index).exists():
        raise CliError(f"index not found: {args.index}")
    try:
        heap = index_io.load(args.index)
    except (index_io.IndexFormatError, KeyError, TypeError, ValueError) as exc:
        raise CliError(f"{args.index}: cannot load index: {exc}")
    query = query_string if isinstance(heap, Cph) else query_trie
    out = sys.stdout
    for p in patterns:
        out.write(" ".join(map(str, query(heap, p))) + "\n")
    return EXIT_OK


def cmd_encode(args) -> int:
    text = read_text(args.input, args.format)
    if args.dag:
        for j, i in dag_from_pd(pd_encode(text)):
            print(f"{j} {i}")
        return EXIT_OK
    enc = pd_encode(text) if args.pd else fp_encode(text)
    if enc:
        print(" ".join(map(str, enc)))
    return EXIT_OK


# -- verify ----------------------------------------------------------------

def _fault(heap):
    # test hook: forget every maximal reach pointer
    heap.mrp = list(range(len(heap)))
    return heap


def _string_disagrees(s, p, fault):
    cph = build_string_index(s)
    if fault:
        _fault(cph)
    try:
        got = query_string(cph, p)
    except Exception as exc:  # a crash counts as a disagreement
        got = f"error: {exc}"
    want = brute_match_string(s, p)
    return (got, want) if got != want else None


def _trie_records(t):
    ext = t.ext_ids
    return [(ext[x], None if x == t.root else ext[t.parent[x]],
             None if x == t.root else t.label[x]) for x in range(1, t.N + 1)]


def _trie_disagrees(records, p, fault):
    t = trie_from_records(records)
    heap = build_trie_index(t)
    if fault:
        _fault(heap)
    try:
        got = query_trie(heap, p)
    except Exception as exc:
        got = f"error: {exc}"
    want = brute_match_trie(t, p)
    return (got, want) if got != want else None


def _shrink(items: list, fails) -> list:
    """Greedy one-element deletion until every single deletion passes."""
    changed = True
    while changed:
        changed = False
        for k in range(len(items)):
            cand = items[:k] + items[k + 1:]
            if fails(cand):
                items = cand
                changed = True
                break
    return items


def _shrink_trie(records: list, fails) -> list:
    """Greedy node deletion; a deleted node's children move up to its parent."""
    changed = True
    while changed:
        changed = False
        for k, (ext, par, _) in enumerate(records):
            if par is None:
                continue
            cand = [(e, par if p == ext else p, lab)
                    for e, p, lab in records[:k] + records[k + 1:]]
            siblings = [(p, lab) for _, p, lab in cand if p is not None]
            if len(set(siblings)) != len(siblings):
                continue
            if fails(cand):
                records = cand
                changed = True
                break
    return records


def _string_case(rng: random.Random, case: int, max_n: int, sigmas: list[int]):
    sigma = rng.choice(sigmas)
    family = STRING_FAMILIES[0] if case % 2 == 0 else STRING_FAMILIES[case // 2 % len(STRING_FAMILIES)]
    if family == "lemma8-family":
        kmax = 1
        while 2 + (kmax + 1) * (kmax + 4) // 2 <= max_n:
            kmax += 1
        size = rng.randint(1, kmax)
    else:
        size = rng.randint(1, max_n)
    spec = GenSpec(rng.randrange(2**31), size, sigma, family)
    s = generate(spec)
    patterns = []
    for _ in range(3):
        m = rng.randint(1, min(32, len(s)))
        i = rng.randrange(len(s) - m + 1)
        patterns.append(s[i:i + m])
    for _ in range(2):
        patterns.append([rng.randint(1, sigma) for _ in range(rng.randint(1, 32))])
    return spec, s, patterns


def _trie_case(rng: random.Random, case: int, max_n: int, sigmas: list[int]):
    sigma = rng.choice(sigmas)
    family = "chain-trie" if case % 6 == 5 else "random-trie"
    spec = GenSpec(rng.randrange(2**31), rng.randint(1, max_n), sigma, family)
    t = generate(spec)
    patterns = []
    for _ in range(3):
        x = rng.randint(1, t.N)
        if t.depth[x] == 0:
            patterns.append([rng.randint(1, sigma)])
            continue
        m = rng.randint(1, min(32, t.depth[x]))
        patterns.append(t.path_string(x, m))
    for _ in range(2):
        patterns.append([rng.randint(1, sigma) for _ in range(rng.randint(1, 12))])
    return spec, t, patterns


def cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    agree = 0
    first_failure = None
    for case in range(args.cases):
        if args.kind == "string":
            spec, inst, patterns = _string_case(rng, case, args.max_n, args.sigma)
            fails = [p for p in patterns if _string_disagrees(inst, p, args.inject_fault)]
            size = len(inst)
        else:
            spec, inst, patterns = _trie_case(rng, case, args.max_n, args.sigma)
            records = _trie_records(inst)
            fails = [p for p in patterns if _trie_disagrees(records, p, args.inject_fault)]
            size = inst.N
        status = "agree" if not fails else f"DISAGREE ({len(fails)}/{len(patterns)} patterns)"
        print(f"case {case}\t{spec.family}\tsize={size}\tsigma={spec.sigma}\t{status}")
        if fails:
            if first_failure is None:
                first_failure = (inst, fails[0])
        else:
            agree += 1
    print(f"{agree}/{args.cases} agree")
    if first_failure is None:
        return EXIT_OK

    inst, p = first_failure
    fault = args.inject_fault
    print("minimal failing instance:")
    if args.kind == "string":
        s, p = list(inst), list(p)
        while True:
            size = len(s) + len(p)
            s = _shrink(s, lambda c: bool(c) and _string_disagrees(c, p, fault) is not None)
            p = _shrink(p, lambda c: bool(c) and _string_disagrees(s, c, fault) is not None)
            if len(s) + len(p) == size:
                break
        got, want = _string_disagrees(s, p, fault)
        print(f"text\t{' '.join(map(str, s))}")
    else:
        records, p = _trie_records(inst), list(p)
        while True:
            size = len(records) + len(p)
            records = _shrink_trie(records, lambda c: _trie_disagrees(c, p, fault) is not None)
            p = _shrink(p, lambda c: bool(c) and _trie_disagrees(records, c, fault) is not None)
            if len(records) + len(p) == size:
                break
        got, want = _trie_disagrees(records, p, fault)
        print("trie")
        for ext, par, lab in records:
            print(f"  {ext} -" if par is None else f"  {ext} {par} {lab}")
    print(f"pattern\t{' '.join(map(str, p))}")
    print(f"index\t{got}")
    print(f"oracle\t{want}")
    return EXIT_FAIL


# -- bench -----------------------------------------------------------------

def cmd_bench(args) -> int:
    try:
        rows = run_bench(args.n, args.sigma, args.seed, args.repeats, args.queries)
    except AssertionError as exc:
        raise CliError(str(exc))
    table = format_table(rows)
    sys.stdout.write(table)
    if args.output:
        Path(args.output).write_text(table)
    if args.plot:
        from .plotting import plot_bench
        plot_bench(rows, args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return EXIT_OK


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cph", description="Cartesian-tree position heap index.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-string", help="index a text")
    p.add_argument("--input", required=True, help="text file, '-' for stdin")
    p.add_argument("--format", choices=("ints", "bytes"), default="ints")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_build_string)

    p = sub.add_parser("build-trie", help="index a trie document")
    p.add_argument("--input", required=True,
                   help="lines '<id> <parent> <label>', root line '<id> -'")
    p.add_argument("--output", required=True)
    p.add_argument("--id-map", help="write external-to-canonical id pairs here")
    p.set_defaults(func=cmd_build_trie)

    p = sub.add_parser("query", help="report ct-matching occurrences")
    p.add_argument("--index", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pattern", help='space-separated integers, e.g. "1 3 2"')
    g.add_argument("--patterns", help="file with one pattern per line")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", help="compare indexed queries with brute force")
    p.add_argument("--kind", choices=("string", "trie"), default="string")
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--max-n", type=int, default=64)
    p.add_argument("--sigma", type=parse_list, default=[2, 3, 4])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="construction scaling table")
    p.add_argument("--n", type=parse_list, required=True)
    p.add_argument("--sigma", type=parse_list, default=[4])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--queries", type=int, default=200, help="queries timed per row")
    p.add_argument("--output", help="also write the table to this TSV file")
    p.add_argument("--plot", help="render a figure to this image file")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("encode", help="print an encoding of a text")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pd", action="store_true")
    g.add_argument("--fp", action="store_true")
    g.add_argument("--dag", action="store_true", help="pointer DAG, one 'j i' edge per line")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("ints", "bytes"), default="ints")
    p.set_defaults(func=cmd_encode)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("cases", "max_n", "repeats"):
        if getattr(args, name, 1) is not None and getattr(args, name, 1) < 1:
            parser.error(f"--{name.replace('_', '-')} must be positive")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"cph: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
