"""
Construction scaling benchmark.

Each row builds the heap of a uniform random text ``repeats`` times and
reports the mean wall-clock construction time together with the climb-step
count of the build, which is deterministic for a given text.  Finalization
plus reach pointers are timed once as ``index_s``, and query throughput is
measured on the finished index with patterns cut from the text.
"""

from __future__ import annotations

import gc
import random
import time
from dataclasses import dataclass

from .heap import build_cph_string, compute_mrp, finalize
from .matching import query_string
from .oracle import GenSpec, generate

CLIMB_BOUND = 3.0
COLUMNS = ("n", "sigma", "build_s", "climb_steps", "climb_per_n",
           "time_ratio", "index_s", "queries_per_s")


@dataclass
class BenchRow:
    n: int
    sigma: int
    build_s: float
    climb_steps: int
    index_s: float
    queries_per_s: float
    time_ratio: float | None = None
    times: tuple[float, ...] = ()

    @property
    def climb_per_n(self) -> float:
        return self.climb_steps / self.n if self.n else 0.0

    def cells(self) -> list[str]:
        ratio = "-" if self.time_ratio is None else f"{self.time_ratio:.3f}"
        return [str(self.n), str(self.sigma), f"{self.build_s:.4f}", str(self.climb_steps),
                f"{self.climb_per_n:.4f}", ratio, f"{self.index_s:.4f}",
                f"{self.queries_per_s:.1f}"]


def timed_build(text: list[int]):
    """Run one construction with the collector paused; returns (heap, seconds)."""
    gc.collect()
    enabled = gc.isenabled()
    gc.disable()
    try:
        t0 = time.perf_counter()
        cph = build_cph_string(text)
        elapsed = time.perf_counter() - t0
    finally:
        if enabled:
            gc.enable()
    return cph, elapsed


def measure_queries(cph, rng: random.Random, count: int = 200, max_len: int = 16) -> float:
    text = cph.text
    patterns = []
    for _ in range(count):
        m = rng.randint(1, min(max_len, len(text)))
        i = rng.randrange(len(text) - m + 1)
        patterns.append(text[i:i + m])
    t0 = time.perf_counter()
    for p in patterns:
        query_string(cph, p)
    elapsed = time.perf_counter() - t0
    return count / elapsed if elapsed > 0 else float("inf")


def bench_group(ns: list[int], sigma: int, seed: int, repeats: int = 1,
                queries: int = 200) -> list[BenchRow]:
    """Rows for one alphabet size.

    Repeats are interleaved across the text lengths (n1, n2, ..., n1, n2,
    ...) so that drift in machine speed hits every length alike; the time
    ratio column compares each length with the previous one.
    """
    ns = sorted(ns)
    if not ns or ns[0] < 1:
        raise ValueError("n must be positive")
    texts = {n: generate(GenSpec(seed, n, sigma)) for n in ns}
    times: dict[int, list[float]] = {n: [] for n in ns}
    climbs: dict[int, set[int]] = {n: set() for n in ns}
    index_s: dict[int, float] = {}
    qps: dict[int, float] = {}
    rounds = max(1, repeats)
    for r in range(rounds):
        for n in ns:
            cph, elapsed = timed_build(texts[n])
            times[n].append(elapsed)
            climbs[n].add(cph.climb_steps)
            if r == rounds - 1:
                t0 = time.perf_counter()
                finalize(cph)
                compute_mrp(cph)
                index_s[n] = time.perf_counter() - t0
                qps[n] = measure_queries(cph, random.Random(seed + 1), queries) if queries else 0.0
            del cph
    rows = []
    for n in ns:
        if len(climbs[n]) != 1:
            raise AssertionError(f"climb count changed between repeats: {sorted(climbs[n])}")
        steps = climbs[n].pop()
        if steps > CLIMB_BOUND * n:
            raise AssertionError(f"n={n} sigma={sigma}: {steps} climb steps exceed 3n")
        row = BenchRow(n, sigma, sum(times[n]) / rounds, steps, index_s[n], qps[n],
                       times=tuple(times[n]))
        if rows and rows[-1].build_s > 0:
            row.time_ratio = row.build_s / rows[-1].build_s
        rows.append(row)
    return rows


def bench_row(n: int, sigma: int, seed: int, repeats: int = 1, queries: int = 200) -> BenchRow:
    return bench_group([n], sigma, seed, repeats, queries)[0]


def run_bench(ns: list[int], sigmas: list[int], seed: int, repeats: int = 1,
              queries: int = 200) -> list[BenchRow]:
    rows = []
    for sigma in sigmas:
        rows += bench_group(ns, sigma, seed, repeats, queries)
    return rows


def format_table(rows: list[BenchRow]) -> str:
    lines = ["\t".join(COLUMNS)]
    lines += ["\t".join(r.cells()) for r in rows]
    return "\n".join(lines) + "\n"
