"""Label size and timing measurements behind ``planarlabel bench``."""
from __future__ import annotations

import time

import numpy as np

from .generators import generate
from .labeler import DEFAULT_BASE_THRESHOLD, build_label_sets
from .query import LabelDecoder

BENCH_COLUMNS = ("family", "n", "seed", "max_bits", "mean_bits", "base_max_bits",
                 "c", "log_sum", "build_ms", "query_ns")


def time_queries(labels, queries: int, seed: int = 0) -> float:
    """Mean nanoseconds per random pair decode, labels already unpacked."""
    if labels.n == 0 or queries <= 0:
        return 0.0
    dec = LabelDecoder(labels)
    rng = np.random.default_rng(seed)
    pairs = rng.integers(0, labels.n, size=(queries, 2)).tolist()
    t0 = time.perf_counter_ns()
    for v, w in pairs:
        dec.pair(v, w)
    return (time.perf_counter_ns() - t0) / queries


def bench_rows(family: str, n: int, seed: int = 0,
               base_threshold: int = DEFAULT_BASE_THRESHOLD, queries: int = 1000) -> list:
    g = generate(family, n, seed)
    t0 = time.perf_counter()
    improved = build_label_sets(g, base_threshold, ("improved",))["improved"]
    build_ms = (time.perf_counter() - t0) * 1e3
    baseline = build_label_sets(g, base_threshold, ("baseline",))["baseline"]
    top = improved.top_separator()
    c, log_sum = (top.c, top.log_sum) if top is not None else (0, 0.0)
    return [family, g.n, seed, improved.max_bits(), f"{improved.mean_bits():.2f}",
            baseline.max_bits(), c, f"{log_sum:.3f}", f"{build_ms:.1f}",
            f"{time_queries(improved, queries, seed):.0f}"]
