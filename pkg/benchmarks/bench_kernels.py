"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 2000] [--repeat 3]

Prints one line per kernel with the best-of-repeat wall time for each
backend and the speedup.
"""
import argparse
import time

import numpy as np

from planarlabel import kernels
from planarlabel.generators import generate
from planarlabel.labeler import build_labels
from planarlabel.query import LabelDecoder


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(n):
    g = generate("grid", n, 0)
    labels = build_labels(g)
    dec = LabelDecoder(labels)
    perm = np.random.default_rng(0).permutation(g.m * 2)
    sources = np.arange(min(64, g.n))
    vals = np.random.default_rng(1).integers(1, 1 << 20, size=(256, 200))
    lengths = np.full(256, 200)
    widths = 2 * np.floor(np.log2(vals)).astype(np.int64) + 1
    blob = labels.payloads[0]
    return {
        "bfs_rows (64 sources)": lambda: kernels.bfs_rows(g.indptr, g.indices, sources),
        "bfs_tree": lambda: kernels.bfs_tree(g.indptr, g.indices, 0),
        "component_labels": lambda: kernels.component_labels(g.indptr, g.indices),
        "permutation_cycles": lambda: kernels.permutation_cycles(perm),
        "pack_rows (256x200)": lambda: kernels.pack_rows(vals, widths, lengths),
        "unpack_gamma (x200)": lambda: [kernels.unpack_gamma(blob, labels.nbits[0]) for _ in range(200)],
        "decode_gamma_row (x4)": lambda: [dec.row(v) for v in range(4)],
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if "native" not in kernels.BACKENDS:
        raise SystemExit("compiled extension not built; run pip install -e . first")
    jobs = workloads(args.n)
    print(f"{'kernel':<24}{'native ms':>12}{'python ms':>12}{'speedup':>10}")
    for name, fn in jobs.items():
        times = {}
        for be in ("native", "python"):
            kernels.use_backend(be)
            times[be] = _best(fn, args.repeat)
        kernels.use_backend("native")
        print(f"{name:<24}{times['native'] * 1e3:>12.2f}{times['python'] * 1e3:>12.2f}"
              f"{times['python'] / times['native']:>9.1f}x")


if __name__ == "__main__":
    main()
