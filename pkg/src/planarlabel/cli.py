"""Command-line interface: ``planarlabel <subcommand> ...``.

Exit codes: 0 ok, 1 verification failure or bad input file, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import sys
import time
from pathlib import Path

import numpy as np

from . import generators
from .bench import BENCH_COLUMNS, bench_rows
from .errors import PlanarLabelError
from .gadget import augment_with_gadgets
from .labeler import (DEFAULT_BASE_THRESHOLD, build_label_sets, deserialize_labels, read_label,
                      serialize_labels)
from .planar import UNREACHABLE, all_pairs_distances, dump_graph, load_graph
from .query import LabelDecoder, decode_distance
from .separator import find_separator

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_graph(path: str):
    return load_graph(Path(path).read_text())


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "grid" and args.rows:
        g = generators.grid(args.rows, args.cols or args.rows)
    elif fam == "cylinder" and args.rows:
        g = generators.cylinder(args.rows, args.cols or args.rows)
    elif fam == "big-face" and args.chords is not None:
        g = generators.big_face(args.n, args.chords, args.seed)
    else:
        if args.n is None:
            print("gen: give --n (or --rows/--cols for grid and cylinder)", file=sys.stderr)
            return EXIT_USAGE
        g = generators.generate(fam, args.n, args.seed)
    _emit(dump_graph(g, [f"family={fam} seed={args.seed}"]), args.out)
    return EXIT_OK


def cmd_build(args) -> int:
    g = _read_graph(args.graph)
    labels = build_label_sets(g, args.base_threshold, (args.scheme,))[args.scheme]
    data = serialize_labels(labels)
    out = args.out or "labels.bin"
    Path(out).write_bytes(data)
    print(f"{labels.n} labels, max {labels.max_bits()} bits, mean {labels.mean_bits():.1f} bits -> {out}")
    return EXIT_OK


def cmd_query(args) -> int:
    data = Path(args.labels).read_bytes()
    d = decode_distance(read_label(data, args.u), read_label(data, args.v))
    print("INF" if d == UNREACHABLE else d)
    return EXIT_OK


def cmd_check(args) -> int:
    g = _read_graph(args.graph)
    truth = all_pairs_distances(g)
    if args.labels:
        sets = {"file": deserialize_labels(Path(args.labels).read_bytes())}
        if sets["file"].fingerprint != g.fingerprint():
            print("FAIL: label file was built from a different graph")
            return EXIT_FAIL
    else:
        schemes = ("improved", "baseline") if args.scheme == "both" else (args.scheme,)
        built = build_label_sets(g, args.base_threshold, schemes)
        # verify what a reader of the file would see
        sets = {k: deserialize_labels(serialize_labels(v)) for k, v in built.items()}
    for name, labels in sets.items():
        dec = LabelDecoder(labels)
        for v in range(g.n):
            row = dec.row(v)
            bad = np.flatnonzero(row != truth[v])
            if len(bad):
                w = int(bad[0])
                print(f"FAIL [{name}]: d({v},{w}) decoded {row[w]}, BFS says {truth[v, w]}")
                return EXIT_FAIL
        unreachable = int((truth == UNREACHABLE).sum())
        print(f"PASS [{labels.scheme}] n={g.n} pairs={g.n * g.n} unreachable={unreachable} "
              f"max_bits={labels.max_bits()} mean_bits={labels.mean_bits():.1f}")
    return EXIT_OK


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    seeds = [int(s) for s in args.seeds.split(",")]
    families = args.family.split(",")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    for fam in families:
        for n in sizes:
            for seed in seeds:
                writer.writerow(bench_rows(fam, n, seed, args.base_threshold, args.queries))
                sys.stdout.flush()
    return EXIT_OK


def cmd_dump_separator(args) -> int:
    g = _read_graph(args.graph)
    sep = find_separator(g)
    rows = [["position", "vertex", "gap", "c", "log_sum", "max_component", "bound"]]
    for i, (v, gap) in enumerate(zip(sep.vertices.tolist(), sep.gaps.tolist())):
        rows.append([i, v, gap, sep.c, f"{sep.log_sum:.6f}", sep.max_component, sep.bound])
    text = "\n".join(",".join(map(str, r)) for r in rows) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_dump_augmented(args) -> int:
    g = _read_graph(args.graph)
    ag = augment_with_gadgets(g)
    weights = " ".join(map(str, ag.weights.tolist()))
    _emit(dump_graph(ag.graph, [f"original_count={ag.original_count}", f"weights: {weights}"]),
          args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planarlabel", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("gen", help="generate a graph file")
    s.add_argument("family", choices=generators.FAMILIES)
    s.add_argument("--n", type=int)
    s.add_argument("--rows", type=int)
    s.add_argument("--cols", type=int)
    s.add_argument("--chords", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("build", help="build a label file")
    s.add_argument("graph")
    s.add_argument("--scheme", choices=("improved", "baseline"), default="improved")
    s.add_argument("--base-threshold", type=int, default=DEFAULT_BASE_THRESHOLD)
    s.add_argument("--seed", type=int, default=0, help="accepted for symmetry; builds are deterministic")
    s.add_argument("--out")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("query", help="distance between two vertices from a label file")
    s.add_argument("labels")
    s.add_argument("u", type=int)
    s.add_argument("v", type=int)
    s.set_defaults(func=cmd_query)

    s = sub.add_parser("check", help="verify all pairs against BFS")
    s.add_argument("graph")
    s.add_argument("--labels", help="verify this label file instead of building")
    s.add_argument("--scheme", choices=("improved", "baseline", "both"), default="both")
    s.add_argument("--base-threshold", type=int, default=DEFAULT_BASE_THRESHOLD)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("bench", help="label size and timing table as CSV")
    s.add_argument("--family", default="grid", help="comma-separated families")
    s.add_argument("--sizes", default="1024,4096")
    s.add_argument("--seeds", default="0")
    s.add_argument("--seed", type=int, help="single seed (overrides --seeds)")
    s.add_argument("--queries", type=int, default=1000)
    s.add_argument("--base-threshold", type=int, default=DEFAULT_BASE_THRESHOLD)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("dump-separator", help="top-level separator as CSV")
    s.add_argument("graph")
    s.add_argument("--out")
    s.set_defaults(func=cmd_dump_separator)

    s = sub.add_parser("dump-augmented", help="gadget-augmented graph in graph file format")
    s.add_argument("graph")
    s.add_argument("--out")
    s.set_defaults(func=cmd_dump_augmented)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "seed", None) is not None and args.cmd == "bench":
        args.seeds = str(args.seed)
    try:
        return args.func(args)
    except (PlanarLabelError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
