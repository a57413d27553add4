"""Embedded planar graphs given as rotation systems.

A graph is stored in CSR form: the neighbors of vertex ``v`` are
``indices[indptr[v]:indptr[v+1]]`` in clockwise order. Each position in
``indices`` is a *dart* (a directed edge occurrence ``v -> indices[p]``).
Faces are traced with ``next(d) = succ(twin(d))``: arrive at ``w`` from ``u``,
leave along the neighbor that follows ``u`` in ``w``'s rotation. With
clockwise rotations this keeps the face on the left of every dart.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .errors import EmbeddingError, ParseError

UNREACHABLE = -1


class RotationGraph:
    """Immutable undirected graph with a cyclic neighbor order per vertex."""

    def __init__(self, indptr, indices):
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int64)
        self.indptr.flags.writeable = False
        self.indices.flags.writeable = False

    @classmethod
    def from_adjacency(cls, adjacency) -> "RotationGraph":
        lengths = [len(a) for a in adjacency]
        indptr = np.zeros(len(adjacency) + 1, dtype=np.int64)
        np.cumsum(lengths, out=indptr[1:])
        flat = [w for a in adjacency for w in a]
        return cls(indptr, np.array(flat, dtype=np.int64))

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    @cached_property
    def adjacency(self) -> tuple:
        ip, nb = self.indptr.tolist(), self.indices.tolist()
        return tuple(tuple(nb[ip[v]:ip[v + 1]]) for v in range(self.n))

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    @cached_property
    def tails(self) -> np.ndarray:
        return np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))

    @cached_property
    def twin(self) -> np.ndarray:
        """Reverse dart of every dart. Raises EmbeddingError if asymmetric."""
        n = max(self.n, 1)
        fwd = self.tails * n + self.indices
        rev = self.indices * n + self.tails
        fo = np.argsort(fwd, kind="stable")
        ro = np.argsort(rev, kind="stable")
        if not np.array_equal(fwd[fo], rev[ro]):
            raise EmbeddingError("rotation lists are not symmetric")
        tw = np.empty_like(fo)
        tw[fo] = ro
        return tw

    @cached_property
    def next_dart(self) -> np.ndarray:
        """Face successor of every dart."""
        tw = self.twin
        succ = np.arange(1, len(self.indices) + 1, dtype=np.int64)
        ends = self.indptr[1:][np.diff(self.indptr) > 0] - 1
        succ[ends] = self.indptr[:-1][np.diff(self.indptr) > 0]
        return succ[tw]

    def edges(self) -> np.ndarray:
        """(m, 2) array of undirected edges, one row per dart pair, tail < head."""
        keep = self.tails < self.indices
        return np.stack([self.tails[keep], self.indices[keep]], axis=1)

    def fingerprint(self) -> bytes:
        h = hashlib.blake2b(digest_size=8)
        h.update(np.int64(self.n).tobytes())
        h.update(self.indptr.tobytes())
        h.update(self.indices.tobytes())
        return h.digest()

    def validate(self) -> None:
        """Check every structural invariant; raises EmbeddingError."""
        if np.any(self.indices < 0) or np.any(self.indices >= self.n):
            raise EmbeddingError("neighbor id out of range")
        if np.any(self.tails == self.indices):
            raise EmbeddingError("self-loop")
        n = max(self.n, 1)
        keys = np.sort(self.tails * n + self.indices)
        if np.any(keys[1:] == keys[:-1]):
            raise EmbeddingError("parallel edge in input graph")
        self.twin  # symmetry
        if self.n >= 3 and self.m > 3 * self.n - 6:
            raise EmbeddingError(f"m={self.m} exceeds 3n-6={3 * self.n - 6}")
        enumerate_faces(self)

    def __repr__(self):
        return f"RotationGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class FaceWalk:
    id: int
    walk: tuple
    darts: tuple

    @property
    def length(self) -> int:
        return len(self.darts)


class FaceSet:
    """All faces of an embedding, stored as one permutation-cycle decomposition.

    ``order[offsets[f]:offsets[f+1]]`` are the darts of face ``f`` in walk
    order; isolated vertices get one extra empty face each, numbered last.
    """

    def __init__(self, g: RotationGraph, face_of_dart, order, offsets, isolated):
        self.graph = g
        self.face_of_dart = face_of_dart
        self.order = order
        self.offsets = offsets
        self.isolated = isolated

    def __len__(self):
        return len(self.offsets) - 1 + len(self.isolated)

    def sizes(self) -> np.ndarray:
        return np.concatenate([np.diff(self.offsets), np.zeros(len(self.isolated), np.int64)])

    def darts(self, f: int) -> np.ndarray:
        return self.order[self.offsets[f]:self.offsets[f + 1]]

    def __getitem__(self, f: int) -> FaceWalk:
        k = len(self.offsets) - 1
        if f < 0:
            f += len(self)
        if f >= k:
            v = int(self.isolated[f - k])
            return FaceWalk(f, (v,), ())
        d = self.darts(f)
        return FaceWalk(f, tuple(self.graph.tails[d].tolist()), tuple(d.tolist()))

    def __iter__(self):
        return (self[f] for f in range(len(self)))


def enumerate_faces(g: RotationGraph) -> FaceSet:
    """Trace every face; raises EmbeddingError unless Euler holds per component."""
    nxt = g.next_dart
    face_of_dart, order, offsets = kernels.permutation_cycles(nxt)
    deg = np.diff(g.indptr)
    isolated = np.flatnonzero(deg == 0)
    faces = FaceSet(g, face_of_dart, order, offsets, isolated)
    if g.n:
        comp, k = connected_components(g)
        v_cnt = np.bincount(comp, minlength=k)
        e_cnt = np.bincount(comp[g.tails], minlength=k) // 2
        first = order[offsets[:-1]]
        f_cnt = np.bincount(comp[g.tails[first]], minlength=k) + np.bincount(comp[isolated], minlength=k)
        bad = np.flatnonzero(v_cnt - e_cnt + f_cnt != 2)
        if len(bad):
            c = int(bad[0])
            raise EmbeddingError(
                f"Euler check failed on component {c}: "
                f"V={v_cnt[c]} E={e_cnt[c]} F={f_cnt[c]}")
    return faces


@dataclass(frozen=True)
class DistanceRow:
    source: int
    distances: np.ndarray

    def __getitem__(self, v):
        return int(self.distances[v])


def bfs_distances(g: RotationGraph, source: int) -> DistanceRow:
    if not 0 <= source < g.n:
        raise IndexError(f"source {source} out of range")
    row = kernels.bfs_rows(g.indptr, g.indices, np.array([source]))[0]
    return DistanceRow(source, row.astype(np.int64))


def all_pairs_distances(g: RotationGraph) -> np.ndarray:
    """n x n int32 BFS matrix with UNREACHABLE entries; the test oracle."""
    return kernels.bfs_rows(g.indptr, g.indices, np.arange(g.n))


def connected_components(g: RotationGraph, removed=None):
    """Per-vertex component id (dense, ordered by smallest vertex) and count."""
    return kernels.component_labels(g.indptr, g.indices, removed)


def induced_subembedding(g: RotationGraph, keep):
    """Subgraph on ``keep`` with rotations filtered in place.

    Returns the new graph and an old->new id array (-1 for dropped vertices).
    New ids follow increasing old id.
    """
    mask = np.zeros(g.n, dtype=bool)
    mask[np.asarray(keep, dtype=np.int64)] = True
    old_to_new = np.full(g.n, -1, dtype=np.int64)
    old_to_new[mask] = np.arange(int(mask.sum()))
    dart_keep = mask[g.tails] & mask[g.indices]
    counts = np.bincount(g.tails[dart_keep], minlength=g.n)[mask]
    indptr = np.zeros(len(counts) + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return RotationGraph(indptr, old_to_new[g.indices[dart_keep]]), old_to_new


def articulation_points(g: RotationGraph) -> list:
    """Cut vertices via iterative low-link DFS."""
    n = g.n
    ip, nb = g.indptr.tolist(), g.indices.tolist()
    disc = [-1] * n
    low = [0] * n
    cut = set()
    t = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = t
        t += 1
        children = 0
        stack = [(root, -1, ip[root])]
        while stack:
            v, parent_dart, p = stack[-1]
            if p < ip[v + 1]:
                stack[-1] = (v, parent_dart, p + 1)
                w = nb[p]
                if disc[w] < 0:
                    disc[w] = low[w] = t
                    t += 1
                    if v == root:
                        children += 1
                    stack.append((w, int(g.twin[p]), ip[w]))
                elif p != parent_dart:
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if u != root and low[v] >= disc[u]:
                        cut.add(u)
        if children > 1:
            cut.add(root)
    return sorted(cut)


def parse_graph(text: str) -> RotationGraph:
    """Parse the line-oriented graph format without validating the embedding."""
    lines = []
    for raw in text.splitlines():
        if raw.lstrip().startswith("#"):
            continue
        lines.append(raw.split("#", 1)[0].strip())
    while lines and not lines[0]:
        lines.pop(0)
    if not lines:
        raise ParseError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise ParseError(f"bad header {lines[0]!r}") from exc
    if n < 0 or m < 0:
        raise ParseError("negative counts in header")
    body = lines[1:]
    if len(body) < n or any(body[n:]):
        raise ParseError(f"expected {n} rotation lines after the header")
    adjacency = []
    for i, line in enumerate(body[:n]):
        try:
            adjacency.append([int(t) for t in line.split()])
        except ValueError as exc:
            raise ParseError(f"line for vertex {i}: {line!r}") from exc
    g = RotationGraph.from_adjacency(adjacency)
    if len(g.indices) != 2 * m:
        raise ParseError(f"header says m={m} but rotations hold {len(g.indices)} dart(s)")
    return g


def load_graph(text: str) -> RotationGraph:
    g = parse_graph(text)
    g.validate()
    return g


def dump_graph(g: RotationGraph, comments=()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"{g.n} {g.m}")
    out.extend(" ".join(map(str, row)) for row in g.adjacency)
    return "\n".join(out) + "\n"
