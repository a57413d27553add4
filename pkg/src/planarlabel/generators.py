"""Deterministic generators of embedded planar graphs.

All rotations are clockwise, matching the graph file format.
"""
from __future__ import annotations

import math
import random

from .planar import RotationGraph

FAMILIES = ("grid", "cylinder", "random-triangulation", "big-face", "tree")


def grid(rows: int, cols: int) -> RotationGraph:
    """rows x cols grid; vertex (i, j) is ``i * cols + j``, row 0 on top."""
    adj = []
    for i in range(rows):
        for j in range(cols):
            rot = []
            if i > 0:
                rot.append((i - 1) * cols + j)
            if j + 1 < cols:
                rot.append(i * cols + j + 1)
            if i + 1 < rows:
                rot.append((i + 1) * cols + j)
            if j > 0:
                rot.append(i * cols + j - 1)
            adj.append(rot)
    return RotationGraph.from_adjacency(adj)


def cylinder(rings: int, ring_size: int) -> RotationGraph:
    """Concentric cycles of ``ring_size`` vertices joined radially."""
    if ring_size < 3:
        raise ValueError("cylinder rings need at least 3 vertices")
    c = ring_size
    adj = []
    for i in range(rings):
        for j in range(c):
            rot = []
            if i + 1 < rings:
                rot.append((i + 1) * c + j)
            rot.append(i * c + (j - 1) % c)
            if i > 0:
                rot.append((i - 1) * c + j)
            rot.append(i * c + (j + 1) % c)
            adj.append(rot)
    return RotationGraph.from_adjacency(adj)


def _crosses(a, b, c, d):
    if len({a, b, c, d}) < 4:
        return False
    lo, hi = min(a, b), max(a, b)
    return (lo < c < hi) != (lo < d < hi)


def big_face(s: int, chords: int = 0, seed: int = 0) -> RotationGraph:
    """Cycle ``C_s`` with up to ``chords`` random non-crossing inner chords."""
    if s < 3:
        return path(s)
    rng = random.Random(seed)
    nbrs = [{(i - 1) % s, (i + 1) % s} for i in range(s)]
    placed = []
    attempts = 0
    while len(placed) < chords and attempts < 50 * (chords + 1):
        attempts += 1
        a, b = rng.randrange(s), rng.randrange(s)
        if a == b or b in nbrs[a]:
            continue
        if any(_crosses(a, b, c, d) for c, d in placed):
            continue
        placed.append((a, b))
        nbrs[a].add(b)
        nbrs[b].add(a)
    # on a circle the direction to j turns monotonically with the ccw offset
    adj = [sorted(nbrs[i], key=lambda j, i=i: -((j - i) % s)) for i in range(s)]
    return RotationGraph.from_adjacency(adj)


def path(n: int) -> RotationGraph:
    return RotationGraph.from_adjacency(
        [[w for w in (v - 1, v + 1) if 0 <= w < n] for v in range(n)])


def tree(n: int, seed: int = 0) -> RotationGraph:
    """Random recursive tree with shuffled rotations."""
    rng = random.Random(seed)
    adj = [[] for _ in range(n)]
    for v in range(1, n):
        p = rng.randrange(v)
        adj[p].append(v)
        adj[v].append(p)
    for rot in adj:
        rng.shuffle(rot)
    return RotationGraph.from_adjacency(adj)


def random_triangulation(n: int, seed: int = 0) -> RotationGraph:
    """Maximal planar graph grown by inserting each vertex into a random face."""
    if n < 3:
        return path(n)
    rng = random.Random(seed)
    faces = [(0, 1, 2), (0, 2, 1)]
    for v in range(3, n):
        k = rng.randrange(len(faces))
        a, b, c = faces[k]
        faces[k] = (a, b, v)
        faces.append((b, c, v))
        faces.append((c, a, v))
    # face (x, y, z) walked with the face on the left: succ_y(x) = z
    succ = [dict() for _ in range(n)]
    for x, y, z in faces:
        succ[y][x] = z
        succ[z][y] = x
        succ[x][z] = y
    adj = []
    for v in range(n):
        start = min(succ[v])
        rot = [start]
        w = succ[v][start]
        while w != start:
            rot.append(w)
            w = succ[v][w]
        adj.append(rot)
    return RotationGraph.from_adjacency(adj)


def relabel(g: RotationGraph, seed: int) -> RotationGraph:
    """Same embedding with vertex ids shuffled; seed 0 keeps the ids."""
    if seed == 0 or g.n < 2:
        return g
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    adj = [None] * g.n
    for v, rot in enumerate(g.adjacency):
        adj[perm[v]] = tuple(perm[w] for w in rot)
    return RotationGraph.from_adjacency(adj)


def _near_square(n: int):
    r = int(math.isqrt(n))
    while n % r:
        r -= 1
    return r, n // r


def generate(family: str, n: int, seed: int = 0) -> RotationGraph:
    """A graph of ``family`` with exactly ``n`` vertices."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if family == "grid":
        if n == 0:
            return path(0)
        return relabel(grid(*_near_square(n)), seed)
    if family == "cylinder":
        if n < 3:
            return path(n)
        best = None
        for c in range(3, n + 1):
            if n % c == 0 and (best is None or abs(c - n // c) < abs(best - n // best)):
                best = c
        return relabel(cylinder(n // best, best), seed)
    if family == "random-triangulation":
        return random_triangulation(n, seed)
    if family == "big-face":
        return big_face(n, chords=n // 16, seed=seed)
    if family == "tree":
        return tree(n, seed)
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
