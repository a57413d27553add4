"""Subdivided cycles and the gadget-augmented graph.

``D_s`` is the cycle ``C_s`` plus, for ``s > 4``, a ring of ``ceil(s/2)``
auxiliary vertices where cycle vertex ``i`` (0-based) is joined to ring
vertex ``i // 2``, and the ring is itself closed off with ``D_ceil(s/2)``.
Distances across the gadget grow only logarithmically with the distance
along the cycle, which is what makes separator distance deltas cheap.

Embedding: every ring lies inside the previous one and runs in the same
direction. With the face on the left of the outer walk, the clockwise
rotation of ring vertex ``j`` is::

    outer[2j], ring[j-1], <inner spoke>, ring[j+1], outer[2j+1]
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SizeError
from .planar import RotationGraph, all_pairs_distances, enumerate_faces


def aux_count(s: int) -> int:
    """Number of auxiliary vertices in ``D_s``."""
    total = 0
    while s > 4:
        s = (s + 1) // 2
        total += s
    return total


def _grow_rings(cycle, next_id):
    """Build the nested rings inside ``cycle`` (a list of vertex ids).

    Returns (rings, rotations, spokes): rings[0] is ``cycle``; ``rotations``
    maps each new id (consecutive from ``next_id``) to its clockwise rotation;
    ``spokes[i]`` is the ring-1 vertex joined to ``cycle[i]`` (empty if
    ``len(cycle) <= 4``).
    """
    rings = [list(cycle)]
    rotations = {}
    spokes = []
    cur = rings[0]
    while len(cur) > 4:
        s = len(cur)
        t = (s + 1) // 2
        ring = list(range(next_id, next_id + t))
        next_id += t
        for j in range(t):
            rot = [cur[2 * j], ring[j - 1], None, ring[(j + 1) % t]]
            if 2 * j + 1 < s:
                rot.append(cur[2 * j + 1])
            rotations[ring[j]] = rot
        if len(rings) == 1:
            spokes = [ring[i // 2] for i in range(s)]
        else:
            for i, v in enumerate(cur):
                rotations[v][2] = ring[i // 2]
        rings.append(ring)
        cur = ring
    for v in cur if len(rings) > 1 else ():
        rotations[v].remove(None)
    return rings, rotations, spokes


@dataclass(frozen=True)
class SubdividedCycle:
    s: int
    rings: tuple
    edges: tuple
    rotations: tuple = field(repr=False)

    @property
    def n_vertices(self) -> int:
        return self.s + self.aux

    @property
    def aux(self) -> int:
        return sum(len(r) for r in self.rings[1:])

    def layer_of(self, v: int) -> int:
        for k, ring in enumerate(self.rings):
            if ring[0] <= v <= ring[-1]:
                return k
        raise IndexError(v)

    @property
    def graph(self) -> RotationGraph:
        return RotationGraph.from_adjacency(self.rotations)


def build_subdivided_cycle(s: int) -> SubdividedCycle:
    if s < 3:
        raise SizeError(f"subdivided cycle needs s >= 3, got {s}")
    rings, aux_rot, spokes = _grow_rings(range(s), s)
    rotations = []
    for i in range(s):
        rot = [(i - 1) % s]
        if spokes:
            rot.append(spokes[i])
        rot.append((i + 1) % s)
        rotations.append(tuple(rot))
    for v in range(s, s + len(aux_rot)):
        rotations.append(tuple(aux_rot[v]))
    edges = tuple(sorted({(min(v, w), max(v, w)) for v, r in enumerate(rotations) for w in r}))
    return SubdividedCycle(s, tuple(tuple(r) for r in rings), edges, tuple(rotations))


def gadget_distance_check(s: int) -> bool:
    """True iff every cycle pair is at least log2(1 + cycle distance) apart in ``D_s``."""
    d = build_subdivided_cycle(s)
    dist = all_pairs_distances(d.graph)[:s, :s].astype(np.float64)
    idx = np.arange(s)
    gap = np.abs(idx[:, None] - idx[None, :])
    cyc = np.minimum(gap, s - gap)
    return bool(np.all(dist >= np.log2(1 + cyc) - 1e-12))


@dataclass(frozen=True)
class AugmentedGraph:
    """G' : the input graph with every face of size >= 5 replaced by a gadget.

    Vertices ``0..n-1`` are the original ones, ``n..`` auxiliary. For an
    auxiliary vertex ``a``, ``face_of_aux[a-n]`` is the face whose gadget owns
    it, ``aux_layer`` its ring depth (1 = joined to the face walk) and
    ``aux_index`` its position on that ring.
    """

    graph: RotationGraph
    original_count: int
    weights: np.ndarray
    face_of_aux: np.ndarray
    aux_layer: np.ndarray
    aux_index: np.ndarray
    faces: object = field(repr=False)

    @property
    def n(self) -> int:
        return self.graph.n

    def is_aux(self, v: int) -> bool:
        return v >= self.original_count

    def cycle_identification(self, face: int) -> tuple:
        """Original vertex at each gadget cycle position of ``face``."""
        return self.faces[face].walk

    def spoke_position(self, v: int, a: int) -> int:
        """Walk position of original ``v`` whose spoke reaches ring-1 vertex ``a``."""
        k = a - self.original_count
        if self.aux_layer[k] != 1:
            raise ValueError(f"{a} is not on the first gadget ring")
        walk = self.faces.graph.tails[self.faces.darts(int(self.face_of_aux[k]))]
        p = 2 * int(self.aux_index[k])
        if walk[p] == v:
            return p
        if p + 1 < len(walk) and walk[p + 1] == v:
            return p + 1
        raise ValueError(f"{v} is not joined to {a}")


def augment_with_gadgets(g: RotationGraph, faces=None) -> AugmentedGraph:
    if faces is None:
        faces = enumerate_faces(g)
    n = g.n
    sizes = np.diff(faces.offsets)
    twin = g.twin
    next_id = n
    ins_pos, ins_aux = [], []
    aux_rot = []
    face_of_aux, aux_layer, aux_index = [], [], []
    for f in np.flatnonzero(sizes > 4).tolist():
        darts = faces.darts(f)
        walk = g.tails[darts].tolist()
        rings, rot, spokes = _grow_rings(walk, next_id)
        # spoke at walk position i sits in the angle after the incoming dart's twin
        ins_pos.extend(twin[np.roll(darts, 1)].tolist())
        ins_aux.extend(spokes)
        for k, ring in enumerate(rings[1:], start=1):
            for j, a in enumerate(ring):
                aux_rot.append(rot[a])
                face_of_aux.append(f)
                aux_layer.append(k)
                aux_index.append(j)
        next_id += len(rot)

    n_darts = len(g.indices)
    ins_pos = np.array(ins_pos, dtype=np.int64)
    keys = np.concatenate([2 * np.arange(n_darts, dtype=np.int64), 2 * ins_pos + 1])
    vals = np.concatenate([g.indices, np.array(ins_aux, dtype=np.int64)])
    orig_flat = vals[np.argsort(keys, kind="stable")]
    counts = np.diff(g.indptr) + np.bincount(g.tails[ins_pos], minlength=n)
    aux_counts = np.array([len(r) for r in aux_rot], dtype=np.int64)
    indptr = np.zeros(next_id + 1, dtype=np.int64)
    np.cumsum(np.concatenate([counts, aux_counts]), out=indptr[1:])
    aux_flat = np.array([w for r in aux_rot for w in r], dtype=np.int64)
    gp = RotationGraph(indptr, np.concatenate([orig_flat, aux_flat]))

    weights = np.zeros(next_id, dtype=np.int64)
    weights[:n] = 1
    return AugmentedGraph(
        graph=gp,
        original_count=n,
        weights=weights,
        face_of_aux=np.array(face_of_aux, dtype=np.int64),
        aux_layer=np.array(aux_layer, dtype=np.int64),
        aux_index=np.array(aux_index, dtype=np.int64),
        faces=faces,
    )
