"""Balanced cycle separators in the augmented graph, projected back to G.

The augmented graph has only triangular and square faces. One diagonal per
square makes it a triangulation, where some fundamental cycle of any
spanning tree is a 2/3-balanced separator. We use the BFS tree from vertex
0, so every fundamental cycle has at most ``2 * depth + 1`` vertices.

Interior weights come from the dual tree (faces joined across non-tree
edges): each vertex is charged to one incident face, and the faces on the
far side of a non-tree edge form a dual subtree.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import SeparatorError
from .gadget import AugmentedGraph, augment_with_gadgets
from .planar import RotationGraph, connected_components


def balance_bound(total: int) -> int:
    """Largest component weight allowed after removing a separator."""
    return -(-2 * total // 3)


@dataclass(frozen=True)
class Triangulation:
    """Dart arrays of the augmented graph plus one diagonal per square face.

    Parallel edges are possible (two squares may share a diagonal's corners),
    so twins are stored explicitly. ``diag_corners[k]`` is ``(a, c, b, d)``:
    diagonal ``a-c`` of square ``a, b, c, d``.
    """

    indptr: np.ndarray
    heads: np.ndarray
    twin: np.ndarray
    diag_of_dart: np.ndarray
    diag_corners: np.ndarray

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def tails(self) -> np.ndarray:
        return np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))

    def next_dart(self) -> np.ndarray:
        succ = np.arange(1, len(self.heads) + 1, dtype=np.int64)
        nonempty = np.diff(self.indptr) > 0
        succ[self.indptr[1:][nonempty] - 1] = self.indptr[:-1][nonempty]
        return succ[self.twin]

    def face_sizes(self) -> np.ndarray:
        _, _, offsets = kernels.permutation_cycles(self.next_dart())
        return np.diff(offsets)


def triangulate_squares(ag: AugmentedGraph) -> Triangulation:
    g = ag.graph
    n = g.n
    twin = g.twin
    _, order, offsets = kernels.permutation_cycles(g.next_dart)
    sizes = np.diff(offsets)
    if np.any((sizes != 3) & (sizes != 4)):
        raise SeparatorError("augmented graph has a face that is neither a triangle nor a square")
    quads = np.flatnonzero(sizes == 4)
    darts = order[offsets[quads][:, None] + np.arange(4)]
    corners = g.tails[darts]
    keys = set((g.tails * n + g.indices).tolist())
    ins_pos, ins_head, registry = [], [], []
    for q, (a, b, c, d) in enumerate(corners.tolist()):
        ac_free = a != c and a * n + c not in keys
        bd_free = b != d and b * n + d not in keys
        if ac_free or not bd_free and a != c:
            i, j, x, y = 0, 2, b, d
            u, v = a, c
        else:
            i, j, x, y = 1, 3, c, a
            u, v = b, d
        keys.add(u * n + v)
        keys.add(v * n + u)
        dq = darts[q]
        # corner k's angle follows the twin of the dart arriving at it
        ins_pos.append(int(twin[dq[i - 1]]))
        ins_head.append(v)
        ins_pos.append(int(twin[dq[j - 1]]))
        ins_head.append(u)
        registry.append((u, v, x, y))

    n_darts = len(g.indices)
    ins_pos = np.array(ins_pos, dtype=np.int64)
    keys_arr = np.concatenate([2 * np.arange(n_darts, dtype=np.int64), 2 * ins_pos + 1])
    perm = np.argsort(keys_arr, kind="stable")
    new_index = np.empty_like(perm)
    new_index[perm] = np.arange(len(perm))
    heads = np.concatenate([g.indices, np.array(ins_head, dtype=np.int64)])[perm]
    old_new = new_index[:n_darts]
    ins_new = new_index[n_darts:]
    new_twin = np.empty(len(perm), dtype=np.int64)
    new_twin[old_new] = old_new[twin]
    new_twin[ins_new[0::2]] = ins_new[1::2]
    new_twin[ins_new[1::2]] = ins_new[0::2]
    counts = np.diff(g.indptr) + np.bincount(g.tails[ins_pos], minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    diag_of_dart = np.full(len(perm), -1, dtype=np.int64)
    diag_of_dart[ins_new] = np.repeat(np.arange(len(registry)), 2)
    return Triangulation(indptr, heads, new_twin, diag_of_dart,
                         np.array(registry, dtype=np.int64).reshape(-1, 4))


@dataclass(frozen=True)
class CycleSeparator:
    walk: tuple
    vertices: np.ndarray
    max_component_weight: int
    bound: int
    edge_scanned: int = field(default=-1, repr=False)

    @property
    def length(self) -> int:
        return len(self.walk)


def _tree_cycle(x, z, parent, depth):
    """Vertices of the fundamental cycle x -> apex -> z, and the apex index."""
    left, right = [x], [z]
    while depth[left[-1]] > depth[right[-1]]:
        left.append(parent[left[-1]])
    while depth[right[-1]] > depth[left[-1]]:
        right.append(parent[right[-1]])
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    return left + right[-2::-1], len(left) - 1


def weighted_cycle_separator(ag: AugmentedGraph, weights=None, tri=None) -> CycleSeparator:
    """Fundamental-cycle separator of the triangulated augmented graph."""
    if ag.n < 3:
        raise SeparatorError("cycle separator needs at least 3 vertices")
    T = tri if tri is not None else triangulate_squares(ag)
    w = np.asarray(ag.weights if weights is None else weights, dtype=np.int64)
    total = int(w.sum())
    tails = T.tails
    order, parent, pdart, depth = kernels.bfs_tree(T.indptr, T.heads, 0)
    if len(order) != T.n:
        raise SeparatorError("augmented graph is disconnected")

    n_darts = len(T.heads)
    tree = np.zeros(n_darts, dtype=bool)
    tree[pdart[pdart >= 0]] = True
    tree[T.twin[pdart[pdart >= 0]]] = True
    face_of_dart, _, offsets = kernels.permutation_cycles(T.next_dart())
    n_faces = len(offsets) - 1
    canon = np.flatnonzero((np.arange(n_darts) < T.twin) & ~tree)
    if len(canon) != n_faces - 1:
        raise SeparatorError("non-tree edges do not form a dual spanning tree")
    if len(canon) == 0:
        raise SeparatorError("triangulation has no non-tree edge")

    fa = face_of_dart[canon]
    fb = face_of_dart[T.twin[canon]]
    eid = np.arange(len(canon), dtype=np.int64)
    src = np.concatenate([fa, fb])
    dst = np.concatenate([fb, fa])
    eids = np.concatenate([eid, eid])
    srt = np.argsort(src, kind="stable")
    dptr = np.zeros(n_faces + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n_faces), out=dptr[1:])
    dorder, dparent, dpedge = kernels.dfs_tree(dptr, dst[srt], eids[srt], 0)
    if len(dorder) != n_faces:
        raise SeparatorError("dual graph is disconnected")

    owner = face_of_dart[T.indptr[:-1]]
    face_w = np.bincount(owner, weights=w, minlength=n_faces).astype(np.int64)
    sub_w = kernels.subtree_sums(dorder, dparent, face_w)
    sub_n = kernels.subtree_sums(dorder, dparent, np.ones(n_faces, dtype=np.int64))
    tin = np.empty(n_faces, dtype=np.int64)
    tin[dorder] = np.arange(n_faces)
    child = np.where(dpedge[fa] == eid, fa, fb)
    inside_w = sub_w[child]
    slack = (2 * int(depth.max()) + 1) * int(w.max())
    maybe = (3 * (inside_w - slack) <= 2 * total) & (3 * (total - inside_w - slack) <= 2 * total)

    parent_l = parent.tolist()
    depth_l = depth.tolist()
    for k in np.flatnonzero(maybe).tolist():
        d = int(canon[k])
        cyc, apex = _tree_cycle(int(tails[d]), int(T.heads[d]), parent_l, depth_l)
        cyc = np.array(cyc)
        f = int(child[k])
        t_own = tin[owner[cyc]]
        on_inside = (t_own >= tin[f]) & (t_own < tin[f] + sub_n[f])
        w_in = int(inside_w[k]) - int(w[cyc][on_inside].sum())
        w_out = total - w_in - int(w[cyc].sum())
        if 3 * max(w_in, w_out) <= 2 * total:
            walk = _repair_diagonals(cyc.tolist(), apex, T, pdart, d)
            return _certify(ag, walk, w, k)
    raise SeparatorError("no balanced fundamental cycle found")


def _repair_diagonals(cyc, apex, T: Triangulation, pdart, closing_dart):
    """Replace each diagonal step by a two-edge detour along its square."""
    L = len(cyc)
    on_walk = set(cyc)
    walk = []
    for i, u in enumerate(cyc):
        if i < apex:
            dart = T.twin[pdart[u]]
        elif i < L - 1:
            dart = pdart[cyc[i + 1]]
        else:
            dart = T.twin[closing_dart]
        walk.append(u)
        k = T.diag_of_dart[dart]
        if k >= 0:
            _, _, b, d = T.diag_corners[k].tolist()
            mid = b if b not in on_walk or d in on_walk else d
            walk.append(mid)
            on_walk.add(mid)
    return walk


def _certify(ag: AugmentedGraph, walk, w, k) -> CycleSeparator:
    removed = np.zeros(ag.n, dtype=np.uint8)
    removed[walk] = 1
    comp, count = connected_components(ag.graph, removed)
    keep = comp >= 0
    worst = int(np.bincount(comp[keep], weights=w[keep], minlength=count).max()) if count else 0
    bound = balance_bound(int(w.sum()))
    if worst > bound:
        raise SeparatorError(f"cycle leaves a component of weight {worst} > {bound}")
    return CycleSeparator(tuple(walk), np.flatnonzero(removed), worst, bound, k)


@dataclass(frozen=True)
class SeparatorResult:
    """Ordered separator of the original graph with its certificates.

    ``gaps[i]`` bounds the distance from ``vertices[i]`` to the next vertex
    (cyclically) by a walk along face boundaries.
    """

    vertices: np.ndarray
    gaps: np.ndarray
    log_sum: float
    max_component: int
    bound: int
    components: np.ndarray = field(repr=False)
    component_count: int = 0
    cycle_length: int = 0

    @property
    def c(self) -> int:
        return len(self.vertices)


def project_separator(cs: CycleSeparator, ag: AugmentedGraph, g: RotationGraph) -> SeparatorResult:
    n = ag.original_count
    walk = list(cs.walk)
    starts = [i for i, v in enumerate(walk) if v < n]
    if not starts:
        raise SeparatorError("cycle separator avoids every original vertex")
    walk = walk[starts[0]:] + walk[:starts[0]]
    L = len(walk)
    sizes = np.diff(ag.faces.offsets)

    originals, seg_gaps = [], []
    i = 0
    while i < L:
        u = walk[i]
        originals.append(u)
        j = i + 1
        while j < L and walk[j] >= n:
            j += 1
        v = walk[j % L]
        if j == i + 1:
            seg_gaps.append(1)
        else:
            a_in, a_out = walk[i + 1], walk[j - 1]
            p = ag.spoke_position(u, a_in)
            q = ag.spoke_position(v, a_out)
            s = int(sizes[ag.face_of_aux[a_in - n]])
            diff = abs(p - q)
            seg_gaps.append(min(diff, s - diff))
        i = j

    first = {}
    for idx, u in enumerate(originals):
        first.setdefault(u, idx)
    order = sorted(first.items(), key=lambda kv: kv[1])
    verts = np.array([u for u, _ in order], dtype=np.int64)
    marks = [idx for _, idx in order] + [len(originals)]
    if len(verts) == 1:
        gaps = np.zeros(1, dtype=np.int64)
    else:
        gaps = np.array([sum(seg_gaps[marks[t]:marks[t + 1]]) for t in range(len(verts))],
                        dtype=np.int64)
    log_sum = float(np.log2(1 + gaps).sum())

    removed = np.zeros(g.n, dtype=np.uint8)
    removed[verts] = 1
    comp, count = connected_components(g, removed)
    worst = int(np.bincount(comp[comp >= 0], minlength=count).max()) if count else 0
    bound = balance_bound(g.n)
    if worst > bound:
        raise SeparatorError(f"projected separator leaves a component of {worst} > {bound} vertices")
    return SeparatorResult(verts, gaps, log_sum, worst, bound, comp, count, L)


def find_separator(g: RotationGraph) -> SeparatorResult:
    """Separator of a connected graph with at least 3 vertices."""
    ag = augment_with_gadgets(g)
    cs = weighted_cycle_separator(ag)
    return project_separator(cs, ag, g)


__all__ = [
    "CycleSeparator",
    "SeparatorResult",
    "Triangulation",
    "balance_bound",
    "find_separator",
    "project_separator",
    "triangulate_squares",
    "weighted_cycle_separator",
]
