import math

import numpy as np
import pytest

from planarlabel.errors import SizeError
from planarlabel.gadget import (augment_with_gadgets, aux_count, build_subdivided_cycle,
                                gadget_distance_check)
from planarlabel.generators import big_face, generate, grid
from planarlabel.planar import (RotationGraph, all_pairs_distances, articulation_points,
                                enumerate_faces)


def test_triangle_gadget_is_plain_cycle():
    d = build_subdivided_cycle(3)
    assert d.aux == 0 and d.graph.m == 3


def test_ten_cycle_gets_eight_aux():
    d = build_subdivided_cycle(10)
    assert d.aux == 8 == aux_count(10)
    assert [len(r) for r in d.rings] == [10, 5, 3]


def test_five_cycle():
    d = build_subdivided_cycle(5)
    assert d.aux == 3
    ring = d.rings[1]
    # the last cycle vertex joins the last ring vertex
    assert ring[2] in d.rotations[4]


@pytest.mark.parametrize("s", [2, 1, 0, -4])
def test_too_small(s):
    with pytest.raises(SizeError):
        build_subdivided_cycle(s)


@pytest.mark.parametrize("s", range(3, 70))
def test_gadget_is_valid_embedding(s):
    d = build_subdivided_cycle(s)
    g = d.graph
    g.validate()
    assert g.n == s + aux_count(s)
    sizes = enumerate_faces(g).sizes()
    # one outer face of size s, everything else triangles or squares
    assert sorted(sizes.tolist())[-1] == s
    assert set(sizes.tolist()) <= {3, 4, s}


def test_small_distance_examples():
    assert all_pairs_distances(build_subdivided_cycle(4).graph)[0, 1] == 1
    d10 = all_pairs_distances(build_subdivided_cycle(10).graph)
    assert d10[0, 5] >= 3
    assert np.all(all_pairs_distances(build_subdivided_cycle(3).graph)[:3, :3] <= 1)


@pytest.mark.parametrize("s", [3, 4, 5, 9, 17, 33, 64])
def test_distance_check(s):
    assert gadget_distance_check(s)


def test_aux_recurrence_bound():
    # rounding up at every level can push the total slightly past s
    assert aux_count(33) == 17 + 9 + 5 + 3
    for s in list(range(3, 5000)) + [10**5, 10**6, 2**19 + 1]:
        assert aux_count(s) <= s + math.ceil(math.log2(s))
    for k in range(3, 21):
        assert aux_count(2**k) == 2**k - 4


def test_augment_triangle_and_square():
    k3 = RotationGraph.from_adjacency([(1, 2), (0, 2), (0, 1)])
    assert augment_with_gadgets(k3).n == 3
    sq = grid(2, 2)
    ag = augment_with_gadgets(sq)
    assert ag.n == 4 and sorted(enumerate_faces(ag.graph).sizes().tolist()) == [4, 4]


def test_augment_ten_cycle():
    ag = augment_with_gadgets(big_face(10))
    assert ag.n == 10 + 16
    assert ag.weights.tolist() == [1] * 10 + [0] * 16
    assert sorted(set(ag.face_of_aux.tolist())) == [0, 1]


@pytest.mark.parametrize("fam", ["grid", "cylinder", "random-triangulation", "big-face", "tree"])
@pytest.mark.parametrize("n", [4, 9, 50, 400])
def test_augmented_structure(fam, n):
    g = generate(fam, n, 1)
    ag = augment_with_gadgets(g)
    gp = ag.graph
    gp.validate()
    assert ag.n < 7 * n
    assert set(enumerate_faces(gp).sizes().tolist()) <= {3, 4}
    # original rotations survive, with spokes spliced in
    for v in range(n):
        assert [w for w in gp.adjacency[v] if w < n] == list(g.adjacency[v])
    if n > 3:
        assert articulation_points(gp) == []


def test_spoke_positions_match_walk():
    g = big_face(12)
    ag = augment_with_gadgets(g)
    for a in range(ag.original_count, ag.n):
        k = a - ag.original_count
        if ag.aux_layer[k] != 1:
            continue
        walk = ag.cycle_identification(int(ag.face_of_aux[k]))
        for v in ag.graph.adjacency[a]:
            if v < ag.original_count:
                assert walk[ag.spoke_position(v, a)] == v


def test_lower_bound_holds_in_augmented_graph():
    # distances between original vertices never shrink below the face-cycle bound
    g = big_face(40)
    d = all_pairs_distances(augment_with_gadgets(g).graph)
    for u in range(40):
        for v in range(40):
            gap = min(abs(u - v), 40 - abs(u - v))
            assert d[u, v] >= math.log2(1 + gap) - 1e-12
