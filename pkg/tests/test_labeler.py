import math

import numpy as np
import pytest

from planarlabel.errors import FormatError
from planarlabel.generators import FAMILIES, generate, grid, path
from planarlabel.labeler import (KIND_BASE, KIND_MEMBER, KIND_SEPARATOR, build_label_sets,
                                 build_labels, build_labels_baseline, deserialize_labels,
                                 read_label, serialize_labels, separator_distances)
from planarlabel.planar import RotationGraph, all_pairs_distances
from planarlabel.query import LabelDecoder, decode_distance
from planarlabel.separator import find_separator

K3 = RotationGraph.from_adjacency([(1, 2), (0, 2), (0, 1)])


def assert_exact(labels, g):
    truth = all_pairs_distances(g)
    dec = LabelDecoder(labels)
    for v in range(g.n):
        np.testing.assert_array_equal(dec.row(v), truth[v])


def test_single_vertex():
    L = build_labels(path(1))
    top, levels = L[0].parse()
    assert top == 0 and len(levels) == 1
    assert levels[0].kind == KIND_BASE and levels[0].distances == ()


def test_single_edge():
    L = build_labels(path(2))
    assert decode_distance(L[0], L[1]) == 1


@pytest.mark.parametrize("scheme", ["improved", "baseline"])
def test_three_by_three(scheme):
    g = grid(3, 3)
    L = build_label_sets(g, schemes=(scheme,))[scheme]
    assert_exact(L, g)


def test_forced_recursion_small_threshold(backend):
    g = grid(6, 6)
    for scheme, L in build_label_sets(g, base_threshold=2, schemes=("improved", "baseline")).items():
        assert L.depth.max() > 2
        assert_exact(L, g)


def test_k3_labels_small():
    for L in build_label_sets(K3, schemes=("improved", "baseline")).values():
        assert L.max_bits() <= 64


def test_level_records_reconstruct_bfs_rows():
    g = generate("grid", 400, 0)
    sep = find_separator(g)
    rows = separator_distances(g, sep)
    L = build_labels(g)
    d = all_pairs_distances(g)
    for v in range(0, 400, 7):
        _, levels = L[v].parse()
        first = levels[0]
        assert first.kind in (KIND_SEPARATOR, KIND_MEMBER)
        np.testing.assert_array_equal(first.separator_distances(), rows[:, v])
        # consecutive entries move by at most the distance between separator vertices
        u = sep.vertices
        assert np.all(np.abs(np.diff(rows[:, v])) <= d[u[:-1], u[1:]])
    assert rows[0, sep.vertices[0]] == 0


def test_members_stop_at_their_level():
    g = generate("grid", 400, 0)
    sep = find_separator(g)
    L = build_labels(g)
    for v in sep.vertices.tolist():
        _, levels = L[v].parse()
        assert len(levels) == 1 and levels[0].kind == KIND_MEMBER


def test_disconnected_graph_unreachable():
    g = RotationGraph.from_adjacency([(1, 2), (0, 2), (0, 1), (4,), (3,), ()])
    for L in build_label_sets(g, schemes=("improved", "baseline")).values():
        assert_exact(L, g)
        assert decode_distance(L[0], L[4]) == -1


def test_baseline_matches_improved():
    g = generate("random-triangulation", 300, 4)
    a, b = build_labels(g), build_labels_baseline(g)
    da, db = LabelDecoder(a), LabelDecoder(b)
    for v in range(0, 300, 29):
        np.testing.assert_array_equal(da.row(v), db.row(v))


def test_baseline_bigger_on_large_grid():
    g = generate("grid", 10_000, 0)
    s = build_label_sets(g, schemes=("improved", "baseline"))
    assert s["baseline"].max_bits() >= s["improved"].max_bits()


@pytest.mark.parametrize("fam", FAMILIES)
def test_depth_bound(fam):
    for n in (17, 100, 1000, 3000):
        L = build_labels(generate(fam, n, 1))
        assert L.depth.max() <= max(0, math.ceil(math.log(n / 16, 1.5))) + 1


@pytest.mark.parametrize("fam", FAMILIES)
def test_level_certificates(fam):
    L = build_labels(generate(fam, 2000, 2))
    for st in L.levels:
        assert st.max_component <= math.ceil(2 * st.size / 3)
        assert st.log_sum <= 24 * math.sqrt(st.size)


@pytest.mark.parametrize("scheme", ["improved", "baseline"])
def test_serialize_round_trip(scheme):
    g = generate("big-face", 200, 3)
    L = build_label_sets(g, schemes=(scheme,))[scheme]
    data = serialize_labels(L)
    back = deserialize_labels(data)
    assert back.scheme == scheme and back.n == 200 and back.fingerprint == L.fingerprint
    assert back.payloads == L.payloads and back.nbits.tolist() == L.nbits.tolist()
    assert serialize_labels(back) == data
    for v in (0, 99, 199):
        assert read_label(data, v) == L[v]


def test_empty_graph_file():
    L = build_labels(path(0))
    data = serialize_labels(L)
    back = deserialize_labels(data)
    assert back.n == 0 and back.max_bits() == 0


def test_corruption_detected():
    data = serialize_labels(build_labels(generate("grid", 100, 0)))
    for pos in (0, 5, 30, len(data) // 2, len(data) - 10, len(data) - 1):
        bad = bytearray(data)
        bad[pos] ^= 0x10
        with pytest.raises(FormatError):
            deserialize_labels(bytes(bad))
    with pytest.raises(FormatError):
        deserialize_labels(data[:-7])
    with pytest.raises(FormatError):
        read_label(data, 100)


def test_builds_are_byte_identical():
    g = generate("random-triangulation", 500, 8)
    for scheme in ("improved", "baseline"):
        a = serialize_labels(build_label_sets(g, schemes=(scheme,))[scheme])
        b = serialize_labels(build_label_sets(g, schemes=(scheme,))[scheme])
        assert a == b


def test_unknown_scheme():
    with pytest.raises(ValueError):
        build_label_sets(K3, schemes=("fancy",))


def test_label_size_grows_like_sqrt():
    bits = [build_labels(generate("grid", n, 0)).max_bits() for n in (1024, 4096)]
    assert bits[1] / bits[0] <= 2.4
