import pytest

from planarlabel.generators import FAMILIES, big_face, generate, grid, random_triangulation
from planarlabel.planar import connected_components, dump_graph, enumerate_faces


def test_grid_counts():
    g = grid(3, 3)
    assert (g.n, g.m) == (9, 12)


def test_big_face_without_chords():
    g = big_face(10, 0)
    assert (g.n, g.m) == (10, 10)
    assert sorted(enumerate_faces(g).sizes().tolist()) == [10, 10]


def test_random_triangulation_is_maximal():
    g = random_triangulation(100, 7)
    assert g.m == 3 * 100 - 6
    assert set(enumerate_faces(g).sizes().tolist()) == {3}


@pytest.mark.parametrize("fam", FAMILIES)
@pytest.mark.parametrize("n", [0, 1, 2, 3, 5, 16, 17, 97, 256])
def test_generate_valid(fam, n):
    g = generate(fam, n, 3)
    g.validate()
    assert g.n == n
    if n:
        assert connected_components(g)[1] == 1


@pytest.mark.parametrize("fam", FAMILIES)
def test_deterministic(fam):
    assert dump_graph(generate(fam, 200, 11)) == dump_graph(generate(fam, 200, 11))


@pytest.mark.parametrize("fam", ["random-triangulation", "tree", "grid", "big-face"])
def test_seed_matters(fam):
    assert dump_graph(generate(fam, 200, 1)) != dump_graph(generate(fam, 200, 2))


def test_unknown_family():
    with pytest.raises(ValueError):
        generate("hypercube", 8)
