import numpy as np
import pytest

from planarlabel import _pykernels, kernels
from planarlabel.bitcodec import BitStream, write_gamma
from planarlabel.generators import generate
from planarlabel.labeler import build_labels
from planarlabel.query import LabelDecoder

native = pytest.importorskip("planarlabel._kernels")

GRAPHS = [generate(f, n, s) for f in ("grid", "tree", "random-triangulation", "big-face")
          for n, s in ((1, 0), (7, 1), (60, 2), (300, 3))]


def _both(name, *args):
    return getattr(native, name)(*args), getattr(_pykernels, name)(*args)


def _same(a, b):
    if isinstance(a, tuple):
        assert len(a) == len(b)
        for x, y in zip(a, b):
            _same(x, y)
    elif isinstance(a, list):
        assert a == b
    else:
        np.testing.assert_array_equal(np.asarray(a), np.asarray(b))


@pytest.mark.parametrize("g", GRAPHS, ids=repr)
def test_graph_kernels_agree(g):
    ip, ix = g.indptr, g.indices
    _same(*_both("bfs_rows", ip, ix, np.arange(g.n, dtype=np.int64)))
    _same(*_both("bfs_tree", ip, ix, 0))
    removed = (np.arange(g.n) % 3 == 0).astype(np.uint8)
    _same(*_both("component_labels", ip, ix, removed))
    _same(*_both("permutation_cycles", g.next_dart))
    edge_ids = np.minimum(np.arange(len(ix)), g.twin)
    _same(*_both("dfs_tree", ip, ix, edge_ids, 0))


def test_permutation_cycles_cover_every_element():
    perm = np.random.default_rng(5).permutation(1000).astype(np.int64)
    cid, order, starts = kernels.permutation_cycles(perm)
    assert sorted(order.tolist()) == list(range(1000))
    for c in range(len(starts) - 1):
        cyc = order[starts[c]:starts[c + 1]]
        assert np.all(perm[cyc] == np.roll(cyc, -1))
        assert np.all(cid[cyc] == c)


def test_subtree_sums_match_naive():
    g = generate("tree", 200, 4)
    order, parent, _, _ = kernels.bfs_tree(g.indptr, g.indices, 0)
    vals = np.arange(200, dtype=np.int64) % 7
    got = kernels.subtree_sums(order, parent, vals)
    for v in range(0, 200, 17):
        acc, stack = 0, [v]
        while stack:
            u = stack.pop()
            acc += vals[u]
            stack.extend(w for w in range(200) if parent[w] == u and w != u)
        assert got[v] == acc


def test_pack_and_unpack_agree_across_backends():
    rng = np.random.default_rng(0)
    vals = rng.integers(1, 1 << 40, size=(50, 30))
    lengths = rng.integers(0, 31, size=50)
    widths = np.where(np.arange(30) < lengths[:, None],
                      2 * np.floor(np.log2(vals)).astype(np.int64) + 1, 0)
    pa, na = native.pack_rows(vals, widths, lengths)
    pb, nb = _pykernels.pack_rows(vals, widths, lengths)
    assert pa == pb
    np.testing.assert_array_equal(na, nb)
    for r in range(50):
        out = native.unpack_gamma(np.frombuffer(pa[r], dtype=np.uint8), int(na[r]))
        assert out.tolist() == vals[r, :lengths[r]].tolist()
        assert _pykernels.unpack_gamma(pb[r], int(nb[r])).tolist() == out.tolist()


def test_unpack_truncated_raises(backend):
    b = BitStream()
    write_gamma(b, 1000)
    with pytest.raises(ValueError):
        kernels.unpack_gamma(b.to_bytes(), len(b) - 3)


def test_decode_rejects_malformed(backend):
    assert kernels.decode_gamma_pair(np.array([1, 9, 1]), np.array([1, 9, 1])) == -2


@pytest.mark.parametrize("fam", ["grid", "big-face"])
def test_decode_row_agrees(fam):
    g = generate(fam, 150, 1)
    dec = LabelDecoder(build_labels(g))
    for v in (0, 37, 149):
        a = native.decode_gamma_row(dec.flat, dec.offsets, v, 0)
        b = _pykernels.decode_gamma_row(dec.flat, dec.offsets, v, 0)
        np.testing.assert_array_equal(a, b)
        np.testing.assert_array_equal(native.decode_gamma_row(dec.flat, dec.offsets, v, v), a[v:])


def test_env_var_selects_fallback():
    import subprocess
    import sys
    out = subprocess.run([sys.executable, "-c", "from planarlabel import kernels; print(kernels.backend())"],
                         env={"PLANARLABEL_BACKEND": "python", "PATH": ""}, capture_output=True, text=True)
    assert out.stdout.strip() == "python"


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")
