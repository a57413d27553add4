"""Backend selection for the hot kernels.

The compiled extension ``_kernels`` is used when it imports; otherwise the
pure-Python ``_pykernels`` twin takes over. Set ``PLANARLABEL_BACKEND=python``
to force the fallback, or call :func:`use_backend` at runtime.
"""
import os

import numpy as np

from . import _pykernels

try:
    from . import _kernels as _native
except ImportError:  # extension not built
    _native = None

BACKENDS = {"python": _pykernels}
if _native is not None:
    BACKENDS["native"] = _native

_impl = _native if _native is not None else _pykernels
if os.environ.get("PLANARLABEL_BACKEND") == "python":
    _impl = _pykernels


def backend():
    """Name of the active backend, ``"native"`` or ``"python"``."""
    return "native" if _impl is _native and _native is not None else "python"


def use_backend(name):
    """Switch the active backend; returns the previous name."""
    global _impl
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable (have {sorted(BACKENDS)})")
    prev = backend()
    _impl = BACKENDS[name]
    return prev


def _i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def bfs_rows(indptr, indices, sources):
    """int32 matrix of hop counts, one row per source, -1 where unreachable."""
    return _impl.bfs_rows(_i64(indptr), _i64(indices), _i64(sources))


def bfs_tree(indptr, indices, root):
    """BFS from ``root``: (order, parent, parent_dart, depth)."""
    return _impl.bfs_tree(_i64(indptr), _i64(indices), int(root))


def component_labels(indptr, indices, removed=None):
    """Dense component ids (ascending by smallest vertex), -1 for removed."""
    n = len(indptr) - 1
    if removed is None:
        removed = np.zeros(n, dtype=np.uint8)
    return _impl.component_labels(_i64(indptr), _i64(indices),
                                  np.ascontiguousarray(removed, dtype=np.uint8))


def permutation_cycles(perm):
    """(cycle id per element, elements in traversal order, cycle offsets)."""
    return _impl.permutation_cycles(_i64(perm))


def dfs_tree(indptr, indices, edge_ids, root):
    return _impl.dfs_tree(_i64(indptr), _i64(indices), _i64(edge_ids), int(root))


def subtree_sums(order, parent, values):
    return _impl.subtree_sums(_i64(order), _i64(parent), _i64(values))


def pack_rows(values, widths, lengths):
    return _impl.pack_rows(_i64(values), _i64(widths), _i64(lengths))


def unpack_gamma(data, nbits):
    return _impl.unpack_gamma(np.frombuffer(bytes(data), dtype=np.uint8)
                              if _impl is _native else bytes(data), int(nbits))


def decode_gamma_pair(a, b):
    return _impl.decode_gamma_pair(_i64(a), _i64(b))


def decode_gamma_row(flat, offsets, src, lo=0):
    """Decoded distances from label ``src`` to labels ``lo .. n-1``."""
    return _impl.decode_gamma_row(_i64(flat), _i64(offsets), int(src), int(lo))
