"""Exact distances from two labels, without the graph."""
from __future__ import annotations

import numpy as np

from . import kernels
from .bitcodec import gamma_length, unpack_gamma
from .errors import FormatError
from .labeler import KIND_BASE, KIND_MEMBER, Label, LabelSet
from .planar import UNREACHABLE


def _check_pair(a: Label, b: Label) -> None:
    if a.fingerprint != b.fingerprint:
        raise FormatError("labels come from different graphs")
    if a.scheme != b.scheme:
        raise FormatError("labels come from different schemes")


def decode_distance(a: Label, b: Label) -> int:
    """Shortest-path distance between the labelled vertices, or UNREACHABLE."""
    _check_pair(a, b)
    if a.scheme == "improved":
        d = kernels.decode_gamma_pair(unpack_gamma(a.payload, a.nbits),
                                      unpack_gamma(b.payload, b.nbits))
        if d == -2:
            raise FormatError("malformed label")
        return int(d)
    return decode_records(a.parse(), b.parse())


def decode_records(pa, pb) -> int:
    """Same walk as :func:`decode_distance`, over parsed (top, levels) pairs."""
    top_a, levels_a = pa
    top_b, levels_b = pb
    if top_a != top_b:
        return UNREACHABLE
    best = None
    for la, lb in zip(levels_a, levels_b):
        if (la.kind == KIND_BASE) != (lb.kind == KIND_BASE) or la.size != lb.size:
            raise FormatError("labels disagree on level structure")
        if la.kind == KIND_BASE:
            d = la.base_distance(lb.index)
            return d if best is None else min(best, d)
        cur = int((la.separator_distances() + lb.separator_distances()).min())
        best = cur if best is None else min(best, cur)
        if la.in_separator or lb.in_separator or la.child != lb.child:
            return best
    raise FormatError("label ended without a terminal level")


def decode_with_cost(a: Label, b: Label):
    """(distance, bits consumed) for an improved-scheme pair.

    Bits consumed counts every codeword the walk reads from either label, a
    machine-independent proxy for query time.
    """
    _check_pair(a, b)
    va = unpack_gamma(a.payload, a.nbits).tolist()
    vb = unpack_gamma(b.payload, b.nbits).tolist()
    used = [0]

    def take(vals, i):
        used[0] += gamma_length(vals[i])
        return vals[i]

    if take(va, 0) != take(vb, 0):
        return UNREACHABLE, used[0]
    ia = ib = 1
    best = None
    while True:
        ka, kb = take(va, ia), take(vb, ib)
        size = take(va, ia + 1)
        take(vb, ib + 1)
        if ka == KIND_BASE:
            xa, xb = take(va, ia + 2) - 1, take(vb, ib + 2) - 1
            if xa == xb:
                d = 0
            else:
                d = take(va, ia + 3 + (xb if xb < xa else xb - 1))
            return (d if best is None else min(best, d)), used[0]
        da = take(va, ia + 2) - 1
        db = take(vb, ib + 2) - 1
        cur = da + db
        for i in range(1, size):
            za, zb = take(va, ia + 2 + i), take(vb, ib + 2 + i)
            da += za >> 1 if za % 2 == 0 else -(za >> 1)
            db += zb >> 1 if zb % 2 == 0 else -(zb >> 1)
            cur = min(cur, da + db)
        best = cur if best is None else min(best, cur)
        if ka == KIND_MEMBER or kb == KIND_MEMBER:
            return best, used[0]
        ia += 2 + size
        ib += 2 + size
        if take(va, ia) != take(vb, ib):
            return best, used[0]
        ia += 1
        ib += 1


class LabelDecoder:
    """Bulk decoding over a whole label set; unpacks every label once."""

    def __init__(self, labels: LabelSet):
        self.labels = labels
        if labels.scheme == "improved":
            vals = [unpack_gamma(p, nb) for p, nb in zip(labels.payloads, labels.nbits.tolist())]
            self.offsets = np.concatenate([[0], np.cumsum([len(v) for v in vals])]).astype(np.int64)
            self.flat = np.concatenate(vals) if vals else np.zeros(0, dtype=np.int64)
        else:
            self.parsed = [labels[v].parse() for v in range(labels.n)]

    def row(self, v: int, lo: int = 0) -> np.ndarray:
        """Decoded distances from ``v`` to vertices ``lo, lo+1, ..., n-1``."""
        if self.labels.scheme == "improved":
            out = kernels.decode_gamma_row(self.flat, self.offsets, v, lo)
            if np.any(out == -2):
                raise FormatError("malformed label")
            return out
        pv = self.parsed[v]
        return np.array([decode_records(pv, pw) for pw in self.parsed[lo:]], dtype=np.int64)

    def pair(self, v: int, w: int) -> int:
        if self.labels.scheme == "improved":
            a = self.flat[self.offsets[v]:self.offsets[v + 1]]
            b = self.flat[self.offsets[w]:self.offsets[w + 1]]
            return int(kernels.decode_gamma_pair(a, b))
        return decode_records(self.parsed[v], self.parsed[w])
