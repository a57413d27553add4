"""Distance labels built by recursive cycle separation.

Every label is a bit stream. It opens with the vertex's top-level component
id and then holds one level per recursion step, from the whole component
down to the piece containing the vertex. All fields of the improved scheme
are Elias-gamma codewords::

    top      gamma(component + 1)
    level    gamma(kind) ...
      kind 1 (separator, vertex not on it) / kind 2 (vertex on the separator):
             gamma(c), gamma(d_1 + 1), signed(d_2 - d_1) ... signed(d_c - d_{c-1}),
             then gamma(child + 1) for kind 1 only (kind 2 ends the label)
      kind 3 (base case, component of k <= base_threshold vertices):
             gamma(k), gamma(index + 1), gamma(d_j) for every other vertex j

``d_i`` is the distance to the i-th separator vertex inside the current
component, and ``child`` the id of the component of (component - separator)
that holds the vertex. The baseline scheme keeps the same layout but writes
distances as fixed-width binary, announcing the width with gamma(w) after
the separator size (or after the index in a base level).
"""
from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .bitcodec import BitStream, gamma_widths, read_gamma, read_signed, unpack_gamma, zigzag_array
from .errors import CodecError, FormatError
from .planar import RotationGraph, connected_components
from .separator import SeparatorResult, find_separator

KIND_SEPARATOR = 1
KIND_MEMBER = 2
KIND_BASE = 3
SCHEMES = ("improved", "baseline")
DEFAULT_BASE_THRESHOLD = 16
_ROW_CHUNK = 2048


@dataclass(frozen=True)
class LevelRecord:
    kind: int
    size: int
    first_distance: int = 0
    deltas: tuple = ()
    child: int | None = None
    index: int | None = None
    distances: tuple = ()

    @property
    def in_separator(self) -> bool:
        return self.kind == KIND_MEMBER

    def separator_distances(self) -> np.ndarray:
        """Distances to u_1..u_c rebuilt by prefix sums."""
        return np.cumsum(np.array((self.first_distance,) + self.deltas, dtype=np.int64))

    def base_distance(self, index: int) -> int:
        if index == self.index:
            return 0
        return self.distances[index if index < self.index else index - 1]


@dataclass(frozen=True)
class Label:
    vertex: int
    payload: bytes
    nbits: int
    fingerprint: bytes
    scheme: str = "improved"

    def __len__(self):
        return self.nbits

    def parse(self):
        """(top component, list of LevelRecord)."""
        if self.scheme == "improved":
            return _parse_improved(unpack_gamma(self.payload, self.nbits).tolist())
        return _parse_baseline(BitStream(self.payload, self.nbits))


def _parse_improved(vals):
    try:
        top = vals[0] - 1
        levels = []
        i = 1
        while True:
            kind = vals[i]
            if kind == KIND_BASE:
                k, idx = vals[i + 1], vals[i + 2] - 1
                dist = tuple(vals[i + 3:i + 3 + k - 1])
                if len(dist) != k - 1:
                    raise FormatError("truncated base level")
                levels.append(LevelRecord(kind, k, index=idx, distances=dist))
                i += 3 + k - 1
                break
            if kind not in (KIND_SEPARATOR, KIND_MEMBER):
                raise FormatError(f"unknown level kind {kind}")
            c = vals[i + 1]
            first = vals[i + 2] - 1
            deltas = tuple(z >> 1 if z % 2 == 0 else -(z >> 1) for z in vals[i + 3:i + 2 + c])
            if len(deltas) != c - 1:
                raise FormatError("truncated separator level")
            i += 2 + c
            if kind == KIND_MEMBER:
                levels.append(LevelRecord(kind, c, first, deltas))
                break
            levels.append(LevelRecord(kind, c, first, deltas, child=vals[i] - 1))
            i += 1
    except IndexError as exc:
        raise FormatError("truncated label") from exc
    if i != len(vals):
        raise FormatError("trailing data after final level")
    return top, levels


def _parse_baseline(b: BitStream):
    try:
        top = read_gamma(b) - 1
        levels = []
        while True:
            kind = read_gamma(b)
            if kind == KIND_BASE:
                k = read_gamma(b)
                idx = read_gamma(b) - 1
                w = read_gamma(b)
                dist = tuple(b.read_bits(w) for _ in range(k - 1))
                levels.append(LevelRecord(kind, k, index=idx, distances=dist))
                break
            if kind not in (KIND_SEPARATOR, KIND_MEMBER):
                raise FormatError(f"unknown level kind {kind}")
            c = read_gamma(b)
            w = read_gamma(b)
            dist = [b.read_bits(w) for _ in range(c)]
            deltas = tuple(int(x) for x in np.diff(dist))
            if kind == KIND_MEMBER:
                levels.append(LevelRecord(kind, c, dist[0], deltas))
                break
            levels.append(LevelRecord(kind, c, dist[0], deltas, child=read_gamma(b) - 1))
    except CodecError as exc:
        raise FormatError(f"truncated label: {exc}") from exc
    if b.remaining():
        raise FormatError("trailing data after final level")
    return top, levels


@dataclass
class LevelStats:
    depth: int
    size: int
    c: int
    log_sum: float
    cycle_length: int
    max_component: int


@dataclass
class LabelSet:
    """All labels of one graph under one scheme."""

    scheme: str
    n: int
    fingerprint: bytes
    payloads: list
    nbits: np.ndarray
    base_threshold: int = DEFAULT_BASE_THRESHOLD
    depth: np.ndarray | None = None
    levels: list = field(default_factory=list)

    def __len__(self):
        return self.n

    def __getitem__(self, v: int) -> Label:
        return Label(v, self.payloads[v], int(self.nbits[v]), self.fingerprint, self.scheme)

    def __iter__(self):
        return (self[v] for v in range(self.n))

    def max_bits(self) -> int:
        return int(self.nbits.max()) if self.n else 0

    def mean_bits(self) -> float:
        return float(self.nbits.mean()) if self.n else 0.0

    def top_separator(self) -> LevelStats | None:
        """Separator of the largest top-level component, if one was needed."""
        tops = [s for s in self.levels if s.depth == 0]
        return max(tops, key=lambda s: s.size) if tops else None

    def to_bytes(self) -> bytes:
        return serialize_labels(self)


def _split_components(h: RotationGraph, comp: np.ndarray, count: int):
    """Induced subgraphs of every component id >= 0, each with its local->parent map."""
    order = np.lexsort((np.arange(h.n), comp))
    order = order[comp[order] >= 0]
    new_id = np.full(h.n, -1, dtype=np.int64)
    new_id[order] = np.arange(len(order))
    keep = (comp[h.tails] >= 0) & (comp[h.indices] >= 0)
    tails = new_id[h.tails[keep]]
    heads = new_id[h.indices[keep]]
    srt = np.argsort(tails, kind="stable")
    tails, heads = tails[srt], heads[srt]
    sizes = np.bincount(comp[order], minlength=count)
    vstart = np.concatenate([[0], np.cumsum(sizes)])
    deg = np.bincount(tails, minlength=len(order))
    indptr = np.concatenate([[0], np.cumsum(deg)])
    out = []
    for t in range(count):
        lo, hi = vstart[t], vstart[t + 1]
        sub_ptr = indptr[lo:hi + 1] - indptr[lo]
        sub_idx = heads[indptr[lo]:indptr[hi]] - lo
        out.append((RotationGraph(sub_ptr, sub_idx), order[lo:hi]))
    return out


class _Encoder:
    """Per-vertex bit accumulators for one scheme."""

    def __init__(self, scheme: str, n: int):
        self.scheme = scheme
        self.acc = [0] * n
        self.len = [0] * n

    def append(self, gids, values, widths, lengths):
        for lo in range(0, len(gids), _ROW_CHUNK):
            sl = slice(lo, lo + _ROW_CHUNK)
            chunks, nbits = kernels.pack_rows(values[sl], widths[sl], lengths[sl])
            for v, ch, nb in zip(gids[sl].tolist(), chunks, nbits.tolist()):
                x = int.from_bytes(ch, "big") >> (len(ch) * 8 - nb)
                self.acc[v] = (self.acc[v] << nb) | x
                self.len[v] += nb

    def finish(self):
        payloads = []
        for a, nb in zip(self.acc, self.len):
            pad = -nb % 8
            payloads.append((a << pad).to_bytes((nb + pad) // 8, "big"))
        return payloads, np.array(self.len, dtype=np.int64)


def _widths_for(values, lengths, fixed_cols=None, fixed_width=0):
    cols = np.arange(values.shape[1])
    widths = gamma_widths(np.maximum(values, 1))
    if fixed_cols is not None:
        widths = np.where(fixed_cols[None, :] if fixed_cols.ndim == 1 else fixed_cols,
                          fixed_width, widths)
    return np.where(cols[None, :] < lengths[:, None], widths, 0)


def _fixed_width(k: int) -> int:
    return max(1, int(k - 1).bit_length())


def _encode_base(enc: _Encoder, gids, dist):
    k = len(gids)
    off = ~np.eye(k, dtype=bool)
    rest = dist[off].reshape(k, k - 1).astype(np.int64)
    lengths = np.full(k, k + 2 + (enc.scheme == "baseline"), dtype=np.int64)
    if enc.scheme == "improved":
        vals = np.empty((k, k + 2), dtype=np.int64)
        vals[:, 0] = KIND_BASE
        vals[:, 1] = k
        vals[:, 2] = np.arange(1, k + 1)
        vals[:, 3:] = rest
        widths = _widths_for(vals, lengths)
    else:
        w = _fixed_width(k)
        vals = np.empty((k, k + 3), dtype=np.int64)
        vals[:, 0] = KIND_BASE
        vals[:, 1] = k
        vals[:, 2] = np.arange(1, k + 1)
        vals[:, 3] = w
        vals[:, 4:] = rest
        fixed = np.arange(k + 3) >= 4
        widths = _widths_for(vals, lengths, fixed, w)
    enc.append(gids, vals, widths, lengths)


def _encode_separator(enc: _Encoder, gids, rows, child):
    c, k = rows.shape
    member = child < 0
    for lo in range(0, k, _ROW_CHUNK):
        sl = slice(lo, min(k, lo + _ROW_CHUNK))
        r = rows[:, sl].T.astype(np.int64)
        ch = child[sl]
        kk = r.shape[0]
        kind = np.where(member[sl], KIND_MEMBER, KIND_SEPARATOR)
        if enc.scheme == "improved":
            vals = np.empty((kk, c + 3), dtype=np.int64)
            vals[:, 0] = kind
            vals[:, 1] = c
            vals[:, 2] = r[:, 0] + 1
            vals[:, 3:c + 2] = zigzag_array(np.diff(r, axis=1))
            vals[:, c + 2] = ch + 1
            lengths = np.where(member[sl], c + 2, c + 3)
            widths = _widths_for(vals, lengths)
        else:
            w = _fixed_width(k)
            vals = np.empty((kk, c + 4), dtype=np.int64)
            vals[:, 0] = kind
            vals[:, 1] = c
            vals[:, 2] = w
            vals[:, 3:c + 3] = r
            vals[:, c + 3] = ch + 1
            lengths = np.where(member[sl], c + 3, c + 4)
            fixed = (np.arange(c + 4) >= 3) & (np.arange(c + 4) < c + 3)
            widths = _widths_for(vals, lengths, fixed, w)
        enc.append(gids[sl], vals, widths, lengths)


def build_label_sets(g: RotationGraph, base_threshold: int = DEFAULT_BASE_THRESHOLD,
                     schemes=("improved",), separator=find_separator):
    """Build labels under each requested scheme from one shared decomposition."""
    for s in schemes:
        if s not in SCHEMES:
            raise ValueError(f"unknown scheme {s!r}")
    n = g.n
    encoders = [_Encoder(s, n) for s in schemes]
    depth = np.zeros(n, dtype=np.int64)
    stats = []
    comp, count = connected_components(g)
    top_vals = (comp + 1).reshape(-1, 1)
    all_ids = np.arange(n)
    for enc in encoders:
        enc.append(all_ids, top_vals, gamma_widths(np.maximum(top_vals, 1)),
                   np.ones(n, dtype=np.int64))

    stack = [(sub, gids, 0) for sub, gids in reversed(_split_components(g, comp, count))]
    while stack:
        h, gids, level = stack.pop()
        k = h.n
        depth[gids] = level + 1
        if k <= max(base_threshold, 2):
            dist = kernels.bfs_rows(h.indptr, h.indices, np.arange(k))
            for enc in encoders:
                _encode_base(enc, gids, dist)
            continue
        sep: SeparatorResult = separator(h)
        stats.append(LevelStats(level, k, sep.c, sep.log_sum, sep.cycle_length, sep.max_component))
        rows = separator_distances(h, sep)
        for enc in encoders:
            _encode_separator(enc, gids, rows, sep.components)
        children = _split_components(h, sep.components, sep.component_count)
        for sub, local in reversed(children):
            stack.append((sub, gids[local], level + 1))

    out = {}
    fp = g.fingerprint()
    for enc in encoders:
        payloads, nbits = enc.finish()
        out[enc.scheme] = LabelSet(enc.scheme, n, fp, payloads, nbits, base_threshold,
                                   depth.copy(), stats)
    return out


def separator_distances(h: RotationGraph, sep: SeparatorResult) -> np.ndarray:
    """c x k matrix: row i holds every vertex's distance to the i-th separator vertex."""
    return kernels.bfs_rows(h.indptr, h.indices, sep.vertices)


def build_labels(g: RotationGraph, base_threshold: int = DEFAULT_BASE_THRESHOLD) -> LabelSet:
    return build_label_sets(g, base_threshold, ("improved",))["improved"]


def build_labels_baseline(g: RotationGraph, base_threshold: int = DEFAULT_BASE_THRESHOLD) -> LabelSet:
    return build_label_sets(g, base_threshold, ("baseline",))["baseline"]


# label file: header, offset table, payloads, crc32 of everything before it

MAGIC = b"PLDL"
VERSION = 1
_HEADER = struct.Struct(">4sBBHQ8s")
_ENTRY = np.dtype([("offset", ">u8"), ("nbits", ">u8")])


def serialize_labels(labels: LabelSet) -> bytes:
    lens = np.array([len(p) for p in labels.payloads], dtype=np.int64)
    table = np.zeros(labels.n, dtype=_ENTRY)
    table["offset"] = np.concatenate([[0], np.cumsum(lens)[:-1]]) if labels.n else []
    table["nbits"] = labels.nbits
    body = (_HEADER.pack(MAGIC, VERSION, SCHEMES.index(labels.scheme), labels.base_threshold,
                         labels.n, labels.fingerprint)
            + table.tobytes() + b"".join(labels.payloads))
    return body + struct.pack(">I", zlib.crc32(body))


def _read_header(data: bytes):
    if len(data) < _HEADER.size + 4:
        raise FormatError("label file truncated")
    magic, version, scheme, thr, n, fp = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FormatError("bad magic bytes")
    if version != VERSION:
        raise FormatError(f"unsupported format version {version}")
    if scheme >= len(SCHEMES):
        raise FormatError(f"unknown scheme code {scheme}")
    end = _HEADER.size + n * _ENTRY.itemsize
    if len(data) < end + 4:
        raise FormatError("label file truncated")
    table = np.frombuffer(data, dtype=_ENTRY, count=n, offset=_HEADER.size)
    return SCHEMES[scheme], thr, n, fp, table, end


def _check_crc(data: bytes) -> None:
    (crc,) = struct.unpack_from(">I", data, len(data) - 4)
    if zlib.crc32(data[:-4]) != crc:
        raise FormatError("checksum mismatch")


def deserialize_labels(data: bytes) -> LabelSet:
    scheme, thr, n, fp, table, start = _read_header(data)
    _check_crc(data)
    area = data[start:-4]
    offsets = table["offset"].astype(np.int64)
    nbits = table["nbits"].astype(np.int64)
    nbytes = (nbits + 7) // 8
    if n and (np.any(offsets + nbytes > len(area)) or offsets[0] != 0):
        raise FormatError("offset table points outside the payload area")
    payloads = [area[o:o + b] for o, b in zip(offsets.tolist(), nbytes.tolist())]
    return LabelSet(scheme, n, fp, payloads, nbits, thr)


def read_label(data: bytes, v: int, verify: bool = True) -> Label:
    """One label straight from the offset table."""
    scheme, _, n, fp, table, start = _read_header(data)
    if verify:
        _check_crc(data)
    if not 0 <= v < n:
        raise FormatError(f"vertex {v} not in label file (n={n})")
    off, nb = int(table["offset"][v]), int(table["nbits"][v])
    lo = start + off
    hi = lo + (nb + 7) // 8
    if hi > len(data) - 4:
        raise FormatError("offset table points outside the payload area")
    return Label(v, data[lo:hi], nb, fp, scheme)
