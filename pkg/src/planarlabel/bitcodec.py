"""Bit streams and self-delimiting integer codes.

Bits are stored most-significant-first. Serialized streams are padded with
zero bits to a byte boundary.

Elias gamma writes ``x >= 1`` as ``floor(log2 x)`` zeros followed by the
binary expansion of ``x``, so the codeword is just ``x`` in
``2 * floor(log2 x) + 1`` bits. Signed values go through the zig-zag map
``d <= 0 -> -2d + 1``, ``d > 0 -> 2d`` first.
"""
from __future__ import annotations

import numpy as np

from . import kernels
from .errors import CodecError


class BitStream:
    """Append-only bit sequence with a separate read cursor.

    Whole bytes live in a bytearray; fewer than 8 trailing bits wait in a
    small int until they fill a byte.
    """

    def __init__(self, data: bytes = b"", nbits: int | None = None):
        if nbits is None:
            nbits = len(data) * 8
        if nbits < 0 or nbits > len(data) * 8:
            raise CodecError("declared length exceeds data")
        full, rem = divmod(nbits, 8)
        self._buf = bytearray(data[:full])
        self._tail = data[full] >> (8 - rem) if rem else 0
        self._tail_len = rem
        self.pos = 0

    def __len__(self):
        return len(self._buf) * 8 + self._tail_len

    def write_bits(self, value: int, width: int) -> None:
        if width < 0 or value < 0 or value >> width:
            raise ValueError(f"{value} does not fit in {width} bits")
        acc = (self._tail << width) | value
        n = self._tail_len + width
        full, rem = divmod(n, 8)
        if full:
            self._buf += (acc >> rem).to_bytes(full, "big")
            acc &= (1 << rem) - 1
        self._tail, self._tail_len = acc, rem

    def read_bits(self, width: int) -> int:
        if width < 0 or self.pos + width > len(self):
            raise CodecError("read past end of stream")
        lo, hi = self.pos, self.pos + width
        self.pos = hi
        nbuf = len(self._buf) * 8
        first = lo >> 3
        if hi <= nbuf:
            last = (hi + 7) >> 3
            chunk = int.from_bytes(self._buf[first:last], "big")
            return (chunk >> (last * 8 - hi)) & ((1 << width) - 1)
        chunk = (int.from_bytes(self._buf[first:], "big") << self._tail_len) | self._tail
        return (chunk >> (len(self) - hi)) & ((1 << width) - 1)

    def remaining(self) -> int:
        return len(self) - self.pos

    def skip_zeros(self) -> int:
        """Advance past a run of 0 bits; returns its length. Stops on a 1 or at the end."""
        start, end = self.pos, len(self)
        buf, nbuf = self._buf, len(self._buf) * 8
        p = start
        while p < nbuf:
            byte = buf[p >> 3] & (0xFF >> (p & 7))
            if byte:
                p = (p & ~7) + 8 - byte.bit_length()
                self.pos = p
                return p - start
            p = (p & ~7) + 8
        p = max(p, nbuf)
        while p < end and not (self._tail >> (end - p - 1)) & 1:
            p += 1
        self.pos = p
        return p - start

    def _value(self) -> int:
        return (int.from_bytes(self._buf, "big") << self._tail_len) | self._tail

    def extend(self, other: "BitStream") -> None:
        self.write_bits(other._value(), len(other))

    def to_bytes(self) -> bytes:
        if not self._tail_len:
            return bytes(self._buf)
        return bytes(self._buf) + bytes([self._tail << (8 - self._tail_len)])

    def to_string(self) -> str:
        return format(self._value(), f"0{len(self)}b") if len(self) else ""

    @classmethod
    def from_string(cls, bits: str) -> "BitStream":
        b = cls()
        if bits:
            b.write_bits(int(bits, 2), len(bits))
        return b


def gamma_length(x: int) -> int:
    return 2 * x.bit_length() - 1


def write_gamma(b: BitStream, x: int) -> None:
    if x < 1:
        raise ValueError(f"gamma code needs x >= 1, got {x}")
    b.write_bits(x, gamma_length(x))


def read_gamma(b: BitStream) -> int:
    zeros = b.skip_zeros()
    if b.remaining() < zeros + 1:
        raise CodecError("truncated gamma codeword")
    return b.read_bits(zeros + 1)


def zigzag(d: int) -> int:
    return -2 * d + 1 if d <= 0 else 2 * d


def unzigzag(z: int) -> int:
    return z >> 1 if z % 2 == 0 else -(z >> 1)


def write_signed(b: BitStream, d: int) -> None:
    write_gamma(b, zigzag(d))


def read_signed(b: BitStream) -> int:
    return unzigzag(read_gamma(b))


def signed_length(d: int) -> int:
    return gamma_length(zigzag(d))


# vectorized forms used by the label encoder

def zigzag_array(d: np.ndarray) -> np.ndarray:
    d = np.asarray(d, dtype=np.int64)
    return np.where(d <= 0, -2 * d + 1, 2 * d)


def gamma_widths(x: np.ndarray) -> np.ndarray:
    """Codeword lengths for an array of positive integers (< 2**53)."""
    x = np.asarray(x, dtype=np.int64)
    _, exp = np.frexp(x.astype(np.float64))
    return (2 * exp - 1).astype(np.int64)


def pack_gamma_rows(values: np.ndarray, lengths: np.ndarray):
    """Gamma-code the first ``lengths[r]`` entries of every row; one chunk per row."""
    values = np.asarray(values, dtype=np.int64)
    widths = np.where(np.arange(values.shape[1]) < np.asarray(lengths)[:, None],
                      gamma_widths(np.maximum(values, 1)), 0)
    return kernels.pack_rows(values, widths, lengths)


def unpack_gamma(data: bytes, nbits: int) -> np.ndarray:
    """Every gamma codeword in the first ``nbits`` bits of ``data``."""
    try:
        return kernels.unpack_gamma(data, nbits)
    except ValueError as exc:
        raise CodecError(str(exc)) from exc
