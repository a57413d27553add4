import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarlabel.bitcodec import (BitStream, gamma_length, gamma_widths, pack_gamma_rows,
                                  read_gamma, read_signed, signed_length, unpack_gamma, unzigzag,
                                  write_gamma, write_signed, zigzag, zigzag_array)
from planarlabel.errors import CodecError


def bits_of(fn, x):
    b = BitStream()
    fn(b, x)
    return b.to_string()


@pytest.mark.parametrize("x,code", [(1, "1"), (2, "010"), (5, "00101"), (8, "0001000")])
def test_gamma_codewords(x, code):
    assert bits_of(write_gamma, x) == code


def test_large_gamma():
    b = BitStream()
    write_gamma(b, 2**30)
    assert len(b) == 61
    assert read_gamma(BitStream(b.to_bytes(), len(b))) == 2**30


@pytest.mark.parametrize("d,code", [(0, "1"), (-1, "011"), (1, "010"), (2, "00100")])
def test_signed_codewords(d, code):
    assert bits_of(write_signed, d) == code


def test_gamma_rejects_nonpositive():
    with pytest.raises(ValueError):
        write_gamma(BitStream(), 0)


def test_signed_round_trip_range():
    b = BitStream()
    for d in range(-1000, 1001):
        write_signed(b, d)
    r = BitStream(b.to_bytes(), len(b))
    assert [read_signed(r) for _ in range(2001)] == list(range(-1000, 1001))
    assert r.remaining() == 0


def test_zigzag_is_bijection():
    zs = [zigzag(d) for d in range(-500, 501)]
    assert sorted(zs) == list(range(1, 1002))
    assert all(unzigzag(zigzag(d)) == d for d in range(-500, 501))
    np.testing.assert_array_equal(zigzag_array(np.arange(-500, 501)), zs)


def test_truncated_reads():
    b = BitStream()
    write_gamma(b, 37)
    with pytest.raises(CodecError):
        read_gamma(BitStream(b.to_bytes(), len(b) - 1))
    with pytest.raises(CodecError):
        read_gamma(BitStream(b"\x00", 8))
    with pytest.raises(CodecError):
        BitStream(b"\x00", 9)


def test_widths_match_scalar():
    xs = np.array([1, 2, 3, 4, 7, 8, 1023, 1024, 2**40 + 5])
    assert gamma_widths(xs).tolist() == [gamma_length(int(x)) for x in xs]


@given(st.lists(st.integers(min_value=1, max_value=2**50), max_size=60))
def test_gamma_prefix_free(xs):
    b = BitStream()
    for x in xs:
        write_gamma(b, x)
    assert len(b) == sum(gamma_length(x) for x in xs)
    r = BitStream(b.to_bytes(), len(b))
    assert [read_gamma(r) for _ in xs] == xs


@given(st.lists(st.integers(min_value=-10**9, max_value=10**9), max_size=60))
def test_signed_prefix_free(ds):
    b = BitStream()
    for d in ds:
        write_signed(b, d)
    assert len(b) == sum(signed_length(d) for d in ds)
    r = BitStream(b.to_bytes(), len(b))
    assert [read_signed(r) for _ in ds] == ds


@settings(max_examples=50)
@given(st.lists(st.lists(st.integers(min_value=1, max_value=2**40), max_size=30), min_size=1, max_size=10))
def test_vector_pack_matches_stream(rows):
    width = max(len(r) for r in rows) or 1
    vals = np.ones((len(rows), width), dtype=np.int64)
    for i, r in enumerate(rows):
        vals[i, :len(r)] = r
    chunks, nbits = pack_gamma_rows(vals, np.array([len(r) for r in rows]))
    for r, chunk, nb in zip(rows, chunks, nbits.tolist()):
        b = BitStream()
        for x in r:
            write_gamma(b, x)
        assert chunk == b.to_bytes() and nb == len(b)
        assert unpack_gamma(chunk, nb).tolist() == r


def test_unpack_gamma_truncated(backend):
    with pytest.raises(CodecError):
        unpack_gamma(b"\x00\x01", 12)


def test_stream_helpers():
    b = BitStream.from_string("1011")
    c = BitStream.from_string("001")
    b.extend(c)
    assert b.to_string() == "1011001" and b.to_bytes() == bytes([0b10110010])
    assert b.read_bits(3) == 0b101 and b.remaining() == 4
    with pytest.raises(ValueError):
        b.write_bits(4, 2)
