"""Hankel truncation construction, fast matvec correctness, binary dumps."""

import math
import struct

import numpy as np
import pytest

from hankelspec.hankel_core import (
    DENSE_LIMIT,
    HankelTruncation,
    ResourceLimitError,
    build_discrete,
    dense_matrix,
    dump_entries,
    load_entries,
    matvec,
    matvec_direct,
)
from hankelspec.model import DiscreteSymbolSpec


def _random_truncation(N, seed):
    rng = np.random.default_rng(seed)
    return HankelTruncation(N, rng.standard_normal(2 * N - 1))


# ---------------------------------------------------------------- construction


def test_build_discrete_b1_order_two():
    H = build_discrete(DiscreteSymbolSpec(alpha=1.0, b_plus1=1.0), 2)
    expected = np.array([0.0, 0.0, 1.0 / (2.0 * math.log(2.0))])
    assert np.allclose(H.entries, expected, rtol=1e-14, atol=0.0)
    assert H.scale == 1.0


def test_build_discrete_zero_spec():
    H = build_discrete(DiscreteSymbolSpec(alpha=1.0), 4)
    assert np.array_equal(H.entries, np.zeros(7))


def test_build_discrete_entry_count():
    H = build_discrete(DiscreteSymbolSpec(alpha=1.0, b_plus1=1.0), 3)
    assert len(H.entries) == 5
    assert H.order == 3


def test_build_discrete_rejects_small_order():
    with pytest.raises(ValueError):
        build_discrete(DiscreteSymbolSpec(alpha=1.0), 1)


def test_truncation_validates_entry_length():
    with pytest.raises(ValueError):
        HankelTruncation(3, np.zeros(4))


def test_entries_are_immutable():
    H = _random_truncation(8, 0)
    with pytest.raises(ValueError):
        H.entries[0] = 99.0


# --------------------------------------------------------------------- matvec


def test_matvec_unit_vector_selects_column():
    H = HankelTruncation(4, np.arange(1.0, 8.0))
    u = np.array([1.0, 0.0, 0.0, 0.0])
    assert np.allclose(matvec(H, u), [1.0, 2.0, 3.0, 4.0], rtol=1e-13, atol=1e-13)


def test_matvec_ones_vector():
    H = HankelTruncation(4, np.arange(1.0, 8.0))
    got = matvec(H, np.ones(4))
    assert np.allclose(got, [10.0, 14.0, 18.0, 22.0], rtol=1e-14)


def test_matvec_zero_entries():
    H = HankelTruncation(5, np.zeros(9))
    assert np.allclose(matvec(H, np.ones(5)), np.zeros(5), atol=1e-300)


@pytest.mark.parametrize("N", [3, 64, 1000, 4096])
def test_fast_matvec_matches_direct(N):
    H = _random_truncation(N, N)
    rng = np.random.default_rng(N + 1)
    u = rng.standard_normal(N)
    fast = matvec(H, u)
    direct = matvec_direct(H, u)
    scale = np.max(np.abs(direct)) or 1.0
    assert np.max(np.abs(fast - direct)) / scale < 1e-12


def test_matvec_symmetry():
    H = _random_truncation(257, 7)
    rng = np.random.default_rng(8)
    u = rng.standard_normal(257)
    w = rng.standard_normal(257)
    left = np.dot(matvec(H, u), w)
    right = np.dot(u, matvec(H, w))
    assert left == pytest.approx(right, rel=1e-12)


def test_matvec_linearity():
    H = _random_truncation(100, 3)
    rng = np.random.default_rng(4)
    u = rng.standard_normal(100)
    w = rng.standard_normal(100)
    combo = matvec(H, 2.5 * u - 1.5 * w)
    split = 2.5 * matvec(H, u) - 1.5 * matvec(H, w)
    assert np.allclose(combo, split, rtol=1e-11, atol=1e-11)


def test_matvec_dimension_check():
    H = _random_truncation(10, 0)
    with pytest.raises(ValueError):
        matvec(H, np.ones(9))
    with pytest.raises(ValueError):
        matvec_direct(H, np.ones(11))


def test_matvec_respects_scale():
    entries = np.arange(1.0, 8.0)
    H1 = HankelTruncation(4, entries, scale=2.0)
    H2 = HankelTruncation(4, entries, scale=1.0)
    u = np.array([1.0, -1.0, 0.5, 2.0])
    assert np.allclose(matvec(H1, u), 2.0 * matvec(H2, u), rtol=1e-14)


# --------------------------------------------------------------- dense matrix


def test_dense_matrix_small():
    H = HankelTruncation(2, np.array([1.0, 2.0, 3.0]))
    assert np.array_equal(dense_matrix(H), [[1.0, 2.0], [2.0, 3.0]])


def test_dense_matrix_hilbert():
    entries = 1.0 / (np.arange(5) + 1.0)
    H = HankelTruncation(3, entries)
    expected = [
        [1.0, 1 / 2, 1 / 3],
        [1 / 2, 1 / 3, 1 / 4],
        [1 / 3, 1 / 4, 1 / 5],
    ]
    assert np.array_equal(dense_matrix(H), expected)


def test_dense_matrix_zero():
    H = HankelTruncation(3, np.zeros(5))
    assert np.array_equal(dense_matrix(H), np.zeros((3, 3)))


def test_dense_matrix_resource_limit():
    H = _random_truncation(32, 0)
    with pytest.raises(ResourceLimitError):
        dense_matrix(H, limit=16)
    assert DENSE_LIMIT == 8192


def test_dense_matrix_agrees_with_matvec():
    H = _random_truncation(50, 11)
    A = dense_matrix(H)
    rng = np.random.default_rng(12)
    u = rng.standard_normal(50)
    assert np.allclose(A @ u, matvec(H, u), rtol=1e-12, atol=1e-12)


# --------------------------------------------------------------- binary dumps


def test_dump_roundtrip(tmp_path):
    H = _random_truncation(33, 5)
    path = tmp_path / "entries.bin"
    dump_entries(H, path)
    back = load_entries(path)
    assert np.array_equal(back, H.entries)


def test_dump_format_is_little_endian(tmp_path):
    H = HankelTruncation(2, np.array([1.0, -2.0, 0.5]))
    path = tmp_path / "entries.bin"
    dump_entries(H, path)
    raw = path.read_bytes()
    count = struct.unpack("<Q", raw[:8])[0]
    assert count == 3
    values = struct.unpack("<3d", raw[8:])
    assert values == (1.0, -2.0, 0.5)
    assert len(raw) == 8 + 8 * 3


def test_load_rejects_truncated_file(tmp_path):
    path = tmp_path / "bad.bin"
    path.write_bytes(struct.pack("<Q", 10) + b"\x00" * 16)
    with pytest.raises(ValueError, match="truncated"):
        load_entries(path)
    path.write_bytes(b"\x00" * 4)
    with pytest.raises(ValueError, match="length header"):
        load_entries(path)
