"""Compact Hankel truncations with an FFT-based fast matvec.

An order-N truncation stores only the 2N-1 distinct entries h(0)..h(2N-2) of
the symmetric matrix A[j][k] = scale * h(j+k).  Products A u are computed by
embedding the Hankel product into a circular convolution:

    (A u)[j] = sum_k h(j+k) u[k] = (h * reverse(u))[j + N - 1],

carried out with fast Fourier transforms of length P, the next power of two
at or above 2N.  The linear convolution of h (length 2N-1) with reverse(u)
(length N) has support 0..3N-3, so circular wrap-around of size P >= 2N can
only contaminate output indices below N-1, never the window [N-1, 2N-2] that
is read.  Cost O(N log N) per product.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from .model import DiscreteSymbolSpec
from .sequences import eval_discrete_many

__all__ = [
    "HankelTruncation",
    "ResourceLimitError",
    "DENSE_LIMIT",
    "build_discrete",
    "matvec",
    "matvec_direct",
    "dense_matrix",
    "dump_entries",
    "load_entries",
]

DENSE_LIMIT = 8192


class ResourceLimitError(RuntimeError):
    """Requested dense materialization exceeds the configured limit."""


def _next_pow2(n: int) -> int:
    p = 1
    while p < n:
        p <<= 1
    return p


@dataclass(frozen=True, eq=False)
class HankelTruncation:
    """Order-N Hankel truncation, immutable after construction.

    The fast-transform image of the entries is precomputed once here, so
    matvec calls allocate only per-call scratch and are safe to run
    concurrently on the same instance.
    """

    order: int
    entries: np.ndarray
    scale: float = 1.0
    label: str = ""
    _embed: int = field(init=False, repr=False)
    _fft_entries: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 1 or len(entries) != 2 * self.order - 1:
            raise ValueError(
                f"entries must be a flat array of length 2N-1 = {2 * self.order - 1}, "
                f"got shape {entries.shape}"
            )
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        embed = _next_pow2(2 * self.order)
        object.__setattr__(self, "_embed", embed)
        object.__setattr__(self, "_fft_entries", np.fft.rfft(entries, n=embed))


def build_discrete(spec: DiscreteSymbolSpec, N: int) -> HankelTruncation:
    """Truncation of the discrete-symbol Hankel matrix to order N >= 2."""
    if N < 2:
        raise ValueError(f"truncation order must be at least 2, got {N}")
    entries = eval_discrete_many(spec, np.arange(2 * N - 1))
    return HankelTruncation(N, entries, 1.0, label=f"discrete alpha={spec.alpha:g}")


def matvec(H: HankelTruncation, u) -> np.ndarray:
    """Fast product A u through the circulant embedding."""
    u = np.asarray(u, dtype=float)
    N = H.order
    if u.shape != (N,):
        raise ValueError(f"expected vector of length {N}, got shape {u.shape}")
    fu = np.fft.rfft(u[::-1], n=H._embed)
    conv = np.fft.irfft(fu * H._fft_entries, n=H._embed)
    out = conv[N - 1 : 2 * N - 1]
    if H.scale != 1.0:
        out = H.scale * out
    else:
        out = out.copy()
    return out


def matvec_direct(H: HankelTruncation, u) -> np.ndarray:
    """Reference double-loop product, row by row; O(N^2)."""
    u = np.asarray(u, dtype=float)
    N = H.order
    if u.shape != (N,):
        raise ValueError(f"expected vector of length {N}, got shape {u.shape}")
    out = np.empty(N)
    for j in range(N):
        out[j] = np.dot(H.entries[j : j + N], u)
    return H.scale * out


def dense_matrix(H: HankelTruncation, limit: int = DENSE_LIMIT) -> np.ndarray:
    """Materialize the full symmetric matrix; guarded by a size limit."""
    if H.order > limit:
        raise ResourceLimitError(
            f"order {H.order} exceeds the dense materialization limit {limit}"
        )
    idx = np.arange(H.order)
    A = H.entries[np.add.outer(idx, idx)]
    if H.scale != 1.0:
        A = H.scale * A
    return A


def dump_entries(H: HankelTruncation, path) -> None:
    """Binary dump: little-endian uint64 count, then entries as little-endian f64."""
    data = np.ascontiguousarray(H.entries, dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(struct.pack("<Q", len(data)))
        fh.write(data.tobytes())


def load_entries(path) -> np.ndarray:
    """Read back a dump written by dump_entries."""
    with open(path, "rb") as fh:
        raw = fh.read(8)
        if len(raw) != 8:
            raise ValueError("truncated dump: missing length header")
        (count,) = struct.unpack("<Q", raw)
        payload = fh.read(8 * count)
        if len(payload) != 8 * count:
            raise ValueError(
                f"truncated dump: expected {count} entries, payload is short"
            )
        return np.frombuffer(payload, dtype="<f8").astype(float)
