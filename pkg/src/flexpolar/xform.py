"""Polar transform over GF(2) and the encoders built on it.

All functions act on the last axis, so a batch of words is a 2-D uint8 array.
The transform is ``x = u F^{(x)n}`` with ``F = [[1, 0], [1, 1]]`` in natural
(non bit-reversed) order: ``x[i]`` is the XOR of ``u[j]`` over all ``j`` that
dominate ``i``.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .domlattice import IndexSet


def _check_pow2(n: int) -> int:
    m = n.bit_length() - 1
    if n < 1 or (1 << m) != n:
        raise ValueError(f"length must be a power of two, got {n}")
    return m


def as_bits(v) -> np.ndarray:
    a = np.asarray(v)
    if a.dtype != np.uint8:
        a = a.astype(np.uint8)
    return a


def _butterfly(x: np.ndarray, start: int, stop: int) -> np.ndarray:
    """Apply the stages with half-widths ``start, 2*start, ... < stop`` in place."""
    N = x.shape[-1]
    lead = x.shape[:-1]
    h = start
    while h < stop:
        v = x.reshape(lead + (N // (2 * h), 2, h))
        v[..., 0, :] ^= v[..., 1, :]
        h *= 2
    return x


def polar_transform(v) -> np.ndarray:
    """``v F^{(x)m}`` over GF(2). The transform is its own inverse."""
    x = as_bits(v).copy()
    N = x.shape[-1]
    _check_pow2(N)
    return _butterfly(x, 1, N)


def _good_indices(code_or_good) -> np.ndarray:
    good = getattr(code_or_good, "good", code_or_good)
    if isinstance(good, IndexSet):
        good = good.elements
    return np.asarray(good, dtype=np.int64)


def _scatter(info, good: np.ndarray, N: int) -> np.ndarray:
    info = as_bits(info)
    if info.shape[-1] != good.size:
        raise ValueError(f"expected {good.size} information bits, got {info.shape[-1]}")
    u = np.zeros(info.shape[:-1] + (N,), dtype=np.uint8)
    u[..., good] = info
    return u


def encode_nonsystematic(code, info) -> np.ndarray:
    """Put ``info`` on the good positions (ascending), zeros elsewhere, transform."""
    good = _good_indices(code)
    return polar_transform(_scatter(info, good, code.N))


def encode_systematic(code, info) -> np.ndarray:
    """Codeword whose restriction to the good set equals ``info``.

    Transform, clear the frozen positions, transform again. Relies on the
    transform being an involution and the good set being dominance-closed.
    """
    good = _good_indices(code)
    N = code.N
    v = polar_transform(_scatter(info, good, N))
    frozen = np.ones(N, dtype=bool)
    frozen[good] = False
    v[..., frozen] = 0
    return polar_transform(v)


# ---------------------------------------------------------------------------
# R-bit parallel last stage


@lru_cache(maxsize=None)
def block_lut(R: int) -> np.ndarray:
    """Lookup table: packed R-bit word (position 0 in the MSB) -> its transform."""
    if R not in (2, 4, 8, 16):
        raise ValueError(f"parallel block size must be 2, 4, 8 or 16, got {R}")
    words = np.arange(1 << R, dtype=np.uint32)
    bits = ((words[:, None] >> np.arange(R - 1, -1, -1, dtype=np.uint32)) & 1).astype(np.uint8)
    out = polar_transform(bits)
    weights = (1 << np.arange(R - 1, -1, -1)).astype(np.uint32)
    lut = (out.astype(np.uint32) @ weights).astype(np.uint16)
    lut.flags.writeable = False
    return lut


def pack_blocks(v: np.ndarray, R: int) -> np.ndarray:
    lead = v.shape[:-1]
    blocks = v.reshape(lead + (v.shape[-1] // R, R)).astype(np.uint32)
    weights = (1 << np.arange(R - 1, -1, -1)).astype(np.uint32)
    return blocks @ weights


def unpack_blocks(words: np.ndarray, R: int) -> np.ndarray:
    shifts = np.arange(R - 1, -1, -1, dtype=np.uint32)
    bits = ((words.astype(np.uint32)[..., None] >> shifts) & 1).astype(np.uint8)
    return bits.reshape(words.shape[:-1] + (words.shape[-1] * R,))


def block_parallel_transform(v, R: int) -> np.ndarray:
    """Transform every consecutive R-block of ``v`` in one table lookup."""
    v = as_bits(v)
    if v.shape[-1] % R:
        raise ValueError(f"length {v.shape[-1]} is not a multiple of R = {R}")
    return unpack_blocks(block_lut(R)[pack_blocks(v, R)], R)


def remaining_stages(v, R: int) -> np.ndarray:
    """The butterfly stages above the R-bit blocks (half-widths R .. N/2)."""
    x = as_bits(v).copy()
    N = x.shape[-1]
    _check_pow2(N)
    return _butterfly(x, R, N)


def fast_transform(v, R: int) -> np.ndarray:
    """Polar transform with the ``log2 R`` innermost stages done block-parallel."""
    return remaining_stages(block_parallel_transform(v, R), R)


def recover_input_block(xhat) -> np.ndarray:
    """Input bits of one R-block from its codeword estimate (involution)."""
    return polar_transform(xhat)
