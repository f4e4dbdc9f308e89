"""Successive-cancellation decoding and the block-dispatching hybrid decoder.

Both decoders accept one LLR vector of shape ``(N,)`` or a batch ``(B, N)``
and decode every row independently.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .domlattice import mask_from_frozen
from .llr import LLR_MAX, clamp, cn_op, cn_op_minsum, hard_decision, vn_op
from .xform import polar_transform


@dataclass(frozen=True)
class DecodeResult:
    xhat: np.ndarray
    uhat: np.ndarray


# leaf(y, frozen) -> (x, u) for a subtree of the leaf size
Leaf = Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]


def _sc_leaf(y: np.ndarray, frozen: np.ndarray):
    u = np.zeros(y.shape, dtype=np.uint8) if frozen[0] else hard_decision(y)
    return u, u


def _descend(y: np.ndarray, frozen: np.ndarray, leaf_size: int, leaf: Leaf, check):
    N = y.shape[-1]
    if N == leaf_size:
        return leaf(y, frozen)
    h = N // 2
    a, b = y[..., :h], y[..., h:]
    x0, u0 = _descend(check(a, b), frozen[:h], leaf_size, leaf, check)
    x1, u1 = _descend(vn_op(a, b, x0), frozen[h:], leaf_size, leaf, check)
    return np.concatenate([x0 ^ x1, x1], axis=-1), np.concatenate([u0, u1], axis=-1)


def _prepare(code, y):
    y = clamp(y)
    if y.shape[-1] != code.N:
        raise ValueError(f"expected {code.N} LLRs, got {y.shape[-1]}")
    single = y.ndim == 1
    return (y[None, :] if single else y), single


def _finish(x, u, single) -> DecodeResult:
    return DecodeResult(x[0], u[0]) if single else DecodeResult(x, u)


def sc_decode(code, y, *, minsum: bool = False) -> DecodeResult:
    """Plain SC: left subtree first, leaves emit 0 when frozen, else sign(llr)."""
    y, single = _prepare(code, y)
    check = cn_op_minsum if minsum else cn_op
    x, u = _descend(y, code.frozen, 1, _sc_leaf, check)
    return _finish(x, u, single)


def sc_block(frozen, y, *, minsum: bool = False) -> np.ndarray:
    """In-block SC on an R-bit block; returns the codeword estimate only."""
    frozen = np.asarray(frozen, dtype=bool)
    y = np.asarray(y, dtype=np.float64)
    single = y.ndim == 1
    yy = y[None, :] if single else y
    check = cn_op_minsum if minsum else cn_op
    x, _ = _descend(yy, frozen, 1, _sc_leaf, check)
    return x[0] if single else x


def hybrid_decode(code, y, R: int, mode: str = "lowcomplexity",
                  block_decoder: Callable | None = None) -> DecodeResult:
    """SC down to R-bit subtrees, then one fast block decode per subtree.

    ``block_decoder(mask, llrs, mode)`` defaults to ``fastdec.decode_block``.
    Each block's input estimate is recovered from its codeword estimate.
    """
    if R > code.N:
        raise ValueError(f"R = {R} exceeds code length {code.N}")
    if block_decoder is None:
        from .fastdec import decode_block as block_decoder
    y, single = _prepare(code, y)

    def leaf(yb, frozen):
        xb = block_decoder(mask_from_frozen(frozen), yb, mode=mode, R=R)
        return xb, polar_transform(xb)

    x, u = _descend(y, code.frozen, R, leaf, cn_op)
    return _finish(x, u, single)


__all__ = ["LLR_MAX", "DecodeResult", "sc_decode", "sc_block", "hybrid_decode"]
