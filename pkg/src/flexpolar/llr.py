"""LLR kernels shared by the decoders.

LLRs are ``log P(0)/P(1)``; positive favours bit 0. A value of exactly zero
decides to 0 everywhere.
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

LLR_MAX = 40.0


@dataclass
class OpCounter:
    """Per-frame operation tally collected inside ``count_ops()``."""

    cn: int = 0


_counters: list[OpCounter] = []


@contextmanager
def count_ops():
    """Count check-node operations per frame (one per element on the last axis)."""
    c = OpCounter()
    _counters.append(c)
    try:
        yield c
    finally:
        _counters.remove(c)


def _tally(a) -> None:
    if _counters:
        n = np.shape(a)[-1] if np.ndim(a) else 1
        for c in _counters:
            c.cn += n


_T_SWITCH = 1.0 - 1e-6


def cn_op(a, b):
    """Check-node (box-plus) combination ``2 atanh(tanh(a/2) tanh(b/2))``.

    The tanh product keeps full relative precision for tiny inputs. Where it
    comes within 1e-6 of one, ``atanh`` loses accuracy, so those entries use
    ``m + log1p(expm1(-2m) / (1 + exp(d)))`` with ``m = min(|a|,|b|)`` and
    ``d = ||a| - |b||`` instead. The magnitude never exceeds ``m``.
    """
    _tally(a)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    aa, ab = np.abs(a), np.abs(b)
    m = np.minimum(aa, ab)
    t = np.tanh(0.5 * aa) * np.tanh(0.5 * ab)
    mag = np.atleast_1d(2.0 * np.arctanh(np.minimum(t, _T_SWITCH)))
    big = np.atleast_1d(t > _T_SWITCH)
    if big.any():
        mb = np.atleast_1d(m)[big]
        d = np.minimum(np.abs(np.atleast_1d(aa - ab)[big]), 700.0)
        mag[big] = mb + np.log1p(np.expm1(-2.0 * mb) / (1.0 + np.exp(d)))
    mag = np.minimum(mag.reshape(m.shape), np.minimum(m, LLR_MAX))
    return np.sign(a) * np.sign(b) * mag


def cn_op_minsum(a, b):
    _tally(a)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return np.sign(a) * np.sign(b) * np.minimum(np.minimum(np.abs(a), np.abs(b)), LLR_MAX)


def vn_op(a, b, bit):
    """``b + a`` if the left estimate is 0, ``b - a`` if it is 1."""
    sgn = 1.0 - 2.0 * np.asarray(bit, dtype=np.float64)
    return np.maximum(np.minimum(np.asarray(b, dtype=np.float64) + sgn * a, LLR_MAX), -LLR_MAX)


def hard_decision(y) -> np.ndarray:
    return (np.asarray(y) < 0).astype(np.uint8)


def clamp(y) -> np.ndarray:
    return np.maximum(np.minimum(np.asarray(y, dtype=np.float64), LLR_MAX), -LLR_MAX)
