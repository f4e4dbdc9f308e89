"""Fast R-bit block decoders for R = 8 and R = 16.

Every decoder maps block LLRs of shape ``(B, R)`` (or ``(R,)``) to the
codeword estimate of that block. Masks outside the retained case tables are
decoded by in-block SC.

Notation used below: for a 16-bit block the first half ``y[:8]`` and second
half ``y[8:]`` of many codes satisfy ``x[p] = x[p + 8] + z[p]`` for a short
auxiliary word ``z``. Its LLR comes from ``cn_op(y[p], y[p + 8])``; once ``z``
is decided the halves fold into one 8-bit problem ("z-fold") and the first half
is lifted back as ``x[p + 8] + z[p]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .domlattice import (
    IndexSet,
    canonical_table,
    frozen_from_mask,
    good_from_mask,
    is_dominance_closed,
    mask_hex,
)
from .llr import cn_op, hard_decision, vn_op
from .xform import encode_systematic

OPTIMAL = "optimal"
LOWCOMPLEXITY = "lowcomplexity"
MODES = (OPTIMAL, LOWCOMPLEXITY)
ORACLE_MAX_K = 16


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class BlockCase:
    kind: str
    mask: int
    R: int
    case_id: int | None

    @property
    def is_fallback(self) -> bool:
        return self.kind == "Fallback"

    def __str__(self) -> str:
        return f"{self.kind}({mask_hex(self.mask, self.R)})"


KINDS_8 = {
    0xFF: "Rate0", 0xFE: "Rep1", 0xFC: "Rep2", 0xF8: "RepSpc3", 0xE8: "ExtHamming4",
    0xE0: "Case5", 0xC0: "DualSpc6", 0x80: "Spc7", 0x00: "Rate1",
}

KINDS_16 = {
    0xFFFF: "Rate0", 0xFFFE: "Rep1", 0xFFFC: "Rep2", 0xFFF8: "RepSpc3",
    0xFFE8: "RepExtHamming4", 0xFEE8: "ZExtHamming5", 0xFFC0: "RepDualSpc6",
    0xFEE0: "ZCase5_6", 0xFF80: "RepSpc7", 0xFEC0: "ZDualSpc7", 0xFE80: "ZSpc8",
    0xFCC0: "TwinExtHamming8", 0xFC80: "Z2Spc9", 0xF880: "Z4Spc10",
    0xE880: "ZHammingSpc11", 0xE800: "ZHammingRate1_12", 0xC0C0: "QuadSpc12",
    0xE000: "ZQuadSpc13", 0xC000: "DualSpc14", 0x8000: "Spc15", 0x0000: "Rate1",
}


def classify_block(mask: int, R: int) -> BlockCase:
    """Exact lookup among the retained masks; anything else is ``Fallback``."""
    kinds = {8: KINDS_8, 16: KINDS_16}.get(R)
    if kinds is None:
        raise ValueError(f"fast decoders exist for R = 8 and 16, got {R}")
    mask = int(mask)
    if mask in kinds:
        return BlockCase(kinds[mask], mask, R, R - bin(mask).count("1"))
    return BlockCase("Fallback", mask, R, None)


# ---------------------------------------------------------------------------
# elementary decoders


def _sgn(bits) -> np.ndarray:
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


def _corr(x, y) -> np.ndarray:
    return np.sum(_sgn(x) * y, axis=-1)


def wagner_decode(y, parity=0) -> np.ndarray:
    """ML decoding of a single parity-check code.

    Hard-decide every bit; if the parity differs from ``parity`` flip the
    least reliable bit. Among equally unreliable bits the flip that gives the
    lexicographically smallest word wins: the first tied bit that is 1, else
    the last tied bit. ``parity`` may be an array matching the leading axes,
    which decodes a coset of the SPC code.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.shape[-1] < 2:
        raise ValueError("Wagner decoding needs at least two positions")
    x = hard_decision(y)
    wrong = (x.sum(axis=-1) % 2) != np.asarray(parity)
    a = np.abs(y)
    tied = a == a.min(axis=-1, keepdims=True)
    ones = tied & (x == 1)
    last = y.shape[-1] - 1 - np.argmax(tied[..., ::-1], axis=-1)
    idx = np.where(ones.any(axis=-1), np.argmax(ones, axis=-1), last)
    flip = np.zeros_like(x)
    np.put_along_axis(flip, idx[..., None], wrong[..., None].astype(np.uint8), axis=-1)
    return x ^ flip


def repetition_decode(y, groups) -> np.ndarray:
    """Threshold the LLR sum of each group; every member gets the group's bit."""
    y = np.asarray(y, dtype=np.float64)
    n = y.shape[-1]
    flat = sorted(i for g in groups for i in g)
    if flat != list(range(n)):
        raise ValueError("groups must partition the block positions")
    x = np.zeros(y.shape, dtype=np.uint8)
    for g in groups:
        g = list(g)
        x[..., g] = hard_decision(y[..., g].sum(axis=-1))[..., None]
    return x


def _rate0(y, mode):
    return np.zeros(y.shape, dtype=np.uint8)


def _rate1(y, mode):
    return hard_decision(y)


def _spc(y, mode):
    return wagner_decode(y)


def _fold(y, width):
    """Add the halves until ``width`` positions remain.

    Partial sums saturate at the LLR limit exactly as in the SC datapath, so
    the repetition cases reproduce in-block SC bit for bit.
    """
    while y.shape[-1] > width:
        h = y.shape[-1] // 2
        y = vn_op(y[:, :h], y[:, h:], 0)
    return y


def _periodic(period, inner):
    """Codes that repeat one ``period``-bit word: sum the copies, decode, tile."""
    def dec(y, mode):
        R = y.shape[-1]
        return np.tile(inner(_fold(y, period), mode), (1, R // period))
    return dec


def _rep(y, mode):
    return np.repeat(hard_decision(_fold(y, 1)), y.shape[-1], axis=1)


def _interleaved(inner):
    """Even and odd positions are two independent codes."""
    def dec(y, mode):
        x = np.empty(y.shape, dtype=np.uint8)
        x[:, 0::2] = inner(y[:, 0::2], mode)
        x[:, 1::2] = inner(y[:, 1::2], mode)
        return x
    return dec


def _halves(inner):
    def dec(y, mode):
        h = y.shape[-1] // 2
        return np.concatenate([inner(y[:, :h], mode), inner(y[:, h:], mode)], axis=1)
    return dec


def _lift(y, z, inner, mode):
    """Fold the halves given ``z`` (shape (B, 1) or (B, R/2)), decode, lift."""
    h = y.shape[-1] // 2
    x2 = inner(y[:, h:] + _sgn(z) * y[:, :h], mode)
    return np.concatenate([x2 ^ z, x2], axis=1)


def _z_best(y, inner_metric):
    """Choose the scalar z that maximises the folded metric (z = 0 on ties)."""
    h = y.shape[-1] // 2
    cand = [inner_metric(y[:, h:] + s * y[:, :h]) for s in (1.0, -1.0)]
    return (cand[1][1] > cand[0][1]).astype(np.uint8)[:, None], cand


# 8-bit cases with a z = x3 + x7 auxiliary bit: (x0+x4, .., x3+x7) all equal z


def _ext_hamming8(y, mode):
    """(8,4) extended Hamming block, good set {3,5,6,7}."""
    if mode == OPTIMAL:
        def metric(f):
            w = wagner_decode(f)
            return w, _corr(w, f)
        z, cand = _z_best(y, metric)
        x2 = np.where(z == 1, cand[1][0], cand[0][0])
        return np.concatenate([x2 ^ z, x2], axis=1)
    z = hard_decision(cn_op(y[:, :4], y[:, 4:]).sum(axis=-1))[:, None]
    return _lift(y, z, lambda f, m: wagner_decode(f), mode)


def _case5(y, mode):
    """Good set {3,4,5,6,7}: free second half, first half = second half + z."""
    if mode == OPTIMAL:
        # max-product on the cycle-free graph: z is the only shared variable
        def metric(f):
            return hard_decision(f), np.abs(f).sum(axis=-1)
        z, cand = _z_best(y, metric)
        x2 = np.where(z == 1, cand[1][0], cand[0][0])
        return np.concatenate([x2 ^ z, x2], axis=1)
    z = hard_decision(cn_op(y[:, :4], y[:, 4:]).sum(axis=-1))[:, None]
    return _lift(y, z, _rate1, mode)


_dual_spc8 = _interleaved(_spc)

_DECODERS_8 = {
    0xFF: _rate0,
    0xFE: _rep,
    0xFC: _periodic(2, lambda f, m: hard_decision(f)),
    0xF8: _periodic(4, lambda f, m: wagner_decode(f)),
    0xE8: _ext_hamming8,
    0xE0: _case5,
    0xC0: _dual_spc8,
    0x80: _spc,
    0x00: _rate1,
}


# 16-bit cases


def _z_scalar(y):
    h = y.shape[-1] // 2
    return hard_decision(cn_op(y[:, :h], y[:, h:]).sum(axis=-1))[:, None]


def _z_lifted(inner):
    def dec(y, mode):
        return _lift(y, _z_scalar(y), inner, mode)
    return dec


def _fc80(y, mode):
    c = cn_op(y[:, :8], y[:, 8:])
    z = hard_decision(np.stack([c[:, 0::2].sum(axis=-1), c[:, 1::2].sum(axis=-1)], axis=1))
    return _lift(y, np.tile(z, (1, 4)), _spc, mode)


def _f880(y, mode):
    # z[i] = x[i] + x[i+8] = x[i+4] + x[i+12]; (z0..z3) has even parity
    c = cn_op(y[:, :8], y[:, 8:])
    z = wagner_decode(c[:, :4] + c[:, 4:])
    return _lift(y, np.tile(z, (1, 2)), _spc, mode)


def _z_hamming(inner):
    # z[p] = x[p] + x[p+8] forms an (8,4) extended Hamming word
    def dec(y, mode):
        z = _ext_hamming8(cn_op(y[:, :8], y[:, 8:]), mode)
        return _lift(y, z, inner, mode)
    return dec


def _e000(y, mode):
    """Good set {3..15}: the four residue classes mod 4 all have parity z."""
    B = y.shape[0]
    groups = y.reshape(B, 4, 4).transpose(0, 2, 1)  # [:, r, a] = y[4a + r]
    if mode == OPTIMAL:
        w = [wagner_decode(groups, parity=p) for p in (0, 1)]
        m = [_corr(wi, groups).sum(axis=-1) for wi in w]
        z = (m[1] > m[0])[:, None, None]
        xg = np.where(z, w[1], w[0])
    else:
        g = y.reshape(B, 4, 4)
        zl = cn_op(cn_op(g[:, 0], g[:, 1]), cn_op(g[:, 2], g[:, 3])).sum(axis=-1)
        z = hard_decision(zl)
        xg = wagner_decode(groups, parity=z[:, None])
    return xg.transpose(0, 2, 1).reshape(B, 16)


_DECODERS_16 = {
    0xFFFF: _rate0,
    0xFFFE: _rep,
    0xFFFC: _periodic(2, lambda f, m: hard_decision(f)),
    0xFFF8: _periodic(4, lambda f, m: wagner_decode(f)),
    0xFFE8: _periodic(8, _ext_hamming8),
    0xFEE8: _z_lifted(_ext_hamming8),
    0xFFC0: _periodic(8, _dual_spc8),
    0xFEE0: _z_lifted(_case5),
    0xFF80: _periodic(8, _spc),
    0xFEC0: _z_lifted(_dual_spc8),
    0xFE80: _z_lifted(_spc),
    0xFCC0: _interleaved(_ext_hamming8),
    0xFC80: _fc80,
    0xF880: _f880,
    0xE880: _z_hamming(_spc),
    0xE800: _z_hamming(_rate1),
    0xC0C0: _halves(_dual_spc8),
    0xE000: _e000,
    0xC000: _interleaved(_spc),
    0x8000: _spc,
    0x0000: _rate1,
}

_DECODERS = {8: _DECODERS_8, 16: _DECODERS_16}


def _fallback(mask, R):
    from .scdec import sc_block

    frozen = frozen_from_mask(mask, R)
    return lambda y, mode: sc_block(frozen, y)


def decode_block(mask: int, y, mode: str = LOWCOMPLEXITY, R: int | None = None) -> np.ndarray:
    """Decode one block (or a batch of blocks) with the case decoder for ``mask``."""
    y = np.asarray(y, dtype=np.float64)
    R = y.shape[-1] if R is None else R
    if y.shape[-1] != R:
        raise ValueError(f"expected {R} LLRs per block, got {y.shape[-1]}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if R not in _DECODERS:
        raise ValueError(f"fast decoders exist for R = 8 and 16, got {R}")
    dec = _DECODERS[R].get(int(mask)) or _fallback(int(mask), R)
    single = y.ndim == 1
    out = dec(y[None, :] if single else y.reshape(-1, R), mode)
    return out[0] if single else out.reshape(y.shape)


def decode_block8(mask: int, y, mode: str = LOWCOMPLEXITY) -> np.ndarray:
    return decode_block(mask, y, mode, R=8)


def decode_block16(mask: int, y, mode: str = LOWCOMPLEXITY) -> np.ndarray:
    return decode_block(mask, y, mode, R=16)


# ---------------------------------------------------------------------------
# brute-force references


class _Block:
    def __init__(self, mask, R):
        self.N = R
        self.good = IndexSet(good_from_mask(mask, R), R.bit_length() - 1)


@lru_cache(maxsize=64)
def block_codebook(mask: int, R: int) -> np.ndarray:
    """All ``2**k`` codewords of the block code, sorted lexicographically."""
    blk = _Block(mask, R)
    if not is_dominance_closed(blk.good):
        raise ValueError(f"mask {mask_hex(mask, R)} has a good set that is not dominance-closed")
    k = len(blk.good)
    if k > ORACLE_MAX_K:
        raise ValueError(f"k = {k} is too large for exhaustive search")
    info = ((np.arange(1 << k)[:, None] >> np.arange(k - 1, -1, -1)) & 1).astype(np.uint8)
    cw = encode_systematic(blk, info)
    order = np.lexsort(cw.T[::-1])
    cw = cw[order]
    cw.flags.writeable = False
    return cw


def ml_oracle_decode(mask: int, y, R: int, chunk: int = 256) -> np.ndarray:
    """Exhaustive ML: maximise ``sum (1 - 2 x_i) y_i``; ties go to the smallest codeword."""
    y = np.asarray(y, dtype=np.float64)
    if y.shape[-1] != R:
        raise ValueError(f"expected {R} LLRs per block, got {y.shape[-1]}")
    cw = block_codebook(int(mask), R)
    signs = _sgn(cw).T
    single = y.ndim == 1
    yy = y.reshape(-1, R)
    out = np.empty(yy.shape, dtype=np.uint8)
    step = max(1, (chunk * 4096) // cw.shape[0])
    for s in range(0, yy.shape[0], step):
        out[s:s + step] = cw[np.argmax(yy[s:s + step] @ signs, axis=1)]
    return out[0] if single else out.reshape(y.shape)


def min_distance(mask: int, R: int) -> int:
    if int(mask) == (1 << R) - 1:
        raise ValueError("minimum distance is undefined for an all-frozen block")
    cw = block_codebook(int(mask), R)
    return int(cw[1:].sum(axis=1).min())


def table_dmin_check(R: int) -> list[tuple[str, int | None, int | None]]:
    """(mask, printed d_min, computed d_min) for every row of the table."""
    rows = []
    for e in canonical_table(R):
        got = None if e.d_min is None else min_distance(e.mask, R)
        rows.append((e.mask_hex, e.d_min, got))
    return rows
