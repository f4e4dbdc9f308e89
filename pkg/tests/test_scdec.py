import math

import numpy as np
import pytest

from flexpolar.construction import CodeConfig, build_code, block_masks
from flexpolar.domlattice import frozen_from_mask
from flexpolar.fastdec import decode_block
from flexpolar.llr import LLR_MAX
from flexpolar.scdec import hybrid_decode, sc_block, sc_decode
from flexpolar.xform import encode_nonsystematic, encode_systematic, polar_transform


def reference_sc(y, frozen):
    """Textbook bit-by-bit SC with explicit tanh-rule recursion on scalars."""
    N = len(y)
    n = N.bit_length() - 1
    u = []

    def llr(i, ys, us):
        # LLR of input bit i for the length-len(ys) subcode given earlier bits us
        if len(ys) == 1:
            return ys[0]
        h = len(ys) // 2
        a, b = ys[:h], ys[h:]
        if i < h:
            return llr_cn(llr(i, a_cn(a, b), us), None)
        # decisions of the left half, re-encoded
        left = polar_transform(np.array(us[:h], dtype=np.uint8)) if h else []
        g = [min(max(b[k] + (1 - 2 * int(left[k])) * a[k], -LLR_MAX), LLR_MAX) for k in range(h)]
        return llr(i - h, g, us[h:])

    def a_cn(a, b):
        out = []
        for p, q in zip(a, b):
            t = math.tanh(p / 2) * math.tanh(q / 2)
            t = min(max(t, -1 + 1e-16), 1 - 1e-16)
            out.append(min(max(2 * math.atanh(t), -LLR_MAX), LLR_MAX))
        return out

    def llr_cn(v, _):
        return v

    for i in range(N):
        if frozen[i]:
            u.append(0)
        else:
            u.append(1 if llr(i, list(y), u) < 0 else 0)
    del n
    return np.array(u, dtype=np.uint8)


def test_examples():
    code = CodeConfig.from_good(1, [1])
    res = sc_decode(code, np.array([-1.0, 3.0]))
    assert res.xhat.tolist() == [0, 0]
    zero = build_code(5, 0, "huawei")
    rng = np.random.default_rng(0)
    assert not sc_decode(zero, rng.normal(size=32)).xhat.any()
    big = build_code(6, 30, "bec", eps=0.5)
    assert not sc_decode(big, np.full(64, LLR_MAX)).xhat.any()
    with pytest.raises(ValueError):
        sc_decode(big, np.zeros(32))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_matches_reference(n):
    rng = np.random.default_rng(n)
    for _ in range(10):
        K = int(rng.integers(0, (1 << n) + 1))
        code = build_code(n, K, "bec", eps=float(rng.uniform(0.1, 0.9)))
        y = rng.normal(1.0, 1.5, 1 << n)
        u = reference_sc(y, code.frozen)
        res = sc_decode(code, y)
        assert np.array_equal(res.uhat, u)
        assert np.array_equal(res.xhat, polar_transform(u))


def test_noiseless_recovery_and_uhat_invariant():
    rng = np.random.default_rng(2)
    for n in (4, 7, 9):
        code = build_code(n, (1 << n) // 2, "huawei")
        info = rng.integers(0, 2, (20, code.K))
        x = encode_nonsystematic(code, info)
        y = (1.0 - 2.0 * x) * LLR_MAX
        res = sc_decode(code, y)
        assert np.array_equal(res.xhat, x)
        assert np.array_equal(res.uhat, polar_transform(res.xhat))
        for R in (8, 16):
            h = hybrid_decode(code, y, R, "optimal") if (1 << n) >= R else None
            if h is not None:
                assert np.array_equal(h.xhat, x)
                assert np.array_equal(h.uhat, polar_transform(h.xhat))


def test_batch_equals_rows():
    rng = np.random.default_rng(3)
    code = build_code(6, 32, "bec", eps=0.5)
    y = rng.normal(0.5, 2, (7, 64))
    batch = sc_decode(code, y).xhat
    rows = np.array([sc_decode(code, r).xhat for r in y])
    assert np.array_equal(batch, rows)


def test_hybrid_with_sc_blocks_equals_sc():
    rng = np.random.default_rng(4)

    def sc_leaf(mask, y, mode, R):
        return sc_block(frozen_from_mask(mask, R), y)

    for _ in range(20):
        n = int(rng.integers(3, 9))
        code = build_code(n, int(rng.integers(0, (1 << n) + 1)), "bec", eps=float(rng.uniform(0.1, 0.9)))
        y = rng.normal(0.8, 1.5, (50, 1 << n))
        want = sc_decode(code, y)
        for R in (2, 4, 8):
            got = hybrid_decode(code, y, R, block_decoder=sc_leaf)
            assert np.array_equal(got.xhat, want.xhat)
            assert np.array_equal(got.uhat, want.uhat)


def test_hybrid_single_block():
    rng = np.random.default_rng(5)
    code = build_code(4, 12, "huawei")
    y = rng.normal(1, 1, (100, 16))
    for mode in ("optimal", "lowcomplexity"):
        assert np.array_equal(hybrid_decode(code, y, 16, mode).xhat, decode_block(0xE800, y, mode, R=16))
    with pytest.raises(ValueError):
        hybrid_decode(build_code(3, 4, "huawei"), y[:, :8], 16)


def test_structural_blocks_equal_sc():
    # a code whose 8-blocks are only rate-0, rate-1 and repetition
    good = list(range(64, 128)) + [55] + [46, 47, 54, 62, 63] + [39] + [31]
    good = sorted(set(good) | {i for g in good for i in range(128) if (i & g) == g})
    code = CodeConfig.from_good(7, good)
    masks = set(block_masks(code, 8))
    assert masks <= {0xFF, 0xFE, 0xFC, 0x00}
    rng = np.random.default_rng(6)
    # small magnitudes keep the upper-tree sums below the LLR limit; saturated
    # sums can cancel to an exact zero, where both decisions tie
    y = rng.normal(0.2, 0.6, (2000, 128))
    for mode in ("optimal", "lowcomplexity"):
        assert np.array_equal(hybrid_decode(code, y, 8, mode).xhat, sc_decode(code, y).xhat)


def test_systematic_decode_round_trip():
    rng = np.random.default_rng(7)
    code = build_code(8, 128, "bec", eps=math.exp(-1))
    info = rng.integers(0, 2, (10, 128))
    x = encode_systematic(code, info)
    res = hybrid_decode(code, (1.0 - 2.0 * x) * 5.0, 16, "lowcomplexity")
    assert np.array_equal(res.xhat[:, code.good_array], info)
