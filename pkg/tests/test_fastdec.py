import itertools

import numpy as np
import pytest

from flexpolar.domlattice import canonical_table, enumerate_admissible_sets, frozen_from_mask
from flexpolar.fastdec import (
    block_codebook, classify_block, decode_block, decode_block8, decode_block16,
    min_distance, ml_oracle_decode, repetition_decode, table_dmin_check, wagner_decode,
)
from flexpolar.llr import count_ops
from flexpolar.scdec import sc_block
from flexpolar.xform import polar_transform

OPTIMAL_8 = [0xFF, 0xFE, 0xFC, 0xF8, 0xE8, 0xE0, 0xC0, 0x80, 0x00]
OPTIMAL_16 = [0xFFFF, 0xFFFE, 0xFFFC, 0xFFF8, 0xFFC0, 0xFF80, 0xC0C0, 0xE000,
              0xC000, 0x8000, 0x0000]


def noisy(rng, shape, snr_db=2.0):
    s2 = 1 / (2 * 10 ** (snr_db / 10))
    return 2 * (1 + np.sqrt(s2) * rng.standard_normal(shape)) / s2


def brute_spc(y):
    words = [w for w in itertools.product((0, 1), repeat=len(y)) if sum(w) % 2 == 0]
    score = [sum((1 - 2 * b) * v for b, v in zip(w, y)) for w in words]
    return list(words[int(np.argmax(score))])


def test_classify_examples():
    assert classify_block(0xFC, 8).kind == "Rep2"
    assert classify_block(0xF0, 8).is_fallback
    c = classify_block(0x0000, 16)
    assert c.kind == "Rate1" and c.case_id == 16
    with pytest.raises(ValueError):
        classify_block(0, 4)


@pytest.mark.parametrize("R", [8, 16])
def test_classify_is_total(R):
    retained = {e.mask for e in canonical_table(R) if e.retained}
    for s in enumerate_admissible_sets(R):
        case = classify_block(s.to_mask(), R)
        assert case.is_fallback == (s.to_mask() not in retained)


def test_wagner_examples():
    y = [2, -3, 1, 4, -2, 5, -1, 2]
    assert wagner_decode(y).tolist() == [0, 1, 0, 0, 1, 0, 0, 0]
    assert wagner_decode(y).tolist() == brute_spc(y)
    assert not wagner_decode(np.ones(8)).any()
    assert not wagner_decode([3, 2, -0.5, 4, 1, 2, 2, 2]).any()
    assert wagner_decode([1.0, -2.0, 3.0], parity=1).tolist() == [0, 1, 0]


def test_wagner_matches_brute_force():
    rng = np.random.default_rng(0)
    for _ in range(300):
        y = rng.integers(-3, 4, 6).astype(float)
        assert wagner_decode(y).tolist() == brute_spc(y)


def test_repetition_examples():
    y = np.array([1, -2, 0.5, 3, 1, 1, 1, 1])
    assert not repetition_decode(y, [range(8)]).any()
    y2 = np.array([1.0, -1, 2, -1, 1, -1, 1, -1])
    assert repetition_decode(y2, [range(0, 8, 2), range(1, 8, 2)]).tolist() == [0, 1] * 4
    assert not repetition_decode(np.array([1.0, -1.0]), [[0, 1]]).any()
    with pytest.raises(ValueError):
        repetition_decode(y, [[0, 1], [1, 2, 3, 4, 5, 6, 7]])


def test_block_examples():
    rng = np.random.default_rng(1)
    assert not decode_block8(0xFF, rng.normal(size=8)).any()
    assert not decode_block16(0xFFFE, np.ones(16)).any()
    with pytest.raises(ValueError):
        decode_block8(0xE8, np.zeros(16))
    with pytest.raises(ValueError):
        decode_block8(0xE8, np.zeros(8), mode="fast")


def test_min_distance_examples():
    assert min_distance(0xFE, 8) == 8
    assert min_distance(0xE8, 8) == 4
    assert min_distance(0xF0, 8) == 2
    assert min_distance(0xFFFE, 16) == 16
    assert min_distance(0xFFF8, 16) == 8
    with pytest.raises(ValueError):
        min_distance(0xFF, 8)
    assert all(printed == got for _, printed, got in table_dmin_check(8) + table_dmin_check(16))


def test_oracle_examples():
    rng = np.random.default_rng(2)
    assert not ml_oracle_decode(0xFF, rng.normal(size=8), 8).any()
    y = rng.normal(size=(2000, 8))
    assert np.array_equal(ml_oracle_decode(0x80, y, 8), wagner_decode(y))
    cw = block_codebook(0xE8, 8)
    assert cw.shape == (16, 8)
    assert np.array_equal(ml_oracle_decode(0xE8, (1.0 - 2.0 * cw) * 3, 8), cw)
    with pytest.raises(ValueError):
        block_codebook(0x0, 32)
    with pytest.raises(ValueError):
        block_codebook(0xF9, 8)  # good set {5,6} is not an up-set


@pytest.mark.parametrize("R,mask", [(8, m) for m in OPTIMAL_8] + [(16, m) for m in OPTIMAL_16])
def test_optimal_matches_oracle(R, mask):
    rng = np.random.default_rng(mask)
    y = noisy(rng, (3000, R), snr_db=0.0)
    assert np.array_equal(decode_block(mask, y, "optimal", R=R), ml_oracle_decode(mask, y, R))


@pytest.mark.parametrize("R", [8, 16])
@pytest.mark.parametrize("mode", ["optimal", "lowcomplexity"])
def test_outputs_are_codewords(R, mode):
    rng = np.random.default_rng(R)
    for s in enumerate_admissible_sets(R):
        mask = s.to_mask()
        y = rng.normal(0.5, 2.0, (200, R))
        u = polar_transform(decode_block(mask, y, mode, R=R))
        assert not u[:, frozen_from_mask(mask, R)].any(), hex(mask)


@pytest.mark.parametrize("R", [8, 16])
def test_noiseless_codewords_are_recovered(R):
    for e in canonical_table(R):
        if not e.retained or e.mask == (1 << R) - 1:
            continue
        cw = block_codebook(e.mask, R)
        for mode in ("optimal", "lowcomplexity"):
            assert np.array_equal(decode_block(e.mask, (1.0 - 2.0 * cw) * 4, mode, R=R), cw)


@pytest.mark.parametrize("R,mask", [(8, 0xFF), (8, 0xFE), (8, 0xFC), (8, 0x00),
                                    (16, 0xFFFF), (16, 0xFFFE), (16, 0xFFFC), (16, 0x0000)])
def test_structural_cases_equal_sc(R, mask):
    rng = np.random.default_rng(7)
    y = rng.normal(0.5, 2.0, (10 ** 4, R))
    want = sc_block(frozen_from_mask(mask, R), y)
    for mode in ("optimal", "lowcomplexity"):
        assert np.array_equal(decode_block(mask, y, mode, R=R), want)


def test_fallback_is_sc():
    rng = np.random.default_rng(8)
    y = rng.normal(0.5, 2.0, (500, 8))
    assert np.array_equal(decode_block8(0xF0, y), sc_block(frozen_from_mask(0xF0, 8), y))


def test_check_node_budget():
    rng = np.random.default_rng(9)
    y = rng.normal(size=8)
    for mask in (0xFF, 0xFE, 0xFC, 0xF8, 0xC0, 0x80, 0x00):
        with count_ops() as c:
            decode_block8(mask, y, "lowcomplexity")
        assert c.cn == 0, hex(mask)
    for mask in (0xE8, 0xE0):
        with count_ops() as c:
            decode_block8(mask, y, "lowcomplexity")
        assert c.cn == 4, hex(mask)
    with count_ops() as c:
        sc_block(frozen_from_mask(0xE8, 8), y)
    assert c.cn == 12


def test_batch_shapes():
    rng = np.random.default_rng(10)
    y = rng.normal(size=(3, 5, 16))
    out = decode_block16(0xE880, y)
    assert out.shape == y.shape
    assert np.array_equal(out[1, 2], decode_block16(0xE880, y[1, 2]))
