import csv
import itertools

import pytest

from flexpolar.bench import (
    LATENCY_8, LATENCY_16, LatencyExpr, LatencyParams, case_latency, code_latency_report,
    latency_expr, sc_block_latency, tree_latency, write_report_csv,
)
from flexpolar.construction import BEC_DESIGN_EPS, build_code
from flexpolar.domlattice import retained_masks
from flexpolar.verify import PRINTED_LATENCY, check_latency

P = LatencyParams(3, 2)


def test_examples():
    assert case_latency(0xE8, 8, P) == 4
    assert case_latency(0xFF, 8, LatencyParams(7, 5)) == 0
    assert case_latency(0xE880, 16, P) == 11
    assert sc_block_latency(8, P) == 29
    assert sc_block_latency(16, P) == 61
    assert sc_block_latency(1, LatencyParams(9, 9)) == 1


def test_params_validation():
    with pytest.raises(ValueError):
        LatencyParams(0, 1)
    with pytest.raises(ValueError):
        case_latency(0xF0, 8, P)
    with pytest.raises(ValueError):
        latency_expr(0x0, 32)


def test_tables_cover_retained_masks():
    assert set(LATENCY_8) == set(retained_masks(8))
    assert set(LATENCY_16) == set(retained_masks(16))
    assert set(PRINTED_LATENCY[16]) == set(LATENCY_16)


def test_printed_expressions():
    assert all(c.ok for c in check_latency())


def test_expression_text():
    assert str(LATENCY_16[0xE880]) == "3+Tc+Tm+max(Tc, Tm)"
    assert str(LATENCY_16[0xE000]) == "max(1+Tc, Tm)"
    assert str(LatencyExpr()) == "0"


@pytest.mark.parametrize("R", [8, 16])
def test_fast_beats_sc(R):
    for tc, tm in itertools.product(range(1, 9), repeat=2):
        p = LatencyParams(tc, tm)
        for m in retained_masks(R):
            assert case_latency(m, R, p) < sc_block_latency(R, p)


def test_reports():
    allfrozen = code_latency_report(build_code(6, 0, "huawei"), 8, P)
    assert allfrozen.fast_total == 0 and len(allfrozen.blocks) == 8
    single = code_latency_report(build_code(4, 12, "huawei"), 16, P)
    assert len(single.blocks) == 1
    b = single.blocks[0]
    assert (b.mask_hex, b.case_id, b.fast_cycles, b.sc_cycles) == ("E800", 12, 9, 61)
    assert single.tree_cycles == 0


def test_report_bookkeeping_and_fallback(tmp_path):
    code = build_code(8, 128, "bec", eps=BEC_DESIGN_EPS)
    rep = code_latency_report(code, 8, P)
    assert rep.fast_total == sum(b.fast_cycles for b in rep.blocks)
    assert rep.sc_total == 32 * 29
    assert rep.speedup > 1
    assert rep.tree_cycles == tree_latency(256, 8, P) == 31 * 4
    path = tmp_path / "r.csv"
    write_report_csv(rep, path)
    rows = list(csv.DictReader(path.open()))
    assert list(rows[0]) == ["block_index", "mask_hex", "case_id", "fast_cycles", "sc_cycles"]
    assert len(rows) == 32
    # a code with an F0 block falls back to SC cost
    from flexpolar.construction import CodeConfig

    fb = code_latency_report(CodeConfig.from_good(3, [4, 5, 6, 7]), 8, P)
    assert fb.fallback_blocks == 1
    assert fb.blocks[0].case_id == -1 and fb.blocks[0].fast_cycles == 29
