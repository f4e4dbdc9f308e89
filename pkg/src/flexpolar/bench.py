"""Cycle-count latency model for the fast block decoders.

Additions and bit operations cost one cycle, a check-node operation ``t_c``
cycles and a list minimum ``t_m`` cycles.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .construction import CodeConfig, block_masks
from .domlattice import mask_hex
from .fastdec import classify_block


@dataclass(frozen=True)
class LatencyParams:
    t_c: int = 3
    t_m: int = 2

    def __post_init__(self):
        if int(self.t_c) < 1 or int(self.t_m) < 1:
            raise ValueError("t_c and t_m must be positive integers")


@dataclass(frozen=True)
class LatencyExpr:
    """``c0 + a*t_c + b*t_m (+ max(t_c, t_m))``, or ``max(c0 + a*t_c, b*t_m)`` when ``outer_max``."""

    c0: int = 0
    a: int = 0
    b: int = 0
    max_term: bool = False
    outer_max: bool = False

    def __call__(self, p: LatencyParams) -> int:
        if self.outer_max:
            return max(self.c0 + self.a * p.t_c, self.b * p.t_m)
        return self.c0 + self.a * p.t_c + self.b * p.t_m + (max(p.t_c, p.t_m) if self.max_term else 0)

    def __str__(self) -> str:
        def lin(c0, a, b):
            parts = [str(c0)] if c0 or not (a or b) else []
            parts += [f"{a}*Tc" if a > 1 else "Tc"] if a else []
            parts += [f"{b}*Tm" if b > 1 else "Tm"] if b else []
            return "+".join(parts)

        if self.outer_max:
            return f"max({lin(self.c0, self.a, 0)}, {lin(0, 0, self.b)})"
        text = lin(self.c0, self.a, self.b)
        if self.max_term:
            text = "max(Tc, Tm)" if text == "0" else text + "+max(Tc, Tm)"
        return text


_E = LatencyExpr
_MAX = dict(max_term=True)

LATENCY_8 = {
    0xFF: _E(0), 0xFE: _E(1), 0xFC: _E(1), 0xF8: _E(1, b=1), 0xE8: _E(1, **_MAX),
    0xE0: _E(1, a=1), 0xC0: _E(b=1), 0x80: _E(b=1), 0x00: _E(0),
}

# duplicate case labels follow the row order of the 16-bit case table
LATENCY_16 = {
    0xFFFF: _E(0), 0xFFFE: _E(1), 0xFFFC: _E(1), 0xFFF8: _E(1, b=1),
    0xFFE8: _E(2, **_MAX), 0xFEE8: _E(3, **_MAX), 0xFFC0: _E(1, b=1), 0xFEE0: _E(3, a=1),
    0xFF80: _E(1, b=1), 0xFEC0: _E(2, b=1), 0xFE80: _E(2, b=1), 0xFCC0: _E(1, **_MAX),
    0xFC80: _E(1, **_MAX), 0xF880: _E(3, a=1, b=1), 0xE880: _E(3, a=1, b=1, **_MAX),
    0xE800: _E(3, a=1, **_MAX), 0xC0C0: _E(b=1), 0xE000: _E(1, a=1, b=1, outer_max=True),
    0xC000: _E(b=1), 0x8000: _E(b=1), 0x0000: _E(0),
}

_TABLES = {8: LATENCY_8, 16: LATENCY_16}


def latency_expr(mask: int, R: int) -> LatencyExpr:
    table = _TABLES.get(R)
    if table is None:
        raise ValueError(f"latency table exists for R = 8 and 16, got {R}")
    if int(mask) not in table:
        raise ValueError(f"mask {mask_hex(mask, R)} has no fast decoder for R = {R}")
    return table[int(mask)]


def case_latency(mask: int, R: int, params: LatencyParams) -> int:
    return latency_expr(mask, R)(params)


def sc_block_latency(R: int, params: LatencyParams) -> int:
    """``R - 1`` check-node levels plus ``R`` additions: ``R + (R - 1) t_c``."""
    if R < 1 or R & (R - 1):
        raise ValueError("R must be a power of two")
    return R + (R - 1) * params.t_c


@dataclass(frozen=True)
class BlockLatency:
    block_index: int
    mask: int
    R: int
    case_id: int
    kind: str
    fast_cycles: int
    sc_cycles: int

    @property
    def mask_hex(self) -> str:
        return mask_hex(self.mask, self.R)


@dataclass(frozen=True)
class LatencyReport:
    R: int
    params: LatencyParams
    blocks: tuple[BlockLatency, ...]
    tree_cycles: int

    @property
    def fast_total(self) -> int:
        return sum(b.fast_cycles for b in self.blocks)

    @property
    def sc_total(self) -> int:
        return sum(b.sc_cycles for b in self.blocks)

    @property
    def speedup(self) -> float:
        return self.sc_total / self.fast_total if self.fast_total else float("inf")

    @property
    def fallback_blocks(self) -> int:
        return sum(b.case_id < 0 for b in self.blocks)


def tree_latency(N: int, R: int, params: LatencyParams) -> int:
    """f and g steps of the ``N/R - 1`` tree nodes above the blocks (same for both decoders)."""
    return (N // R - 1) * (params.t_c + 1)


def code_latency_report(code: CodeConfig, R: int, params: LatencyParams) -> LatencyReport:
    """Per-block fast and SC cycle counts; fallback blocks are charged the SC cost."""
    sc = sc_block_latency(R, params)
    rows = []
    for i, mask in enumerate(block_masks(code, R)):
        case = classify_block(mask, R)
        if case.is_fallback:
            rows.append(BlockLatency(i, mask, R, -1, case.kind, sc, sc))
        else:
            rows.append(BlockLatency(i, mask, R, case.case_id, case.kind,
                                     case_latency(mask, R, params), sc))
    return LatencyReport(R, params, tuple(rows), tree_latency(code.N, R, params))


REPORT_COLUMNS = ("block_index", "mask_hex", "case_id", "fast_cycles", "sc_cycles")


def write_report_csv(report: LatencyReport, path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        for b in report.blocks:
            w.writerow([b.block_index, b.mask_hex, b.case_id, b.fast_cycles, b.sc_cycles])
