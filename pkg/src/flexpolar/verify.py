"""Self-checks that recompute the published case tables from first principles.

Each check returns a list of ``Check`` rows; ``run_all`` gathers them for the
``verify-tables`` command.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .bench import LatencyParams, case_latency
from .domlattice import (KNOWN_OUTPUT_ERRATA, canonical_table, count_admissible_sets,
                         enumerate_admissible_sets, mask_from_good, mask_hex, parse_output_symbol)
from .fastdec import min_distance
from .xform import encode_systematic

EXPECTED_COUNTS = {1: 2, 2: 3, 4: 6, 8: 20, 16: 168, 32: 7581}

# latency column as printed, in the row order of the case tables
PRINTED_LATENCY = {
    8: {0xFF: "0", 0xFE: "1", 0xFC: "1", 0xF8: "1+Tm", 0xE8: "1+max(Tc,Tm)",
        0xE0: "1+Tc", 0xC0: "Tm", 0x80: "Tm", 0x00: "0"},
    16: {0xFFFF: "0", 0xFFFE: "1", 0xFFFC: "1", 0xFFF8: "1+Tm", 0xFFE8: "2+max(Tc,Tm)",
         0xFEE8: "3+max(Tc,Tm)", 0xFFC0: "1+Tm", 0xFEE0: "3+Tc", 0xFF80: "1+Tm",
         0xFEC0: "2+Tm", 0xFE80: "2+Tm", 0xFCC0: "1+max(Tc,Tm)", 0xFC80: "1+max(Tc,Tm)",
         0xF880: "3+Tc+Tm", 0xE880: "3+Tc+Tm+max(Tc,Tm)", 0xE800: "3+Tc+max(Tc,Tm)",
         0xC0C0: "Tm", 0xE000: "max(1+Tc,Tm)", 0xC000: "Tm", 0x8000: "Tm", 0x0000: "0"},
}


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


def check_counts() -> list[Check]:
    rows = []
    for R, want in EXPECTED_COUNTS.items():
        got = count_admissible_sets(R)
        rows.append(Check(f"P_{R}", got == want, f"{got} (expected {want})"))
    return rows


def check_membership() -> list[Check]:
    t8 = canonical_table(8)
    all8 = {mask_from_good(S.elements, 8) for S in enumerate_admissible_sets(8)}
    masks8 = {e.mask for e in t8}
    kept = sum(e.retained for e in t8)
    all16 = {mask_from_good(S.elements, 16) for S in enumerate_admissible_sets(16)}
    missing16 = [e.mask_hex for e in canonical_table(16) if e.mask not in all16]
    return [
        Check("R=8 table rows are the admissible masks", masks8 == all8 and len(t8) == 20,
              f"{len(t8)} rows"),
        Check("R=8 retained cases", kept == 9, f"{kept} retained"),
        Check("R=16 retained masks are admissible", not missing16 and len(canonical_table(16)) == 21,
              ", ".join(missing16)),
    ]


def check_dmin() -> list[Check]:
    rows = []
    for R in (8, 16):
        for e in canonical_table(R):
            if e.d_min is None:
                continue
            got = min_distance(e.mask, R)
            rows.append(Check(f"d_min R={R} {e.mask_hex}", got == e.d_min,
                              f"{got} (printed {e.d_min})"))
    return rows


def output_symbols(mask: int, R: int) -> tuple[str, ...]:
    """For each code bit, the systematic positions whose XOR produces it."""
    good = np.array([i for i in range(R) if not (mask >> (R - 1 - i)) & 1], dtype=np.int64)

    class _Blk:
        N = R

    _Blk.good = tuple(good)
    if good.size == 0:
        return ("",) * R
    cw = encode_systematic(_Blk, np.eye(good.size, dtype=np.uint8))
    return tuple("".join(format(int(j), "x") for j in good[cw[:, i] == 1]) for i in range(R))


def check_outputs() -> list[Check]:
    rows = []
    for R in (8, 16):
        for e in canonical_table(R):
            got = output_symbols(e.mask, R)
            bad = []
            for pos, (printed, sym) in enumerate(zip(e.output, got)):
                erratum = KNOWN_OUTPUT_ERRATA.get((R, e.mask, pos))
                if erratum is not None:
                    if erratum != (printed, sym):
                        bad.append(f"x{pos}: erratum entry stale")
                elif parse_output_symbol(printed) != parse_output_symbol(sym):
                    bad.append(f"x{pos}: printed {printed!r}, computed {sym!r}")
            rows.append(Check(f"outputs R={R} {e.mask_hex}", not bad, "; ".join(bad)))
    return rows


def _eval_printed(text: str, t_c: int, t_m: int) -> int:
    return int(eval(text, {"__builtins__": {}}, {"max": max, "Tc": t_c, "Tm": t_m}))


def check_latency() -> list[Check]:
    rows = []
    grid = list(itertools.product(range(1, 9), repeat=2))
    for R, table in PRINTED_LATENCY.items():
        for mask, text in table.items():
            bad = [(tc, tm) for tc, tm in grid
                   if case_latency(mask, R, LatencyParams(tc, tm)) != _eval_printed(text, tc, tm)]
            rows.append(Check(f"latency R={R} {mask_hex(mask, R)}", not bad,
                              text if not bad else f"{text} differs at {bad[0]}"))
    return rows


def run_all() -> list[Check]:
    return check_counts() + check_membership() + check_dmin() + check_outputs() + check_latency()
