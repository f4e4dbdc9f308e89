"""
Decoding latency in clock cycles
================================

Count the cycles spent in each leaf block for the fast decoder and for SC,
with a check-node delay Tc and a compare delay Tm.
"""

from flexpolar import LatencyParams, build_code, case_latency, code_latency_report, sc_block_latency
from flexpolar.bench import LATENCY_16

params = LatencyParams(t_c=3, t_m=2)

# %%
# Per-case cost against the SC cost of a whole block
print("SC block of 8:", sc_block_latency(8, params), "SC block of 16:", sc_block_latency(16, params))
for mask, expr in sorted(LATENCY_16.items(), reverse=True):
    print(f"{mask:04X}  {str(expr):24s} {case_latency(mask, 16, params)}")

# %%
# A whole code: leaf blocks plus the shared tree above them
code = build_code(10, 512, "huawei")
for R in (8, 16):
    rep = code_latency_report(code, R, params)
    print(f"R={R}: fast {rep.fast_total + rep.tree_cycles} cycles, "
          f"sc {rep.sc_total + rep.tree_cycles} cycles, "
          f"leaf speedup {rep.speedup:.1f}x, fallback blocks {rep.fallback_blocks}")
