"""
Bit error rate of SC and fast decoding
======================================

Simulate a rate-1/2 code of length 256 on BPSK over AWGN and compare plain
successive cancellation with the block-fast decoder. All decoders see the
same frames, so their curves differ only by decoding.
"""

import matplotlib.pyplot as plt

from flexpolar import BEC_DESIGN_EPS, Decoder, StopRule, ber_sweep, build_code

code = build_code(8, 128, "bec", eps=BEC_DESIGN_EPS)
snrs = [0.0, 0.5, 1.0, 1.5, 2.0]
stop = StopRule(min_frame_errors=50, max_frames=20000)

# %%
curves = {}
for dec in (Decoder("sc"), Decoder("fast", 8), Decoder("fast", 16)):
    pts = ber_sweep(code, dec, True, snrs, stop, seed=3)
    curves[dec.id] = [p.ber for p in pts]
    print(dec.id, " ".join(f"{p.ber:.2e}" for p in pts))

# %%
for name, ber in curves.items():
    plt.semilogy(snrs, ber, marker="o", label=name)
plt.xlabel("Ec/N0 (dB)")
plt.ylabel("BER (systematic)")
plt.legend()
plt.grid(True, which="both")
plt.savefig("ber_curve.png", dpi=120)
