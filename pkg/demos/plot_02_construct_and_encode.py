"""
Building a code and encoding
============================

Construct a polar code from channel reliabilities, look at how its frozen
pattern splits into blocks, then encode systematically and non-systematically.
"""

import numpy as np

from flexpolar import (BEC_DESIGN_EPS, block_masks, build_code, encode_nonsystematic,
                       encode_systematic, polar_transform)
from flexpolar.domlattice import mask_hex

# %%
# A rate-1/2 code of length 256 designed on the erasure channel
code = build_code(8, 128, "bec", eps=BEC_DESIGN_EPS)
print(code.N, code.K, code.good.elements[:8])

# %%
# The same dimensions from the fixed reliability ordering
code_h = build_code(8, 128, "huawei")
print("sets agree:", code.good.elements == code_h.good.elements)

# %%
# Frozen pattern of each 8-leaf block
print(" ".join(mask_hex(m, 8) for m in block_masks(code, 8)))

# %%
# Systematic encoding places the message on the information positions of x
rng = np.random.default_rng(0)
u = rng.integers(0, 2, code.K, dtype=np.uint8)
x = encode_systematic(code, u)
print("message visible in codeword:", np.array_equal(x[code.good_array], u))

# %%
# The transform is its own inverse, so the frozen positions of T(x) are zero
print("frozen bits zero:", not polar_transform(x)[code.frozen].any())
xn = encode_nonsystematic(code, u)
print("non-systematic codeword differs:", not np.array_equal(x, xn))
