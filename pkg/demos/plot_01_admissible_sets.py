"""
Admissible information sets and the case tables
===============================================

A block of R = 2**t leaves in a polar code can only carry an information set
that is closed upward under binary domination. This script counts those sets,
groups them under bit permutations and prints the retained case table.
"""

import numpy as np

from flexpolar import IndexSet, canonical_table, enumerate_admissible_sets, is_dominance_closed
from flexpolar.domlattice import count_admissible_sets, mask_hex

# %%
# Counting admissible sets for each block size
for R in (2, 4, 8, 16, 32):
    print(f"R={R:2d}: {count_admissible_sets(R)} admissible sets")

# %%
# A set is admissible when every index that dominates a member is also a member.
# Index 6 = 110b dominates 4 and 2, so {4, 6} is closed but {2, 4} is not.
print(is_dominance_closed(IndexSet([4, 6, 5, 7], 3)))
print(is_dominance_closed(IndexSet([2, 4], 3)))

# %%
# Masks are written MSB first: bit i of the R-bit mask is 1 when position i is frozen.
for s in enumerate_admissible_sets(8)[:6]:
    print(mask_hex(s.to_mask(), 8), s.elements)

# %%
# The retained rows of the R=8 table, with rate and minimum distance
for e in canonical_table(8):
    if e.retained:
        print(f"case {e.case_id:2d}  {e.mask_hex}  k={e.k}  dmin={e.d_min}")

# %%
# Rates covered by the retained R=16 cases
rates = np.array([e.k for e in canonical_table(16) if e.retained])
print("R=16 retained dimensions:", sorted(set(rates.tolist())))
