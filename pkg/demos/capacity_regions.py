"""
Capacity of delayed jamming channels
====================================

How much can be sent reliably when a jammer controls a fraction ``p`` of
the packets and sees them ``d`` (a fraction of the block) late?
"""

import numpy as np

from causalcodes import capacity

# The classical, omniscient jammer caps the rate at 1 - 2p.
# A jammer that only *adds* noise, even one packet late, is no worse than erasures.
ps = np.linspace(0, 0.6, 7)
print("   p   omniscient  additive(d=.1)  overwrite(d=.1)  overwrite(d=.3)")
for p in ps:
    row = [capacity("omniscient", p), capacity("additive", p, 0.1),
           capacity("overwrite", p, 0.1), capacity("overwrite", p, 0.3)]
    print(f"{p:5.2f}" + "".join(f"{c:14.3f}" for c in row))

# A jammer that never learns the packets it corrupts (jam-or-listen) is no
# weaker: every entry is unchanged.
assert capacity("jl_overwrite", 0.3, 0.1) == capacity("overwrite", 0.3, 0.1)
