"""
Statistical weight and site probability
=======================================

The violation parameter alpha fixes the number of readable events per
hbar ln 2 of action, W = 2**(1 - alpha). The site probability p is the
root of H2(p) = 1 - alpha on [0, 1/2]. Counting says W**n should match
the binomial coefficient C(n, p n) for large n; we watch the residual
shrink.
"""

import numpy as np

from holoflat.weight import WeightModel, binary_entropy, verify_weight_asymptotics

print(f"{'alpha':>6} {'W':>10} {'p':>10} {'H2(p)':>8}")
for alpha in np.linspace(0.0, 1.0, 6):
    m = WeightModel.from_alpha(alpha)
    print(f"{alpha:6.2f} {m.weight:10.6f} {m.site_probability:10.6f} {binary_entropy(m.site_probability):8.4f}")

###############################################################################
# The residual |log2 C(n, pn)/n - log2 W| decays roughly like log(n)/n.

model = WeightModel.from_alpha(0.5)
for n in (10, 100, 1000, 10_000, 100_000):
    print(f"n = {n:>7d}   residual = {verify_weight_asymptotics(model, n):.3e}")
