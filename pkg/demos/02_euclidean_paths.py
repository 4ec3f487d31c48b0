"""
Modified path probabilities and the Monte Carlo kernel
======================================================

A free particle's lattice action S sets the event count N = S/(hbar ln 2).
Exact quantum mechanics gives probability 2**-N; with violation alpha the
readout probability becomes W**-N, larger by 2**(N alpha). Holding the
probability-weighted events fixed turns that excess into a contraction of
the trajectory by 2**(-N alpha).
"""

import numpy as np

from holoflat.paths import (
    contract_event_vector,
    event_count,
    kinetic_action,
    mc_propagator,
    path_probability,
    readout_events,
    straight_line,
)

traj = straight_line(mass=1.0, x_start=[0.0], x_end=[2.0], tau=1.0, steps=64)
S = kinetic_action(traj)
n_tau = event_count(S)
prob = path_probability(S, alpha=0.25)
print(f"S = {S:.4f}, N = {n_tau:.4f}")
print(f"original {prob.original:.5f}  modified {prob.modified:.5f}  ratio {prob.ratio:.5f}")

events = readout_events(traj)
contracted = contract_event_vector(events, n_tau, 0.25)
for tau, x, y in zip(events.taus, events.positions[:, 0], contracted.positions[:, 0]):
    print(f"  tau {tau:.4f}   x {x:.4f}  ->  {y:.4f}")

###############################################################################
# The kernel estimate walks half the lattice with Gaussian steps and closes
# the path with an analytically normalised Brownian bridge.

ends = np.linspace(-3, 3, 13)[:, None]
kern = mc_propagator(1.0, [0.0], ends, tau=1.0, steps=256, samples=100_000, seed=1)
for x, est, se, exact in zip(ends[:, 0], kern.estimate, kern.std_error, kern.exact):
    print(f"x = {x:+.1f}   MC {est:.5f} +- {se:.5f}   exact {exact:.5f}")
