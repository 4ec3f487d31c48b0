"""
Centre-of-mass driven contraction
=================================

With several particles the contraction factor is taken from the CM action
and applied to everyone. Shrinking each particle by its own action
instead gives a CM that disagrees with the contracted CM.
"""

import math

import numpy as np

from holoflat.manybody import ParticleSystem, cm_modification_factor, cm_trajectory, modify_system
from holoflat.paths import kinetic_action, straight_line

fast = straight_line(1.0, [0.0], [3.0], 1.0, 8)
slow = straight_line(2.0, [1.0], [1.2], 1.0, 8)
system = ParticleSystem((fast, slow))
alpha = 0.5

factor = cm_modification_factor(system, alpha)
print(f"CM action {kinetic_action(cm_trajectory(system)):.4f}, shared factor {factor:.5f}")

modified_cm = factor * cm_trajectory(system).positions[:, 0]
cm_of_modified = cm_trajectory(modify_system(system, alpha)).positions[:, 0]
print("CM-driven gap:", np.max(np.abs(modified_cm - cm_of_modified)))

per_particle = ParticleSystem(tuple(
    t.with_positions(t.positions * math.exp(-kinetic_action(t) * alpha)) for t in system.trajectories
))
print("per-particle gap:", np.max(np.abs(modified_cm - cm_trajectory(per_particle).positions[:, 0])))
