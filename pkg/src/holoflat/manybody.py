"""Centre-of-mass reduction for several free particles on one lattice.

The modification under exact quantum mechanics is driven by the CM
action alone: every particle is rescaled by the same factor
exp(-S_cm * alpha / hbar). Applying the contraction particle by particle,
each with its own action, does not commute with taking the CM, so it is
not offered here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .paths import LatticeTrajectory, kinetic_action
from .units import NATURAL, PhysicalConstants

__all__ = ["ParticleSystem", "cm_modification_factor", "cm_trajectory", "modify_system"]


@dataclass(frozen=True, eq=False)
class ParticleSystem:
    """Particles sharing one imaginary-time lattice; masses live on the trajectories."""

    trajectories: tuple[LatticeTrajectory, ...]

    def __post_init__(self):
        trajs = tuple(self.trajectories)
        object.__setattr__(self, "trajectories", trajs)
        if not trajs:
            raise ValueError("a particle system needs at least one particle")
        first = trajs[0]
        for i, t in enumerate(trajs[1:], start=1):
            if t.positions.shape != first.positions.shape or t.tau_step != first.tau_step:
                raise ValueError(
                    f"particle {i} lattice {t.positions.shape}/{t.tau_step} does not match "
                    f"particle 0 lattice {first.positions.shape}/{first.tau_step}"
                )

    @classmethod
    def from_arrays(cls, masses, positions, tau_step) -> ParticleSystem:
        return cls(tuple(LatticeTrajectory(m, x, tau_step) for m, x in zip(masses, positions)))

    @property
    def masses(self) -> np.ndarray:
        return np.array([t.mass for t in self.trajectories])

    @property
    def total_mass(self) -> float:
        return float(self.masses.sum())

    def __len__(self):
        return len(self.trajectories)


def cm_trajectory(sys: ParticleSystem) -> LatticeTrajectory:
    m = sys.masses
    stacked = np.stack([t.positions for t in sys.trajectories])
    cm = np.tensordot(m, stacked, axes=1) / m.sum()
    return LatticeTrajectory(sys.total_mass, cm, sys.trajectories[0].tau_step)


def cm_modification_factor(
    sys: ParticleSystem, alpha: float, constants: PhysicalConstants = NATURAL
) -> float:
    if not (0.0 <= alpha <= 1.0):
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    s_cm = kinetic_action(cm_trajectory(sys))
    return math.exp(-s_cm * alpha / constants.hbar)


def modify_system(
    sys: ParticleSystem, alpha: float, constants: PhysicalConstants = NATURAL
) -> ParticleSystem:
    factor = cm_modification_factor(sys, alpha, constants)
    return ParticleSystem(tuple(t.with_positions(t.positions * factor) for t in sys.trajectories))
