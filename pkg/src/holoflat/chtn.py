"""Bookkeeping for the classicalized holographic tensor network.

Measurement entropy, the classicalized spin action, the two membrane
tensions, Brown-Henneaux and redefined central charges, plus a Bernoulli
sampler of product spin configurations that estimates the per-site entropy
of the classical mixed state.

No tensor-network geometry is modelled: the discretized area is a bare
non-negative count of sites.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .units import NATURAL, PhysicalConstants
from .weight import binary_entropy

__all__ = [
    "CHTNState",
    "CentralCharges",
    "DegenerateTensionWarning",
    "EntropyEstimate",
    "EPSILON_CEILING",
    "brown_henneaux",
    "classicalized_action",
    "measurement_entropy",
    "redefine_central_charges",
    "sample_mixed_state_entropy",
    "tension_alpha",
    "tension_flat",
]

EPSILON_CEILING = 0.1


class DegenerateTensionWarning(UserWarning):
    """alpha = 0: the deviation term vanishes and so does its tension."""


@dataclass(frozen=True)
class CHTNState:
    area_tn: float
    alpha: float
    site_area: float = 1.0
    t2_flat: float = 1.0
    r_ads: float = 1.0
    epsilon: float = 1e-3
    epsilon_ceiling: float = EPSILON_CEILING

    def __post_init__(self):
        if self.area_tn < 0:
            raise ValueError("area_tn must be non-negative")
        if not (0.0 <= self.alpha <= 1.0):
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha!r}")
        for name in ("site_area", "t2_flat", "r_ads"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not (0.0 < self.epsilon < self.epsilon_ceiling):
            raise ValueError(
                f"epsilon must lie in (0, {self.epsilon_ceiling}), got {self.epsilon!r}"
            )


@dataclass(frozen=True)
class CentralCharges:
    c_left: float
    c_right: float
    c1: float
    c2: float


def measurement_entropy(state: CHTNState) -> float:
    """Entropy in bits: the maximal area minus the scale-invariant deviation."""
    return (1.0 - state.alpha) * state.area_tn


def classicalized_action(entropy_bits: float, constants: PhysicalConstants = NATURAL) -> float:
    if entropy_bits < 0:
        raise ValueError("entropy must be non-negative")
    return -constants.hbar * constants.bit_factor * entropy_bits


def tension_alpha(state: CHTNState, constants: PhysicalConstants = NATURAL) -> float:
    """Negative world-volume tension of the deviation term.

    Returns 0 with a :class:`DegenerateTensionWarning` when alpha = 0.
    """
    if state.alpha == 0.0:
        warnings.warn("alpha = 0 gives no deviation term", DegenerateTensionWarning, stacklevel=2)
        return 0.0
    return -constants.hbar * constants.bit_factor * state.alpha / (state.site_area * state.t2_flat)


def tension_flat(state: CHTNState, constants: PhysicalConstants = NATURAL) -> float:
    return constants.hbar * constants.bit_factor / (state.site_area * state.t2_flat)


def brown_henneaux(r_ads: float, g_newton_3d: float) -> float:
    if r_ads <= 0 or g_newton_3d <= 0:
        raise ValueError("r_ads and g_newton_3d must be positive")
    return 3.0 * r_ads / (2.0 * g_newton_3d)


def redefine_central_charges(c: float, cbar: float, epsilon: float) -> CentralCharges:
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    return CentralCharges(c, cbar, c - cbar, epsilon * (c + cbar))


class EntropyEstimate(NamedTuple):
    bits_per_site: float
    std_error: float


_BATCH = 8192
_BOOTSTRAP = 200


def _count_batch(seed, index, p, sites, size):
    rng = np.random.default_rng(np.random.SeedSequence((seed, index)))
    draws = rng.random((size, sites)) < p
    return draws.sum(axis=0)


def sample_mixed_state_entropy(
    p: float, sites: int, samples: int, seed: int, workers: int = 1
) -> EntropyEstimate:
    """Plug-in Shannon entropy per site of sampled product configurations.

    Each configuration assigns every site one of two spin eigenstates with
    probability ``p``. Draws are split into fixed-size batches whose streams
    derive from ``(seed, batch index)``, so the result does not depend on
    ``workers``. The standard error is a bootstrap over configurations;
    sites are independent, so resampling rows reduces to resampling each
    site's count from Binomial(samples, p_hat).
    """
    if not (0.0 <= p <= 1.0):
        raise ValueError("p must lie in [0, 1]")
    if sites < 1 or samples < 1:
        raise ValueError("sites and samples must be at least 1")

    sizes = [_BATCH] * (samples // _BATCH)
    if samples % _BATCH:
        sizes.append(samples % _BATCH)
    jobs = [(seed, i, p, sites, n) for i, n in enumerate(sizes)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            partial = list(pool.map(lambda a: _count_batch(*a), jobs))
    else:
        partial = [_count_batch(*a) for a in jobs]
    counts = np.sum(partial, axis=0)

    p_hat = counts / samples
    estimate = float(np.mean(binary_entropy(p_hat)))

    boot_rng = np.random.default_rng(np.random.SeedSequence((seed, 2**32 - 1)))
    boot_counts = boot_rng.binomial(samples, p_hat, size=(_BOOTSTRAP, sites))
    boot = np.mean(binary_entropy(boot_counts / samples), axis=1)
    return EntropyEstimate(estimate, float(np.std(boot, ddof=1)))
