"""Discretized imaginary-time paths of non-relativistic free particles.

The lattice action is the forward-difference Euclidean kinetic action

    S = sum_k (m / 2) |x_{k+1} - x_k|**2 / dtau

with the rest energy left out (it only contributes a constant
normalization at fixed time edges). One readout event is counted per
hbar * ln 2 of accumulated action, so N = S / (hbar ln 2), and

    original probability  2**-N            = exp(-S / hbar)
    modified probability  2**-(N (1 - a))  = W**-N
    ratio                 2**(N a)

Trajectories modified under exact quantum mechanics shrink by 2**(-N a).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .units import NATURAL, PhysicalConstants

__all__ = [
    "EventVector",
    "KernelEstimate",
    "LatticeTrajectory",
    "PathProbability",
    "brownian_bridge",
    "contract_event_vector",
    "event_count",
    "free_kernel",
    "kinetic_action",
    "mc_propagator",
    "modified_probability",
    "original_probability",
    "path_probability",
    "probability_ratio",
    "readout_events",
    "straight_line",
]


def _as_points(positions) -> np.ndarray:
    arr = np.asarray(positions, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    return arr


@dataclass(frozen=True, eq=False)
class LatticeTrajectory:
    """Positions at K + 1 equally spaced imaginary times, shape (K + 1, D)."""

    mass: float
    positions: np.ndarray
    tau_step: float

    def __post_init__(self):
        pos = _as_points(self.positions)
        pos.setflags(write=False)
        object.__setattr__(self, "positions", pos)
        if pos.ndim != 2 or pos.shape[0] < 2:
            raise ValueError("need at least two lattice points (K >= 1)")
        if pos.shape[1] not in (1, 2, 3):
            raise ValueError(f"dimension must be 1, 2 or 3, got {pos.shape[1]}")
        if not np.all(np.isfinite(pos)):
            raise ValueError("positions must be finite")
        if not self.tau_step > 0:
            raise ValueError("tau_step must be positive")
        if not self.mass > 0:
            raise ValueError("mass must be positive")

    @property
    def steps(self) -> int:
        return self.positions.shape[0] - 1

    @property
    def dimension(self) -> int:
        return self.positions.shape[1]

    @property
    def tau(self) -> float:
        return self.steps * self.tau_step

    @property
    def taus(self) -> np.ndarray:
        return np.arange(self.steps + 1) * self.tau_step

    def with_positions(self, positions) -> LatticeTrajectory:
        return LatticeTrajectory(self.mass, positions, self.tau_step)


def straight_line(mass, x_start, x_end, tau, steps) -> LatticeTrajectory:
    """The classical (on-shell) free path between fixed edges."""
    a, b = np.atleast_1d(np.asarray(x_start, float)), np.atleast_1d(np.asarray(x_end, float))
    frac = np.linspace(0.0, 1.0, steps + 1)[:, None]
    return LatticeTrajectory(mass, a + frac * (b - a), tau / steps)


@dataclass(frozen=True, eq=False)
class EventVector:
    """Readout events: positions (N + 1, D) and their imaginary times."""

    positions: np.ndarray
    taus: np.ndarray

    def __post_init__(self):
        pos = _as_points(self.positions)
        taus = np.asarray(self.taus, dtype=float)
        if pos.shape[0] != taus.shape[0] or pos.shape[0] < 1:
            raise ValueError("positions and taus must have the same non-zero length")
        if taus[0] != 0.0:
            raise ValueError("the first event sits at tau = 0")
        if np.any(np.diff(taus) <= 0):
            raise ValueError("event taus must be strictly increasing")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "taus", taus)

    @property
    def count(self) -> int:
        return self.positions.shape[0] - 1

    def __len__(self):
        return self.positions.shape[0]


class PathProbability(NamedTuple):
    original: float
    modified: float
    ratio: float


def _segment_actions(traj: LatticeTrajectory) -> np.ndarray:
    dx = np.diff(traj.positions, axis=0)
    return 0.5 * traj.mass * np.sum(dx * dx, axis=1) / traj.tau_step


def kinetic_action(traj: LatticeTrajectory) -> float:
    return float(np.sum(_segment_actions(traj)))


def _check_action(S):
    if S < 0:
        raise ValueError(f"action must be non-negative, got {S!r}")


def _check_alpha(alpha):
    if not (0.0 <= alpha <= 1.0):
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")


def event_count(S: float, constants: PhysicalConstants = NATURAL) -> float:
    """Real-valued number of events, S / (hbar ln 2)."""
    _check_action(S)
    return S / (constants.hbar * constants.bit_factor)


def original_probability(S: float, constants: PhysicalConstants = NATURAL) -> float:
    _check_action(S)
    return math.exp(-S / constants.hbar)


def modified_probability(S: float, alpha: float, constants: PhysicalConstants = NATURAL) -> float:
    _check_alpha(alpha)
    return 2.0 ** (-event_count(S, constants) * (1.0 - alpha))


def probability_ratio(S: float, alpha: float, constants: PhysicalConstants = NATURAL) -> float:
    _check_alpha(alpha)
    return 2.0 ** (event_count(S, constants) * alpha)


def path_probability(S: float, alpha: float, constants: PhysicalConstants = NATURAL) -> PathProbability:
    return PathProbability(
        original_probability(S, constants),
        modified_probability(S, alpha, constants),
        probability_ratio(S, alpha, constants),
    )


def contract_event_vector(v: EventVector, n_events: float, alpha: float) -> EventVector:
    """Scale every event position by 2**(-n_events * alpha); taus unchanged."""
    factor = 2.0 ** (-n_events * alpha)
    return EventVector(v.positions * factor, v.taus.copy())


def readout_events(traj: LatticeTrajectory, constants: PhysicalConstants = NATURAL) -> EventVector:
    """Emit one event each time the accumulated action crosses a multiple of hbar ln 2.

    Within a lattice segment the path moves uniformly, so action accrues
    linearly in tau and crossing points are linear interpolations.
    """
    quantum = constants.hbar * constants.bit_factor
    seg = _segment_actions(traj)
    cumulative = np.concatenate([[0.0], np.cumsum(seg)])
    # tolerance keeps S = n hbar ln2 from losing its last event to rounding
    n_events = int(math.floor(cumulative[-1] / quantum * (1 + 1e-12)))
    targets = quantum * np.arange(1, n_events + 1)
    targets = np.minimum(targets, cumulative[-1])

    k = np.searchsorted(cumulative, targets, side="left") - 1
    k = np.clip(k, 0, traj.steps - 1)
    frac = (targets - cumulative[k]) / seg[k]
    x = traj.positions[k] + frac[:, None] * (traj.positions[k + 1] - traj.positions[k])
    taus = (k + frac) * traj.tau_step

    return EventVector(
        np.vstack([traj.positions[:1], x]),
        np.concatenate([[0.0], taus]),
    )


# -- Monte Carlo propagator ---------------------------------------------------


def free_kernel(mass, displacement, tau, constants: PhysicalConstants = NATURAL):
    """Analytic free Euclidean kernel; ``displacement`` has shape (..., D)."""
    d = np.atleast_1d(np.asarray(displacement, dtype=float))
    dim = d.shape[-1]
    hbar = constants.hbar
    norm = (mass / (2.0 * math.pi * hbar * tau)) ** (dim / 2.0)
    return norm * np.exp(-mass * np.sum(d * d, axis=-1) / (2.0 * hbar * tau))


def brownian_bridge(rng, x_start, x_end, steps, tau_step, mass, size, constants=NATURAL):
    """Sample lattice paths pinned at both edges under the free Gaussian step measure.

    Returns an array of shape (size, steps + 1, D). Points are drawn in
    order from the exact conditional of x_{k+1} given x_k and the far edge.
    """
    a = np.atleast_1d(np.asarray(x_start, float))
    b = np.broadcast_to(np.asarray(x_end, float), (size, a.shape[0]))
    var_step = constants.hbar * tau_step / mass
    out = np.empty((size, steps + 1, a.shape[0]))
    out[:, 0] = a
    out[:, -1] = b
    for k in range(steps - 1):
        remaining = steps - k
        mean = out[:, k] + (b - out[:, k]) / remaining
        var = var_step * (remaining - 1) / remaining
        out[:, k + 1] = mean + math.sqrt(var) * rng.standard_normal(b.shape)
    return out


class KernelEstimate(NamedTuple):
    estimate: np.ndarray | float
    std_error: np.ndarray | float
    exact: np.ndarray | float


_BATCH = 10_000
_BOOTSTRAP = 200


def _mc_batch(seed, index, size, first, mass, tau_step, a, ends, constants):
    rng = np.random.default_rng(np.random.SeedSequence((seed, index)))
    sigma = math.sqrt(constants.hbar * tau_step / mass)
    # free walk from the start edge over the first half of the lattice
    steps = sigma * rng.standard_normal((size, first, a.shape[0]))
    x_mid = a + steps.sum(axis=1)
    tau_rest = (ends.tau_steps) * tau_step
    # analytic normalization of the bridge from x_mid to each end point
    return free_kernel(mass, ends.points[None, :, :] - x_mid[:, None, :], tau_rest, constants)


class _Ends(NamedTuple):
    points: np.ndarray
    tau_steps: int


def mc_propagator(
    mass: float,
    x_start,
    x_end,
    tau: float,
    steps: int,
    samples: int,
    seed: int,
    constants: PhysicalConstants = NATURAL,
    workers: int = 1,
) -> KernelEstimate:
    """Monte Carlo estimate of the free Euclidean kernel K(x_end, tau; x_start, 0).

    Each sample walks the first ``steps // 2`` lattice steps from
    ``x_start`` with exact Gaussian increments. The rest of the path is a
    Brownian bridge from that midpoint to ``x_end``. Its integral over the
    intermediate points is known in closed form, so each sample's weight
    is that analytic bridge normalization. The estimator is unbiased for
    every ``steps``.

    ``x_end`` may be a single point (D,) or a stack of points (n, D); the
    latter reuses the same walks for every end point. Standard errors come
    from a bootstrap over samples.
    """
    if not tau > 0:
        raise ValueError("tau must be positive")
    if steps < 2:
        raise ValueError("need at least 2 lattice steps")
    if samples < 100:
        raise ValueError("need at least 100 samples")
    if not mass > 0:
        raise ValueError("mass must be positive")

    a = np.atleast_1d(np.asarray(x_start, float))
    ends = np.asarray(x_end, float)
    single = ends.ndim <= 1
    ends = ends.reshape(-1, a.shape[0]) if not single else np.atleast_1d(ends)[None, :]
    if ends.shape[1] != a.shape[0]:
        raise ValueError("x_start and x_end dimensions differ")

    tau_step = tau / steps
    first = steps // 2
    spec = _Ends(ends, steps - first)

    sizes = [_BATCH] * (samples // _BATCH)
    if samples % _BATCH:
        sizes.append(samples % _BATCH)
    jobs = [(seed, i, n, first, mass, tau_step, a, spec, constants) for i, n in enumerate(sizes)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            chunks = list(pool.map(lambda j: _mc_batch(*j), jobs))
    else:
        chunks = [_mc_batch(*j) for j in jobs]
    weights = np.concatenate(chunks, axis=0)  # (samples, n_ends)

    estimate = weights.mean(axis=0)
    boot_rng = np.random.default_rng(np.random.SeedSequence((seed, 2**32 - 1)))
    boot = np.empty((_BOOTSTRAP, weights.shape[1]))
    for i in range(_BOOTSTRAP):
        counts = np.bincount(boot_rng.integers(0, samples, samples), minlength=samples)
        boot[i] = counts @ weights / samples
    std_error = boot.std(axis=0, ddof=1)
    exact = free_kernel(mass, ends - a, tau, constants)

    if single:
        return KernelEstimate(float(estimate[0]), float(std_error[0]), float(exact[0]))
    return KernelEstimate(estimate, std_error, exact)
