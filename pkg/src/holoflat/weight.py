"""Statistical weight W, site probability p and violation parameter alpha.

The weight obeys W = 2**(1 - alpha), and in the large-n limit
W**n = C(n, p n); taking logs, log2 W = H2(p) with H2 the binary entropy
in bits. We keep the branch p <= 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ConvergenceError",
    "EXACT_BINOMIAL_LIMIT",
    "WeightModel",
    "binary_entropy",
    "binomial_log2",
    "p_from_alpha",
    "verify_weight_asymptotics",
    "weight_from_alpha",
]

EXACT_BINOMIAL_LIMIT = 10_000


class ConvergenceError(RuntimeError):
    """A root search ran out of iterations; carries the last bracket."""

    def __init__(self, message, bracket):
        super().__init__(f"{message}; last bracket [{bracket[0]!r}, {bracket[1]!r}]")
        self.bracket = bracket


def _check_alpha(alpha):
    if not (0.0 <= alpha <= 1.0):
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")


def binary_entropy(p):
    """Binary entropy in bits, with 0 log 0 = 0. Accepts scalars or arrays."""
    p = np.asarray(p, dtype=float)
    if np.any((p < 0) | (p > 1)):
        raise ValueError("probability outside [0, 1]")
    q = 1.0 - p
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -np.where(p > 0, p * np.log2(p), 0.0) - np.where(q > 0, q * np.log2(q), 0.0)
    return float(h) if h.ndim == 0 else h


def weight_from_alpha(alpha: float) -> float:
    _check_alpha(alpha)
    return 2.0 ** (1.0 - alpha)


def p_from_alpha(alpha: float, tol: float = 1e-13, max_iter: int = 200) -> float:
    """Solve H2(p) = 1 - alpha for p in [0, 1/2] by bisection.

    H2 is strictly increasing on [0, 1/2], so the bracket always holds a
    single root. Stops once the residual is below ``tol``.
    """
    _check_alpha(alpha)
    if tol <= 0:
        raise ValueError("tol must be positive")
    target = 1.0 - alpha
    if alpha == 0.0:
        return 0.5
    if alpha == 1.0:
        return 0.0
    lo, hi = 0.0, 0.5
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        resid = binary_entropy(mid) - target
        if abs(resid) < tol:
            return mid
        if resid < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 2.0 * np.finfo(float).eps * hi:
            # bracket exhausted at double precision
            break
    raise ConvergenceError(f"p_from_alpha({alpha!r}) did not reach tol={tol!r}", (lo, hi))


def binomial_log2(n: int, k: int) -> float:
    """log2 C(n, k): exact integers up to n = 10**4, log-gamma above."""
    n, k = int(n), int(k)
    if n < 0 or not (0 <= k <= n):
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    if n <= EXACT_BINOMIAL_LIMIT:
        return _binomial_log2_exact(n, k)
    return _binomial_log2_lgamma(n, k)


def _binomial_log2_exact(n, k):
    # math.log2 is accurate for arbitrarily large ints
    return math.log2(math.comb(n, k))


def _binomial_log2_lgamma(n, k):
    return (math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)) / math.log(2.0)


@dataclass(frozen=True)
class WeightModel:
    alpha: float
    weight: float
    site_probability: float

    @classmethod
    def from_alpha(cls, alpha: float, tol: float = 1e-13) -> WeightModel:
        return cls(alpha, weight_from_alpha(alpha), p_from_alpha(alpha, tol))

    def __post_init__(self):
        _check_alpha(self.alpha)
        if not (1.0 <= self.weight <= 2.0):
            raise ValueError(f"weight must lie in [1, 2], got {self.weight!r}")
        if not (0.0 <= self.site_probability <= 0.5):
            raise ValueError("site_probability must lie in [0, 1/2]")


def verify_weight_asymptotics(model: WeightModel, n: int) -> float:
    """|(1/n) log2 C(n, round(p n)) - log2 W| for n event copies.

    Rounding is Python's round-half-to-even. The residual decays like
    log(n)/n.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    k = round(model.site_probability * n)
    return abs(binomial_log2(n, k) / n - math.log2(model.weight))
