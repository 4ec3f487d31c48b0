"""Metric slicings, horizon radius, Wick rotation, scale factors and the Lambda estimate.

Conventions:

* the de Sitter phase uses a(t) = exp(c t / R_h), H = c / R_h and
  Lambda = H**2 / c**2 = 1 / R_h**2;
* the Wick rotation is a sign flip recorded in :class:`Phase`; magnitudes
  stay real;
* the order-of-magnitude estimate Lambda ~ alpha**2 / (c t_ML)**2 is
  reported bare and with the coefficient pi**2 / 4 that follows from
  a(t) = 2**(alpha N_t), N_t = E t / (hbar ln 2) and E = h / (4 t_ML).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np
from scipy import integrate

from .chtn import CHTNState, tension_alpha
from .units import SI, SI_UNITS, PhysicalConstants, Quantity, UnitSystem

__all__ = [
    "CosmologyParams",
    "LambdaEstimate",
    "MLEstimate",
    "Phase",
    "QuadratureError",
    "ScaleFactorSeries",
    "ds_slicing_check",
    "flat_lambda",
    "flat_slicing_check",
    "horizon_from_contraction",
    "horizon_radius_quadrature",
    "infer_alpha",
    "lambda_ds_estimate",
    "lloyd_estimate",
    "margolus_levitin",
    "observed_lambda",
    "scale_factor_ds",
    "scale_factor_euclidean",
    "scale_factor_series",
    "wick_rotate",
]

DEFAULT_MASS_UNIVERSE = 1e53  # kg


class QuadratureError(RuntimeError):
    pass


class Phase(enum.Enum):
    FLAT = "euclidean/flat"
    DE_SITTER = "lorentzian/de-sitter"


# -- line elements -------------------------------------------------------------


def _poincare_ads(r_ads, c, t, x, y, dt, dx, dy):
    return dy**2 + np.exp(-2.0 * y / r_ads) * (-(c**2) * dt**2 + dx**2)


def _minkowski(c, dt, dx, dy):
    return -(c**2) * dt**2 + dx**2 + dy**2


def flat_slicing_check(r_ads: float, grid, c: float = 1.0) -> float:
    """Max relative gap between the Poincare-AdS and Minkowski line elements.

    ``grid`` rows are (t, x, y, dt, dx, dy). The two forms coincide in the
    large-radius limit; at finite ``r_ads`` the gap is about 2|y|/r_ads. It
    vanishes exactly at y = 0. Residuals are scaled by the Euclidean size
    c**2 dt**2 + dx**2 + dy**2 of the displacement.
    """
    if not r_ads > 0:
        raise ValueError("r_ads must be positive")
    g = np.atleast_2d(np.asarray(grid, dtype=float))
    t, x, y, dt, dx, dy = g.T
    lhs = _poincare_ads(r_ads, c, t, x, y, dt, dx, dy)
    rhs = _minkowski(c, dt, dx, dy)
    scale = c**2 * dt**2 + dx**2 + dy**2
    scale = np.where(scale > 0, scale, 1.0)
    return float(np.max(np.abs(lhs - rhs) / scale))


def ds_slicing_check(r_h: float, grid, c: float = 1.0) -> float:
    """Max relative gap between the Cartesian and polar flat-slicing de Sitter forms.

    ``grid`` rows are (t, r, theta, dt, dr, dtheta). The polar displacement
    is mapped to Cartesian components through the Jacobian at (r, theta).
    """
    g = np.atleast_2d(np.asarray(grid, dtype=float))
    t, r, th, dt, dr, dth = g.T
    a2 = np.exp(2.0 * c * t / r_h)
    dx = np.cos(th) * dr - r * np.sin(th) * dth
    dy = np.sin(th) * dr + r * np.cos(th) * dth
    cart = -(c**2) * dt**2 + a2 * (dx**2 + dy**2)
    polar = -(c**2) * dt**2 + a2 * (dr**2 + r**2 * dth**2)
    scale = c**2 * dt**2 + a2 * (dr**2 + r**2 * dth**2)
    scale = np.where(scale > 0, scale, 1.0)
    return float(np.max(np.abs(cart - polar) / scale))


def horizon_radius_quadrature(r_h: float, t: float = 0.0, tol: float = 1e-10, c: float = 1.0) -> float:
    """Proper distance to the event horizon, a(t) * int_t^inf c dt' / a(t').

    The integral is done numerically up to 40 e-folds past ``t`` and the
    remaining exponential tail is added in closed form. a(t)/a(t') is
    evaluated as one exponential so large ``t`` cannot overflow.
    """
    if not r_h > 0:
        raise ValueError("r_h must be positive")
    rate = c / r_h
    t_cut = t + 40.0 / rate

    def integrand(tp):
        return c * math.exp(-rate * (tp - t))

    value, err, info = integrate.quad(integrand, t, t_cut, epsabs=0.0, epsrel=max(tol * 1e-2, 1e-13),
                                      limit=200, full_output=True)[:3]
    if err > tol * abs(value):
        raise QuadratureError(
            f"horizon quadrature error estimate {err:.3e} exceeds tolerance "
            f"({info.get('neval', '?')} evaluations)"
        )
    tail = c / rate * math.exp(-rate * (t_cut - t))
    return value + tail


def horizon_from_contraction(epsilon: float, r_ads: float) -> float:
    return epsilon * r_ads


# -- Wick rotation -------------------------------------------------------------


@dataclass(frozen=True)
class CosmologyParams:
    epsilon: float
    r_ads: float
    t2_flat: float
    alpha: float = 0.0
    site_area: float = 1.0
    r_h: float | None = None
    lambda_: float | None = None
    phase: Phase = Phase.FLAT
    tension: float | None = None

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if not (self.r_ads > 0 and self.t2_flat > 0 and self.site_area > 0):
            raise ValueError("r_ads, t2_flat and site_area must be positive")
        if self.phase is Phase.DE_SITTER and self.lambda_ is not None and self.lambda_ < 0:
            raise ValueError("de Sitter phase needs a non-negative Lambda")

    def chtn_state(self) -> CHTNState:
        return CHTNState(
            area_tn=0.0,
            alpha=self.alpha,
            site_area=self.site_area,
            t2_flat=self.t2_flat,
            r_ads=self.r_ads,
            epsilon=self.epsilon,
            epsilon_ceiling=max(1.0, 2 * self.epsilon),
        )


def wick_rotate(params: CosmologyParams, constants: PhysicalConstants = SI) -> CosmologyParams:
    """Rotate flat-phase parameters into the de Sitter phase.

    The flat phase carries Lambda = -eps**2 / (c T2)**2. Rotation flips the
    sign and keeps |T2|. The rotated horizon follows from Lambda = 1/R_h**2.
    The negative tension of the deviation term is carried across unchanged.
    """
    if params.phase is not Phase.FLAT:
        raise ValueError("wick_rotate maps the flat phase to de Sitter only")
    magnitude = params.epsilon**2 / (constants.c * params.t2_flat) ** 2
    if params.alpha > 0:
        tension = tension_alpha(params.chtn_state(), constants)
    else:
        tension = 0.0
    return replace(
        params,
        lambda_=magnitude,
        r_h=1.0 / math.sqrt(magnitude),
        phase=Phase.DE_SITTER,
        tension=tension,
    )


def flat_lambda(params: CosmologyParams, constants: PhysicalConstants = SI) -> float:
    return -(params.epsilon**2) / (constants.c * params.t2_flat) ** 2


# -- scale factors -------------------------------------------------------------


def scale_factor_euclidean(n_tau: float, alpha: float) -> float:
    if n_tau < 0:
        raise ValueError("event count must be non-negative")
    return 2.0 ** (-n_tau * alpha)


def scale_factor_ds(n_t: float, alpha: float) -> float:
    if n_t < 0:
        raise ValueError("event count must be non-negative")
    return 2.0 ** (n_t * alpha)


@dataclass(frozen=True, eq=False)
class ScaleFactorSeries:
    counts: np.ndarray
    factors: np.ndarray
    phase: Phase

    def __post_init__(self):
        steps = np.diff(self.factors)
        if self.phase is Phase.FLAT and np.any(steps > 0):
            raise ValueError("Euclidean scale factor must not increase")
        if self.phase is Phase.DE_SITTER and np.any(steps < 0):
            raise ValueError("de Sitter scale factor must not decrease")


def scale_factor_series(counts, alpha: float, phase: Phase) -> ScaleFactorSeries:
    counts = np.sort(np.asarray(counts, dtype=float))
    if np.any(counts < 0):
        raise ValueError("event counts must be non-negative")
    sign = -1.0 if phase is Phase.FLAT else 1.0
    return ScaleFactorSeries(counts, np.exp2(sign * counts * alpha), phase)


# -- Margolus-Levitin and Lambda -----------------------------------------------


def margolus_levitin(energy: float, constants: PhysicalConstants = SI,
                     system: UnitSystem = SI_UNITS) -> Quantity:
    if not energy > 0:
        raise ValueError(f"energy must be positive, got {energy!r}")
    return Quantity(constants.planck_constant / (4.0 * energy), "time", system)


@dataclass(frozen=True)
class MLEstimate:
    energy: float
    t_ml: Quantity
    velocity: float
    mass_universe: float
    c: float

    @property
    def coefficient(self) -> float:
        """t_ML (v/c)**2, the v-independent prefactor of the (c/v)**2 law."""
        return float(self.t_ml) * (self.velocity / self.c) ** 2


def lloyd_estimate(velocity: float, mass_universe: float = DEFAULT_MASS_UNIVERSE,
                   constants: PhysicalConstants = SI) -> MLEstimate:
    """Margolus-Levitin time for the CM kinetic energy M v**2 / 2."""
    if not velocity > 0:
        raise ValueError("velocity must be positive")
    if velocity > constants.c:
        raise ValueError(f"velocity {velocity!r} exceeds c = {constants.c!r}")
    if not mass_universe > 0:
        raise ValueError("mass_universe must be positive")
    energy = 0.5 * mass_universe * velocity**2
    return MLEstimate(energy, margolus_levitin(energy, constants), velocity, mass_universe, constants.c)


class LambdaEstimate(NamedTuple):
    order_form: Quantity
    coefficient_form: Quantity


def lambda_ds_estimate(alpha: float, t_ml: float, constants: PhysicalConstants = SI,
                       system: UnitSystem = SI_UNITS) -> LambdaEstimate:
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    if not t_ml > 0:
        raise ValueError("t_ml must be positive")
    order = alpha**2 / (constants.c * float(t_ml)) ** 2
    return LambdaEstimate(
        Quantity(order, "curvature", system),
        Quantity(math.pi**2 / 4.0 * order, "curvature", system),
    )


def infer_alpha(lambda_obs: float, t_ml: float, constants: PhysicalConstants = SI) -> float:
    """Invert the coefficient form: alpha = (2/pi) c t_ML sqrt(Lambda_obs)."""
    if not (lambda_obs > 0 and t_ml > 0):
        raise ValueError("lambda_obs and t_ml must be positive")
    return 2.0 / math.pi * constants.c * float(t_ml) * math.sqrt(float(lambda_obs))


def observed_lambda(planck_fraction: float = 1e-122, constants: PhysicalConstants = SI) -> float:
    """Lambda_obs = fraction / (c t_P)**2."""
    return planck_fraction / (constants.c * constants.planck_time) ** 2
