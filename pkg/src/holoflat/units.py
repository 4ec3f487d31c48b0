"""Physical constants and a small dimension-tagged scalar type.

Only the handful of dimensions used by this package are supported. A
dimension is an exponent triple over (length, time, mass); named tags map
onto those triples. Values are plain floats carrying a tag and the unit
system they are expressed in.

Natural units here mean hbar = c = 1 with a chosen length scale L (default
1 m). The natural time unit is then L/c, the natural mass unit hbar/(L c),
and so on.

    >>> q = Quantity(1.0, "time", NATURAL_UNITS)
    >>> float(convert(q, SI_UNITS))  # doctest: +ELLIPSIS
    3.3356409519815...e-09
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

__all__ = [
    "DIMENSIONS",
    "DimensionError",
    "NATURAL",
    "NATURAL_UNITS",
    "PhysicalConstants",
    "Quantity",
    "SI",
    "SI_UNITS",
    "UnitMode",
    "UnitSystem",
    "convert",
]


class DimensionError(ValueError):
    """Raised on unknown dimension tags or incompatible arithmetic."""


# (length, time, mass) exponents
DIMENSIONS: dict[str, tuple[int, int, int]] = {
    "dimensionless": (0, 0, 0),
    "length": (1, 0, 0),
    "time": (0, 1, 0),
    "mass": (0, 0, 1),
    "speed": (1, -1, 0),
    "area": (2, 0, 0),
    "curvature": (-2, 0, 0),
    "energy": (2, -2, 1),
    "action": (2, -1, 1),
    "tension": (0, -2, 1),  # action / (area * time)
    "newton_3d": (1, 0, -1),
    "inverse_length": (-1, 0, 0),
    "inverse_area": (-2, 0, 0),
    "inverse_volume": (-3, 0, 0),
}

_TAG_OF = {}
for _name, _exp in DIMENSIONS.items():
    _TAG_OF.setdefault(_exp, _name)


def _dims(tag) -> tuple[int, int, int]:
    if isinstance(tag, tuple):
        if len(tag) != 3:
            raise DimensionError(f"dimension exponent triple expected, got {tag!r}")
        return tuple(int(e) for e in tag)
    try:
        return DIMENSIONS[tag]
    except KeyError:
        known = ", ".join(sorted(DIMENSIONS))
        raise DimensionError(f"unknown dimension tag {tag!r} (known: {known})") from None


@dataclass(frozen=True)
class PhysicalConstants:
    """Constants in one consistent unit system.

    ``newton_3d`` is the three-dimensional gravitational constant entering
    the Brown-Henneaux central charge; it has no measured value, so it is a
    free input defaulting to 1 in whatever system the instance uses.
    ``planck_time`` is stored rather than derived.
    """

    hbar: float
    c: float
    newton_3d: float = 1.0
    planck_time: float = 5.391247e-44
    bit_factor: float = math.log(2.0)

    def __post_init__(self):
        for name in ("hbar", "c", "newton_3d", "planck_time"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and positive, got {value!r}")
        if self.bit_factor != math.log(2.0):
            raise ValueError("bit_factor is fixed to ln 2")

    @property
    def planck_constant(self) -> float:
        return 2.0 * math.pi * self.hbar

    def with_overrides(self, **kwargs) -> PhysicalConstants:
        return replace(self, **kwargs)


SPEED_OF_LIGHT = 299_792_458.0
HBAR_SI = 1.054571817e-34

SI = PhysicalConstants(hbar=HBAR_SI, c=SPEED_OF_LIGHT)
# Planck time expressed in natural time units (1 m / c).
NATURAL = PhysicalConstants(hbar=1.0, c=1.0, planck_time=SI.planck_time * SPEED_OF_LIGHT)


class UnitMode(enum.Enum):
    NATURAL = "natural"
    SI = "si"


@dataclass(frozen=True)
class UnitSystem:
    mode: UnitMode = UnitMode.NATURAL
    length_scale: float = 1.0  # metres per natural length unit
    hbar_si: float = HBAR_SI
    c_si: float = SPEED_OF_LIGHT

    def __post_init__(self):
        if not self.length_scale > 0:
            raise ValueError("length_scale must be positive")

    def to_si_factor(self, dims) -> float:
        """Multiply a value in this system by the factor to get SI."""
        if self.mode is UnitMode.SI:
            return 1.0
        a, b, m = _dims(dims)
        L = self.length_scale
        return L**a * (L / self.c_si) ** b * (self.hbar_si / (L * self.c_si)) ** m

    def constants(self) -> PhysicalConstants:
        if self.mode is UnitMode.SI:
            return SI
        return replace(NATURAL, planck_time=SI.planck_time / self.to_si_factor("time"))


NATURAL_UNITS = UnitSystem(UnitMode.NATURAL)
SI_UNITS = UnitSystem(UnitMode.SI)


class Quantity(float):
    """A float with a dimension tag and a unit system.

    Addition and subtraction require matching dimensions and systems;
    multiplication and division combine exponents. Plain numbers count as
    dimensionless.
    """

    __slots__ = ("dims", "system")

    def __new__(cls, value, dims="dimensionless", system: UnitSystem = NATURAL_UNITS):
        obj = super().__new__(cls, value)
        obj.dims = _dims(dims)
        obj.system = system
        return obj

    @property
    def tag(self) -> str | None:
        return _TAG_OF.get(self.dims)

    def __repr__(self):
        label = self.tag or str(self.dims)
        return f"Quantity({float(self)!r}, {label!r}, {self.system.mode.value})"

    def _coerce(self, other) -> Quantity:
        if isinstance(other, Quantity):
            if other.system != self.system:
                raise DimensionError("cannot mix quantities from different unit systems")
            return other
        return Quantity(other, "dimensionless", self.system)

    def _same_dims(self, other, op) -> Quantity:
        other = self._coerce(other)
        if other.dims != self.dims:
            raise DimensionError(
                f"cannot {op} {self.tag or self.dims} and {other.tag or other.dims}"
            )
        return other

    def __add__(self, other):
        other = self._same_dims(other, "add")
        return Quantity(float(self) + float(other), self.dims, self.system)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._same_dims(other, "subtract")
        return Quantity(float(self) - float(other), self.dims, self.system)

    def __rsub__(self, other):
        other = self._same_dims(other, "subtract")
        return Quantity(float(other) - float(self), self.dims, self.system)

    def __neg__(self):
        return Quantity(-float(self), self.dims, self.system)

    def __mul__(self, other):
        other = self._coerce(other)
        dims = tuple(a + b for a, b in zip(self.dims, other.dims))
        return Quantity(float(self) * float(other), dims, self.system)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        dims = tuple(a - b for a, b in zip(self.dims, other.dims))
        return Quantity(float(self) / float(other), dims, self.system)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        dims = tuple(b - a for a, b in zip(self.dims, other.dims))
        return Quantity(float(other) / float(self), dims, self.system)

    def __pow__(self, exponent):
        if not float(exponent).is_integer():
            raise DimensionError("only integer powers keep dimensions integral")
        n = int(exponent)
        return Quantity(float(self) ** n, tuple(n * a for a in self.dims), self.system)

    def sqrt(self) -> Quantity:
        if any(a % 2 for a in self.dims):
            raise DimensionError(f"square root of {self.tag or self.dims} is not supported")
        return Quantity(math.sqrt(float(self)), tuple(a // 2 for a in self.dims), self.system)


def convert(q: Quantity, target: UnitSystem) -> Quantity:
    """Re-express ``q`` in ``target``; the dimension tag is preserved."""
    if not isinstance(q, Quantity):
        raise DimensionError("convert() needs a Quantity carrying a dimension tag")
    _dims(q.dims)
    si_value = float(q) * q.system.to_si_factor(q.dims)
    return Quantity(si_value / target.to_si_factor(q.dims), q.dims, target)
