"""Numerics for inexact bulk quantum mechanics and its de Sitter dual.

Submodules:

- :mod:`holoflat.units`      constants and dimension-tagged scalars
- :mod:`holoflat.weight`     statistical weight W, site probability p, binomial checks
- :mod:`holoflat.chtn`       network entropy, action, tensions, central charges
- :mod:`holoflat.paths`      lattice paths, event readout, modified probabilities, MC kernel
- :mod:`holoflat.manybody`   centre-of-mass driven modification of several particles
- :mod:`holoflat.cosmology`  slicings, horizon, Wick rotation, scale factors, Lambda
- :mod:`holoflat.cli`        batch command-line front end
"""

from .units import NATURAL, SI, PhysicalConstants, Quantity, UnitSystem, convert
from .weight import WeightModel, binary_entropy, binomial_log2, p_from_alpha, weight_from_alpha

__version__ = "0.1.0"

__all__ = [
    "NATURAL",
    "SI",
    "PhysicalConstants",
    "Quantity",
    "UnitSystem",
    "WeightModel",
    "binary_entropy",
    "binomial_log2",
    "convert",
    "p_from_alpha",
    "weight_from_alpha",
]
