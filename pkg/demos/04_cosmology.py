"""
From the Margolus-Levitin time to alpha
=======================================

The de Sitter scale factor grows as 2**(alpha N_t) with N_t counting
events at the CM kinetic energy E. The Hubble rate is then alpha E/hbar.
With E = h/(4 t_ML) this gives Lambda = (pi**2/4) alpha**2/(c t_ML)**2.
Taking the matter content of the Universe moving at v gives t_ML.
Inverting the observed Lambda then gives alpha.
"""

from holoflat.cosmology import (
    CosmologyParams,
    horizon_radius_quadrature,
    infer_alpha,
    lambda_ds_estimate,
    lloyd_estimate,
    observed_lambda,
    wick_rotate,
)
from holoflat.units import SI

for frac in (1.0, 0.1, 0.01):
    est = lloyd_estimate(frac * SI.c, mass_universe=1e53)
    lam_obs = observed_lambda(1e-122)
    alpha = infer_alpha(lam_obs, est.t_ml)
    print(f"v = {frac:5.2f} c   t_ML = {float(est.t_ml):.3e} s   alpha = {alpha:.3e}")

lam = lambda_ds_estimate(1e-3, 1e-40)
print(f"alpha = 1e-3, t_ML = 1e-40 s: Lambda ~ {float(lam.order_form):.3e} (x pi^2/4 = {float(lam.coefficient_form):.3e}) 1/m^2")

###############################################################################
# The Wick rotation flips the sign of Lambda = eps**2/(c T2)**2 and gives the
# horizon radius 1/sqrt(Lambda); quadrature of the light-travel integral
# reproduces it.

ds = wick_rotate(CosmologyParams(epsilon=1e-3, r_ads=1.0, t2_flat=1e9, alpha=0.1))
print(f"Lambda = {ds.lambda_:.3e} 1/m^2, R_h = {ds.r_h:.4e} m, "
      f"quadrature {horizon_radius_quadrature(ds.r_h, 0.0, c=SI.c):.4e} m, tension {ds.tension:.3e}")
