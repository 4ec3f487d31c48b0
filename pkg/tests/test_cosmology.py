import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from holoflat.chtn import tension_alpha
from holoflat.cosmology import (
    CosmologyParams,
    Phase,
    QuadratureError,
    ds_slicing_check,
    flat_lambda,
    flat_slicing_check,
    horizon_from_contraction,
    horizon_radius_quadrature,
    infer_alpha,
    lambda_ds_estimate,
    lloyd_estimate,
    margolus_levitin,
    observed_lambda,
    scale_factor_ds,
    scale_factor_euclidean,
    scale_factor_series,
    wick_rotate,
)
from holoflat.units import NATURAL, SI


def displacement_grid(rng, n, y_scale=1.0):
    g = rng.uniform(-1, 1, size=(n, 6))
    g[:, 2] *= y_scale
    return g


def test_flat_slicing_pure_time_and_y_at_origin():
    assert flat_slicing_check(10.0, [[0.3, 0.1, 0.0, 1.0, 0.0, 0.0]]) == 0.0
    assert flat_slicing_check(10.0, [[0.3, 0.1, 0.0, 0.0, 0.0, 1.0]]) == 0.0
    assert flat_slicing_check(1e12, [[0.0, 0.0, 0.7, 1.0, 0.0, 0.0]]) < 1e-10


def test_flat_slicing_random_large_radius():
    g = displacement_grid(np.random.default_rng(0), 1000)
    assert flat_slicing_check(1e12, g) < 1e-10


def test_flat_slicing_gap_closes_like_one_over_radius():
    g = displacement_grid(np.random.default_rng(1), 500)
    r1, r2 = flat_slicing_check(1e3, g), flat_slicing_check(1e4, g)
    assert r1 / r2 == pytest.approx(10.0, rel=1e-2)


def test_ds_polar_slicing():
    rng = np.random.default_rng(2)
    g = rng.uniform(0.1, 2.0, size=(1000, 6))
    assert ds_slicing_check(3.0, g) < 1e-12


@pytest.mark.parametrize("r_h", [1.0, 3.5])
@pytest.mark.parametrize("t", [0.0, 1.0, 5.0])
def test_horizon_quadrature(r_h, t):
    assert horizon_radius_quadrature(r_h, t) == pytest.approx(r_h, rel=1e-6)


def test_horizon_t_independence():
    vals = [horizon_radius_quadrature(2.2, t) for t in np.linspace(0, 20, 5)]
    assert max(vals) - min(vals) < 1e-6 * 2.2


def test_horizon_si_scale():
    r_h = 1.6e26
    assert horizon_radius_quadrature(r_h, 4.3e17, c=SI.c) == pytest.approx(r_h, rel=1e-9)


def test_horizon_tolerance_failure():
    with pytest.raises(QuadratureError):
        horizon_radius_quadrature(1.0, 0.0, tol=1e-20)


def test_wick_rotation_examples():
    flat = CosmologyParams(epsilon=1e-3, r_ads=1.0, t2_flat=1.0)
    ds = wick_rotate(flat, NATURAL)
    assert ds.lambda_ == pytest.approx(1e-6, rel=1e-14)
    assert flat_lambda(flat, NATURAL) == pytest.approx(-1e-6, rel=1e-14)
    assert ds.phase is Phase.DE_SITTER and ds.t2_flat == flat.t2_flat
    doubled = wick_rotate(CosmologyParams(epsilon=2e-3, r_ads=1.0, t2_flat=1.0), NATURAL)
    assert doubled.lambda_ / ds.lambda_ == pytest.approx(4.0, rel=1e-14)
    with pytest.raises(ValueError):
        wick_rotate(ds, NATURAL)


def test_wick_horizon_consistency_chain():
    eps, ct2 = 1e-3, 5.0
    r_ads = ct2 / eps**2
    ds = wick_rotate(CosmologyParams(eps, r_ads, ct2), NATURAL)
    assert ds.r_h == pytest.approx(ct2 / eps, rel=1e-14)
    assert ds.r_h == pytest.approx(horizon_from_contraction(eps, r_ads), rel=1e-14)
    assert 1.0 / ds.r_h**2 == pytest.approx(ds.lambda_, rel=1e-14)


@given(st.floats(1e-6, 1.0), st.floats(1e-3, 1e3), st.floats(1e-3, 1e3))
def test_tension_invariant_across_rotation(alpha, area, t2):
    flat = CosmologyParams(1e-3, 1.0, t2, alpha=alpha, site_area=area)
    ds = wick_rotate(flat, SI)
    assert ds.tension == tension_alpha(flat.chtn_state(), SI)
    assert ds.tension < 0


def test_scale_factor_examples():
    assert scale_factor_euclidean(10, 0.1) == pytest.approx(0.5, rel=1e-15)
    assert scale_factor_euclidean(0, 0.4) == 1.0
    assert all(scale_factor_euclidean(n, 0.0) == 1.0 for n in (0, 3, 1e6))
    assert scale_factor_ds(10, 0.1) == pytest.approx(2.0, rel=1e-15)
    assert scale_factor_ds(3, 1.0) == 8.0


def test_scale_factor_product_identity():
    rng = np.random.default_rng(3)
    for n, a in zip(rng.uniform(0, 100, 1000), rng.uniform(0, 1, 1000)):
        assert scale_factor_ds(n, a) * scale_factor_euclidean(n, a) == pytest.approx(1.0, rel=4 * np.finfo(float).eps, abs=0)


def test_scale_factor_series_monotone():
    counts = np.linspace(0, 50, 26)
    eu = scale_factor_series(counts, 0.2, Phase.FLAT)
    ds = scale_factor_series(counts, 0.2, Phase.DE_SITTER)
    assert np.all(np.diff(eu.factors) < 0) and np.all(np.diff(ds.factors) > 0)
    np.testing.assert_allclose(eu.factors * ds.factors, 1.0, rtol=1e-15)


def test_margolus_levitin():
    h = SI.planck_constant
    assert float(margolus_levitin(h / 4)) == pytest.approx(1.0, rel=1e-15)
    assert float(margolus_levitin(1.0)) == pytest.approx(1.6565e-34, rel=1e-4)
    assert float(margolus_levitin(2.0)) == pytest.approx(float(margolus_levitin(1.0)) / 2, rel=1e-15)
    assert margolus_levitin(1.0).tag == "time"
    with pytest.raises(ValueError):
        margolus_levitin(0.0)


def test_lloyd_estimate():
    est = lloyd_estimate(SI.c, 1e53)
    assert float(est.t_ml) == pytest.approx(3.7e-104, rel=0.01)
    assert 1e-104 <= float(est.t_ml) <= 1e-100
    slow = lloyd_estimate(SI.c / 10, 1e53)
    assert float(slow.t_ml) / float(est.t_ml) == pytest.approx(100.0, rel=1e-12)
    assert slow.coefficient == pytest.approx(est.coefficient, rel=1e-12)
    with pytest.raises(ValueError):
        lloyd_estimate(1.01 * SI.c)


def test_lambda_estimate_forms():
    ct = 1.0 / SI.c  # c t_ML = 1 m
    lam = lambda_ds_estimate(0.0, ct)
    assert lam.order_form == 0.0 and lam.coefficient_form == 0.0
    lam = lambda_ds_estimate(1.0, ct)
    assert float(lam.order_form) == pytest.approx(1.0, rel=1e-14)
    assert float(lam.coefficient_form) == pytest.approx(math.pi**2 / 4, rel=1e-14)
    assert lam.order_form.tag == "curvature"
    ratio = lambda_ds_estimate(0.02, 3e-5).order_form / lambda_ds_estimate(0.01, 3e-5).order_form
    assert float(ratio) == pytest.approx(4.0, rel=1e-14)


def test_lambda_coefficient_chain_oracle():
    # a(t) = 2**(alpha N_t) with N_t = E t/(hbar ln 2) gives H = alpha E / hbar
    alpha, t_ml = 0.3, 2.0e-3
    energy = SI.planck_constant / (4 * t_ml)
    t = np.array([0.0, 1e-3])
    log_a = alpha * energy * t / (SI.hbar * math.log(2)) * math.log(2)
    hubble = np.diff(log_a)[0] / np.diff(t)[0]
    lam = lambda_ds_estimate(alpha, t_ml)
    assert float(lam.coefficient_form) == pytest.approx(hubble**2 / SI.c**2, rel=1e-12)


def test_infer_alpha():
    t_ml = lloyd_estimate(SI.c, 1e53).t_ml
    lam_obs = observed_lambda(1e-122)
    assert lam_obs == pytest.approx(1e-122 / (SI.c * 5.391247e-44) ** 2, rel=1e-15)
    alpha = infer_alpha(lam_obs, t_ml)
    # (2/pi) (t_ML/t_P) 1e-61 = 0.63662 * 6.8374e-61 * 1e-61
    assert alpha == pytest.approx(4.3529e-122, rel=1e-4)
    assert 1e-122 <= alpha <= 1e-119
    assert infer_alpha(4 * lam_obs, t_ml) == pytest.approx(2 * alpha, rel=1e-14)


@pytest.mark.parametrize("alpha", [1e-6, 1e-3, 0.1, 1.0])
def test_infer_alpha_round_trip(alpha):
    t_ml = 3.7e-104
    lam = lambda_ds_estimate(alpha, t_ml).coefficient_form
    assert infer_alpha(lam, t_ml) == pytest.approx(alpha, rel=1e-12)
