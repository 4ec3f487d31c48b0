"""Exit criteria for the package, one test per criterion.

Run ``pytest tests/test_acceptance.py`` to see the PASS/FAIL table in the
terminal summary.
"""

import filecmp
import math

import numpy as np
import pytest

from holoflat import cli
from holoflat.cosmology import (
    horizon_radius_quadrature,
    infer_alpha,
    lambda_ds_estimate,
    lloyd_estimate,
    observed_lambda,
    scale_factor_ds,
    scale_factor_euclidean,
)
from holoflat.manybody import ParticleSystem, cm_modification_factor, cm_trajectory, modify_system
from holoflat.paths import (
    EventVector,
    contract_event_vector,
    kinetic_action,
    mc_propagator,
    modified_probability,
    original_probability,
    straight_line,
)
from holoflat.units import SI
from holoflat.weight import WeightModel, verify_weight_asymptotics

EPS = np.finfo(float).eps
LN2 = math.log(2.0)


def test_01_weight_baseline(criterion):
    with criterion(1, "alpha = 0 gives W = 2 and p = 1/2 exactly", 1.0):
        model = WeightModel.from_alpha(0.0)
        assert model.weight == 2.0
        assert model.site_probability == 0.5


def test_02_binomial_asymptotics(criterion):
    with criterion(2, "binomial residual < 1e-3 at n = 10^4 for alpha in {0, .25, .5}", 10.0):
        for alpha in (0.0, 0.25, 0.5):
            residual = verify_weight_asymptotics(WeightModel.from_alpha(alpha), 10_000)
            assert residual < 1e-3, (alpha, residual)


def test_03_path_integral_identity(criterion):
    with criterion(3, "exp(-S/hbar) = 2^(-S/(hbar ln2)) to 1e-12 on 1000 points", 1.0):
        grid = np.linspace(0.0, 50.0, 1000)
        worst = max(abs(original_probability(s) - 2.0 ** (-s / LN2)) / original_probability(s) for s in grid)
        assert worst < 1e-12


def test_04_mc_propagator(criterion):
    with criterion(4, "MC kernel within 3 SE and 2% of analytic (ends 0, 1, 2)", 60.0):
        for end in (0.0, 1.0, 2.0):
            est = mc_propagator(1.0, [0.0], [end], 1.0, 256, 100_000, seed=2024 + int(end))
            assert abs(est.estimate - est.exact) <= 3 * est.std_error, (end, est)
            assert abs(est.estimate / est.exact - 1.0) < 0.02, (end, est)


def test_05_contraction_identity(criterion):
    with criterion(5, "p~ g~ = p g to 1e-12 on 100 vectors; composition to machine precision", 1.0):
        rng = np.random.default_rng(5)
        for _ in range(100):
            n = int(rng.integers(1, 12))
            dim = int(rng.integers(1, 4))
            taus = np.concatenate([[0.0], np.cumsum(rng.uniform(0.05, 1.0, n))])
            v = EventVector(rng.normal(size=(n + 1, dim)), taus)
            n_tau, alpha = rng.uniform(0, 40), rng.uniform(0, 1)
            S = n_tau * LN2
            out = contract_event_vector(v, n_tau, alpha)
            lhs = modified_probability(S, alpha) * out.positions
            rhs = original_probability(S) * v.positions
            assert np.linalg.norm(lhs - rhs) < 1e-12 * np.linalg.norm(rhs)

            n1, n2 = rng.uniform(0, 20, 2)
            twice = contract_event_vector(contract_event_vector(v, n1, alpha), n2, alpha)
            once = contract_event_vector(v, n1 + n2, alpha)
            rtol = 4 * EPS * max(1.0, (n1 + n2) * alpha)
            np.testing.assert_allclose(twice.positions, once.positions, rtol=rtol, atol=0)


def test_06_cm_consistency(criterion):
    with criterion(6, "CM-of-modified = modified-CM on 50 systems; per-particle scheme fails", 1.0):
        rng = np.random.default_rng(6)
        for i in range(50):
            nu = 2 + i % 2
            masses = rng.uniform(0.2, 3.0, nu)
            pos = [np.cumsum(rng.normal(scale=0.3, size=(17, 2)), axis=0) for _ in range(nu)]
            sys = ParticleSystem.from_arrays(masses, pos, 1.0 / 16)
            alpha = rng.uniform(0, 1)
            lhs = cm_trajectory(modify_system(sys, alpha)).positions
            rhs = cm_modification_factor(sys, alpha) * cm_trajectory(sys).positions
            np.testing.assert_allclose(lhs, rhs, rtol=8 * EPS, atol=8 * EPS * np.abs(rhs).max())

        fast = straight_line(1.0, [0.0], [3.0], 1.0, 8)
        slow = straight_line(2.0, [1.0], [1.2], 1.0, 8)
        sys = ParticleSystem((fast, slow))
        per_particle = ParticleSystem(tuple(
            t.with_positions(t.positions * math.exp(-kinetic_action(t) * 0.5)) for t in sys.trajectories
        ))
        wrong = cm_trajectory(per_particle).positions
        right = cm_modification_factor(sys, 0.5) * cm_trajectory(sys).positions
        assert np.max(np.abs(wrong - right)) > 1e-3


def test_07_horizon_quadrature(criterion):
    with criterion(7, "horizon quadrature returns R_h to 1e-6", 1.0):
        for r_h in (1.0, 3.5):
            for t in (0.0, 1.0, 5.0):
                assert horizon_radius_quadrature(r_h, t) == pytest.approx(r_h, rel=1e-6)


def test_08_scale_factor_duality(criterion):
    with criterion(8, "2^(N a) 2^(-N a) = 1 on 1000 points; N=10, a=0.1 -> 0.5 and 2", 1.0):
        rng = np.random.default_rng(8)
        for n, a in zip(rng.uniform(0, 200, 1000), rng.uniform(0, 1, 1000)):
            assert abs(scale_factor_ds(n, a) * scale_factor_euclidean(n, a) - 1.0) <= 2 * EPS
        assert scale_factor_euclidean(10, 0.1) == pytest.approx(0.5, rel=EPS)
        assert scale_factor_ds(10, 0.1) == pytest.approx(2.0, rel=EPS)


def test_09_cosmological_chain(criterion):
    with criterion(9, "t_ML within 10^2 of 1e-102 s; inferred alpha in [1e-122, 1e-119]; round trip", 1.0):
        est = lloyd_estimate(SI.c, 1e53)
        assert 1e-104 <= float(est.t_ml) <= 1e-100
        alpha = infer_alpha(observed_lambda(1e-122), est.t_ml)
        assert 1e-122 <= alpha <= 1e-119
        for a in (1e-6, 1e-3, 0.1, 1.0):
            lam = lambda_ds_estimate(a, est.t_ml).coefficient_form
            assert infer_alpha(lam, est.t_ml) == pytest.approx(a, rel=1e-12)


DETERMINISM_CONFIGS = {
    "weight": "",
    "chtn": "samples = 20000\n",
    "paths": "samples = 20000\n",
    "many-body": "",
    "cosmology": "",
}


def test_10_determinism(criterion, tmp_path):
    with criterion(10, "every subcommand byte-identical across two runs", 120.0):
        for sub, text in DETERMINISM_CONFIGS.items():
            cfg = tmp_path / f"{sub}.cfg"
            cfg.write_text(text)
            outs = []
            for run in ("a", "b"):
                out = tmp_path / run / sub
                assert cli.main([sub, "--config", str(cfg), "--out", str(out), "--seed", "7"]) == 0
                outs.append(out)
            names = sorted(p.name for p in outs[0].iterdir())
            assert names == sorted(p.name for p in outs[1].iterdir())
            _, mismatch, errors = filecmp.cmpfiles(outs[0], outs[1], names, shallow=False)
            assert not mismatch and not errors, (sub, mismatch, errors)
