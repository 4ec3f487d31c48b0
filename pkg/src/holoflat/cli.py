"""Batch front end: ``holoflat <subcommand> [--config FILE] [--seed N] [--out DIR]``.

Config files are line-oriented ``key = value`` text; ``#`` starts a
comment and lists are comma separated. Each subcommand writes a
human-readable ``<name>_report.txt``, one or more tab-separated data
files, and a ``<name>_summary.tsv`` consumed by ``holoflat report``.

Exit codes: 0 success, 2 config or precondition error, 3 numerical
failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import chtn, cosmology, manybody, paths, weight
from .units import NATURAL, SI, PhysicalConstants

DEFAULT_SEED = 20_231_115
OUT_ENV = "HOLOFLAT_OUT"
DEFAULT_OUT = "holoflat_out"

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

SUBCOMMANDS = ("weight", "chtn", "paths", "many-body", "cosmology", "report")


class ConfigError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


# -- schema ---------------------------------------------------------------------


def _fmt(x) -> str:
    return f"{float(x):.16e}"


def _unit_interval(v):
    if not (0.0 <= v <= 1.0):
        return "must lie in [0, 1]"


def _positive(v):
    if not v > 0:
        return "must be positive"


def _nonneg(v):
    if v < 0:
        return "must be non-negative"


def _each(check):
    def inner(values):
        for v in values:
            msg = check(v)
            if msg:
                return f"element {v!r} {msg}"
    return inner


def _at_least(n):
    def inner(v):
        if v < n:
            return f"must be at least {n}"
    return inner


def _small_epsilon(v):
    if not (0.0 < v < chtn.EPSILON_CEILING):
        return f"must lie in (0, {chtn.EPSILON_CEILING})"


def _float_list(text):
    return [float(t) for t in text.split(",") if t.strip()]


@dataclass(frozen=True)
class Param:
    kind: Callable[[str], Any]
    default: Any
    unit: str = "1"
    check: Callable[[Any], str | None] | None = None


COMMON = {
    "seed": Param(int, DEFAULT_SEED),
    "workers": Param(int, 1, check=_at_least(1)),
    "unit_mode": Param(str, None, check=lambda v: None if v in ("natural", "si")
                       else "must be 'natural' or 'si'"),
    "output_path": Param(str, None),
    "hbar": Param(float, None, "action", _positive),
    "c": Param(float, None, "speed", _positive),
    "newton_3d": Param(float, None, "newton_3d", _positive),
    "planck_time": Param(float, None, "time", _positive),
}

SCHEMAS: dict[str, dict[str, Param]] = {
    "weight": {
        "alphas": Param(_float_list, [round(0.1 * i, 10) for i in range(11)], "1",
                        _each(_unit_interval)),
        "n": Param(int, 10_000, "1", _at_least(2)),
        "tol": Param(float, 1e-13, "1", _positive),
    },
    "chtn": {
        "alphas": Param(_float_list, [0.0, 0.25, 0.5, 0.75, 1.0], "1", _each(_unit_interval)),
        "area_tn": Param(float, 100.0, "sites", _nonneg),
        "site_area": Param(float, 1.0, "area", _positive),
        "t2_flat": Param(float, 1.0, "time", _positive),
        "r_ads": Param(float, 1.0, "length", _positive),
        "epsilon": Param(float, 1e-3, "1", _small_epsilon),
        "sites": Param(int, 1, "1", _at_least(1)),
        "samples": Param(int, 100_000, "1", _at_least(1)),
    },
    "paths": {
        "mass": Param(float, 1.0, "mass", _positive),
        "dimension": Param(int, 1, "1", lambda v: None if v in (1, 2, 3) else "must be 1, 2 or 3"),
        "x_start": Param(_float_list, None, "length"),
        "x_end": Param(_float_list, None, "length"),
        "tau": Param(float, 1.0, "time", _positive),
        "steps": Param(int, 256, "1", _at_least(2)),
        "samples": Param(int, 100_000, "1", _at_least(100)),
        "alpha": Param(float, 0.5, "1", _unit_interval),
    },
    "many-body": {
        "particles_file": Param(str, None),
        "tau": Param(float, 1.0, "time", _positive),
        "steps": Param(int, 16, "1", _at_least(1)),
        "alpha": Param(float, 0.5, "1", _unit_interval),
    },
    "cosmology": {
        "direction": Param(str, "lambda_obs", "1", lambda v: None if v in ("alpha", "lambda_obs")
                           else "must be 'alpha' or 'lambda_obs'"),
        "alpha": Param(float, 0.0, "1", _unit_interval),
        "lambda_obs_planck": Param(float, 1e-122, "1", _positive),
        "velocity_fraction": Param(float, 1.0, "1", lambda v: None if 0 < v <= 1
                                   else "must lie in (0, 1] (fraction of c)"),
        "mass_universe": Param(float, cosmology.DEFAULT_MASS_UNIVERSE, "mass", _positive),
        "epsilon": Param(float, 1e-3, "1", _positive),
        "r_ads": Param(float, 1.0, "length", _positive),
        "t2_flat": Param(float, 1.0, "time", _positive),
        "n_max": Param(float, 10.0, "1", _nonneg),
        "n_points": Param(int, 11, "1", _at_least(2)),
    },
    "report": {},
}

DEFAULT_UNIT_MODE = {"cosmology": "si"}


@dataclass
class RunConfig:
    subcommand: str
    parameters: dict[str, Any]
    seed: int = DEFAULT_SEED
    output_path: str | None = None
    unit_mode: str = "natural"
    workers: int = 1
    explicit: set[str] = field(default_factory=set)

    def constants(self) -> PhysicalConstants:
        base = SI if self.unit_mode == "si" else NATURAL
        overrides = {k: self.parameters[k] for k in ("hbar", "c", "newton_3d", "planck_time")
                     if self.parameters.get(k) is not None}
        return base.with_overrides(**overrides) if overrides else base


def parse_config(text: str, subcommand: str) -> RunConfig:
    """Parse ``key = value`` lines and validate every value before any run."""
    if subcommand not in SCHEMAS:
        raise ConfigError(f"unknown subcommand {subcommand!r}")
    schema = {**COMMON, **SCHEMAS[subcommand]}
    values: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, _, value = (s.strip() for s in line.partition("="))
        if key not in schema:
            raise ConfigError(f"unknown key {key!r} for subcommand {subcommand!r}", lineno)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        param = schema[key]
        try:
            parsed = param.kind(value)
        except ValueError:
            kind = getattr(param.kind, "__name__", "value").lstrip("_")
            raise ConfigError(f"{key} expects {kind}, got {value!r}", lineno) from None
        if param.check is not None:
            msg = param.check(parsed)
            if msg:
                raise ConfigError(f"{key} = {value} {msg}", lineno)
        values[key] = parsed
    return _finish(subcommand, schema, values)


def _finish(subcommand, schema, values) -> RunConfig:
    params = {k: values.get(k, p.default) for k, p in schema.items()}
    params["unit_mode"] = params["unit_mode"] or DEFAULT_UNIT_MODE.get(subcommand, "natural")
    cfg = RunConfig(
        subcommand=subcommand,
        parameters=params,
        seed=params["seed"],
        output_path=params["output_path"],
        unit_mode=params["unit_mode"],
        workers=params["workers"],
        explicit=set(values),
    )
    if subcommand == "paths":
        dim = params["dimension"]
        for key, fill in (("x_start", 0.0), ("x_end", 1.0)):
            if params[key] is None:
                params[key] = [fill] * dim
            elif len(params[key]) != dim:
                raise ConfigError(f"{key} has {len(params[key])} components but dimension = {dim}")
    try:
        cfg.constants()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return cfg


# -- output ---------------------------------------------------------------------


@dataclass
class Table:
    name: str
    columns: list[tuple[str, str, str]]  # (name, unit, provenance)
    rows: list[list[Any]] = field(default_factory=list)

    def render(self) -> str:
        header = "\t".join(f"{n} [{u}] ({p})" for n, u, p in self.columns)
        body = ["\t".join(_cell(v) for v in row) for row in self.rows]
        return "\n".join([header, *body]) + "\n"


def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _fmt(v)
    return str(v)


def write_atomic(files: dict[Path, str]) -> None:
    """Write every file to a temp sibling first, then rename all of them."""
    staged = []
    try:
        for path, text in files.items():
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            staged.append((tmp, path))
        for tmp, path in staged:
            os.replace(tmp, path)
    except BaseException:
        for tmp, _ in staged:
            if os.path.exists(tmp):
                os.unlink(tmp)
        raise


def _echo_inputs(cfg: RunConfig) -> list[str]:
    schema = {**COMMON, **SCHEMAS[cfg.subcommand]}
    consts = cfg.constants()
    lines = ["inputs:"]
    for key in sorted(schema):
        value = cfg.parameters[key]
        if key in ("hbar", "c", "newton_3d", "planck_time") and value is None:
            value = getattr(consts, key)
        origin = "config" if key in cfg.explicit else "default"
        lines.append(f"  {key} = {value}  [{schema[key].unit}] ({origin})")
    return lines


def _summary(rows: list[tuple[str, str, Any]]) -> str:
    """Headline numbers as (key, formula label, value) rows."""
    table = Table("summary", [("key", "-", "name"), ("label", "-", "formula"), ("value", "-", "computed")])
    table.rows = [list(r) for r in rows]
    return table.render()


# -- subcommands ----------------------------------------------------------------


def run_weight(cfg: RunConfig):
    p = cfg.parameters
    table = Table("weight", [
        ("alpha", "1", "input"),
        ("W", "1", "W = 2^(1-alpha)"),
        ("p", "1", "H2(p) = 1 - alpha, p <= 1/2"),
        (f"residual_n{p['n']}", "1", "|log2 C(n, round(p n))/n - log2 W|"),
    ])
    for alpha in p["alphas"]:
        model = weight.WeightModel.from_alpha(alpha, p["tol"])
        table.rows.append([alpha, model.weight, model.site_probability,
                           weight.verify_weight_asymptotics(model, p["n"])])
    base = weight.WeightModel.from_alpha(0.0)
    summary = [
        ("W_alpha0", "W = 2^(1-alpha) at alpha = 0", base.weight),
        ("p_alpha0", "H2(p) = 1 - alpha at alpha = 0", base.site_probability),
        ("max_residual", "max |log2 C(n, pn)/n - log2 W|", max(r[3] for r in table.rows)),
    ]
    report = [f"{len(table.rows)} alpha values, n = {p['n']}"]
    return [table], summary, report


def run_chtn(cfg: RunConfig):
    p = cfg.parameters
    consts = cfg.constants()
    table = Table("chtn", [
        ("A_TN", "sites", "input"),
        ("alpha", "1", "input"),
        ("entropy", "bit", "(1 - alpha) A_TN"),
        ("action", "action", "-hbar ln2 * entropy"),
        ("tension_alpha", "tension", "-hbar ln2 alpha / (area T2)"),
        ("tension_flat", "tension", "hbar ln2 / (area T2)"),
        ("C1", "1", "C - Cbar"),
        ("C2", "1", "eps (C + Cbar)"),
        ("sampled_bits", "bit/site", "plug-in entropy of Bernoulli(p) configurations"),
        ("sampled_se", "bit/site", "bootstrap standard error"),
    ])
    c = chtn.brown_henneaux(p["r_ads"], consts.newton_3d)
    charges = chtn.redefine_central_charges(c, c, p["epsilon"])
    for alpha in p["alphas"]:
        state = chtn.CHTNState(p["area_tn"], alpha, p["site_area"], p["t2_flat"], p["r_ads"], p["epsilon"])
        entropy = chtn.measurement_entropy(state)
        t_alpha = 0.0 if alpha == 0 else chtn.tension_alpha(state, consts)
        sample = chtn.sample_mixed_state_entropy(
            weight.p_from_alpha(alpha), p["sites"], p["samples"], cfg.seed, cfg.workers)
        table.rows.append([p["area_tn"], alpha, entropy, chtn.classicalized_action(entropy, consts),
                           t_alpha, chtn.tension_flat(state, consts), charges.c1, charges.c2,
                           sample.bits_per_site, sample.std_error])
    summary = [
        ("C", "3 R_AdS / (2 G_3)", c),
        ("C1", "C - Cbar", charges.c1),
        ("C2", "eps (C + Cbar)", charges.c2),
    ]
    return [table], summary, [f"Brown-Henneaux C = {c!r}"]


def run_paths(cfg: RunConfig):
    p = cfg.parameters
    consts = cfg.constants()
    kern = paths.mc_propagator(p["mass"], p["x_start"], p["x_end"], p["tau"], p["steps"],
                               p["samples"], cfg.seed, consts, cfg.workers)
    kernel = Table("paths_kernel", [
        ("estimate", "inverse_volume", "Monte Carlo, half walk + analytic bridge"),
        ("std_error", "inverse_volume", "bootstrap"),
        ("exact", "inverse_volume", "(m/(2 pi hbar tau))^(D/2) exp(-m dx^2/(2 hbar tau))"),
        ("rel_deviation", "1", "estimate/exact - 1"),
    ], [[kern.estimate, kern.std_error, kern.exact, kern.estimate / kern.exact - 1.0]])

    traj = paths.straight_line(p["mass"], p["x_start"], p["x_end"], p["tau"], p["steps"])
    S = paths.kinetic_action(traj)
    prob = paths.path_probability(S, p["alpha"], consts)
    n_tau = paths.event_count(S, consts)
    probability = Table("paths_probability", [
        ("S", "action", "sum (m/2) dx^2/dtau, classical path"),
        ("N_tau", "1", "S / (hbar ln2)"),
        ("original", "1", "exp(-S/hbar)"),
        ("modified", "1", "W^(-N_tau)"),
        ("ratio", "1", "2^(N_tau alpha)"),
    ], [[S, n_tau, prob.original, prob.modified, prob.ratio]])

    events = paths.readout_events(traj, consts)
    contracted = paths.contract_event_vector(events, n_tau, p["alpha"])
    dim = p["dimension"]
    cols = [("index", "1", "event"), ("tau", "time", "action crossing of k hbar ln2")]
    cols += [(f"x{d}", "length", "interpolated event position") for d in range(dim)]
    cols += [(f"x{d}_contracted", "length", "2^(-N_tau alpha) x") for d in range(dim)]
    ev = Table("paths_events", cols)
    for i in range(len(events)):
        ev.rows.append([i, events.taus[i], *events.positions[i], *contracted.positions[i]])

    summary = [
        ("kernel_estimate", "MC free Euclidean kernel", kern.estimate),
        ("kernel_exact", "analytic free Euclidean kernel", kern.exact),
        ("kernel_rel_deviation", "estimate/exact - 1", kern.estimate / kern.exact - 1.0),
        ("probability_ratio", "2^(N_tau alpha)", prob.ratio),
    ]
    report = [f"classical action S = {S!r}, N_tau = {n_tau!r}, events read out = {events.count}"]
    return [kernel, probability, ev], summary, report


def read_particle_table(text: str, steps: int, tau: float) -> manybody.ParticleSystem:
    """Rows ``mass<TAB>waypoints``; waypoints ``x,y;x,y;...`` at equal tau spacing.

    Waypoints are linearly interpolated onto the common lattice of
    ``steps + 1`` points.
    """
    masses, trajectories = [], []
    grid = np.linspace(0.0, 1.0, steps + 1)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            mass_text, way_text = line.split(None, 1)
            mass = float(mass_text)
            points = np.array([[float(c) for c in w.split(",")] for w in way_text.split(";") if w.strip()])
        except ValueError:
            raise ConfigError(f"particle table row must be 'mass waypoints', got {raw.strip()!r}",
                              lineno) from None
        if points.shape[0] < 2 or not mass > 0:
            raise ConfigError("need a positive mass and at least two waypoints", lineno)
        knots = np.linspace(0.0, 1.0, points.shape[0])
        lattice = np.column_stack([np.interp(grid, knots, points[:, d]) for d in range(points.shape[1])])
        masses.append(mass)
        trajectories.append(lattice)
    if not masses:
        raise ConfigError("particle table is empty")
    try:
        return manybody.ParticleSystem.from_arrays(masses, trajectories, tau / steps)
    except ValueError as exc:
        raise ConfigError(f"particle table: {exc}") from None


DEFAULT_PARTICLES = "1.0\t-1.0;0.0;1.0\n1.0\t1.0;0.5;-1.0\n2.0\t0.0;0.25;0.5\n"


def run_many_body(cfg: RunConfig):
    p = cfg.parameters
    consts = cfg.constants()
    if p["particles_file"]:
        text = Path(p["particles_file"]).read_text()
    else:
        text = DEFAULT_PARTICLES
    system = read_particle_table(text, p["steps"], p["tau"])
    factor = manybody.cm_modification_factor(system, p["alpha"], consts)
    modified = manybody.modify_system(system, p["alpha"], consts)
    cm, cm_mod = manybody.cm_trajectory(system), manybody.cm_trajectory(modified)
    dim = cm.dimension

    cols = [("particle", "-", "index or cm"), ("mass", "mass", "input"),
            ("k", "1", "lattice index"), ("tau", "time", "k dtau")]
    cols += [(f"x{d}", "length", "original") for d in range(dim)]
    cols += [(f"x{d}_modified", "length", "exp(-S_cm alpha/hbar) x") for d in range(dim)]
    table = Table("many-body", cols)
    entries = [(str(i), t, m) for i, (t, m) in enumerate(zip(system.trajectories, modified.trajectories))]
    entries.append(("cm", cm, cm_mod))
    for label, orig, mod in entries:
        for k in range(orig.steps + 1):
            table.rows.append([label, orig.mass, k, orig.taus[k], *orig.positions[k], *mod.positions[k]])

    s_cm = paths.kinetic_action(cm)
    summary = [
        ("S_cm", "kinetic action of the CM path", s_cm),
        ("cm_factor", "exp(-S_cm alpha/hbar)", factor),
    ]
    source = p["particles_file"] or "built-in three-particle table (default)"
    report = [f"particles: {len(system)} from {source}", f"S_cm = {s_cm!r}, factor = {factor!r}"]
    return [table], summary, report


def run_cosmology(cfg: RunConfig):
    p = cfg.parameters
    consts = cfg.constants()
    v = p["velocity_fraction"] * consts.c
    ml = cosmology.lloyd_estimate(v, p["mass_universe"], consts)
    lam_obs = cosmology.observed_lambda(p["lambda_obs_planck"], consts)
    if p["direction"] == "lambda_obs":
        alpha = cosmology.infer_alpha(lam_obs, ml.t_ml, consts)
    else:
        alpha = p["alpha"]
    lam = cosmology.lambda_ds_estimate(alpha, ml.t_ml, consts)

    params = cosmology.CosmologyParams(p["epsilon"], p["r_ads"], p["t2_flat"], alpha=alpha)
    rotated = cosmology.wick_rotate(params, consts)
    r_h_quad = cosmology.horizon_radius_quadrature(rotated.r_h, 0.0, c=consts.c)

    lam_table = Table("cosmology_lambda", [
        ("alpha", "1", "inferred" if p["direction"] == "lambda_obs" else "input"),
        ("E", "energy", "M v^2 / 2"),
        ("t_ML", "time", "h / (4 E)"),
        ("t_ML_coefficient", "time", "t_ML (v/c)^2"),
        ("lambda_order", "curvature", "alpha^2 / (c t_ML)^2"),
        ("lambda_coefficient", "curvature", "(pi^2/4) alpha^2 / (c t_ML)^2"),
        ("lambda_obs", "curvature", "fraction / (c t_P)^2"),
    ], [[alpha, ml.energy, ml.t_ml, ml.coefficient, lam.order_form, lam.coefficient_form, lam_obs]])

    counts = np.linspace(0.0, p["n_max"], p["n_points"])
    eu = cosmology.scale_factor_series(counts, alpha, cosmology.Phase.FLAT)
    ds = cosmology.scale_factor_series(counts, alpha, cosmology.Phase.DE_SITTER)
    series = Table("cosmology_scale_factor", [
        ("N", "1", "event count"),
        ("a_euclidean", "1", "2^(-N alpha)"),
        ("a_de_sitter", "1", "2^(N alpha)"),
    ], [[n, a, b] for n, a, b in zip(eu.counts, eu.factors, ds.factors)])

    wick = Table("cosmology_wick", [
        ("epsilon", "1", "input"),
        ("lambda_flat", "curvature", "-eps^2 / (c T2)^2"),
        ("lambda_ds", "curvature", "eps^2 / (c T2)^2"),
        ("r_h", "length", "Lambda = 1/R_h^2"),
        ("r_h_quadrature", "length", "a(t) int c dt'/a(t')"),
        ("tension_alpha", "tension", "-hbar ln2 alpha / (area T2), invariant"),
    ], [[p["epsilon"], cosmology.flat_lambda(params, consts), rotated.lambda_, rotated.r_h,
         r_h_quad, rotated.tension]])

    summary = [
        ("t_ML", "h / (4 E), E = M v^2 / 2", ml.t_ml),
        ("lambda_order", "alpha^2 / (c t_ML)^2", lam.order_form),
        ("lambda_coefficient", "(pi^2/4) alpha^2 / (c t_ML)^2", lam.coefficient_form),
        ("alpha", "(2/pi) c t_ML sqrt(Lambda_obs)" if p["direction"] == "lambda_obs" else "input", alpha),
    ]
    report = [
        f"direction = {p['direction']}",
        f"velocity = {v!r} m/s, E = {ml.energy!r} J",
        f"R_h = {rotated.r_h!r} m (quadrature {r_h_quad!r} m)",
    ]
    return [lam_table, series, wick], summary, report


RUNNERS = {
    "weight": run_weight,
    "chtn": run_chtn,
    "paths": run_paths,
    "many-body": run_many_body,
    "cosmology": run_cosmology,
}


def _read_summary(path: Path) -> list[tuple[str, str, str]]:
    rows = path.read_text().splitlines()[1:]
    return [tuple(r.split("\t")) for r in rows if r]


def run_report(out_dir: Path) -> str:
    present = [s for s in RUNNERS if (out_dir / f"{s}_summary.tsv").exists()]
    if not present:
        raise FileNotFoundError(
            f"no subcommand outputs in {out_dir}; run at least one of "
            + ", ".join(RUNNERS) + " first"
        )
    lines = ["holoflat summary", "=" * 16, ""]
    for sub in present:
        lines += [f"[{sub}]"]
        for key, label, value in _read_summary(out_dir / f"{sub}_summary.tsv"):
            lines.append(f"  {key:22s} {value:>26s}   {label}")
        lines.append("")
    missing = [s for s in RUNNERS if s not in present]
    if missing:
        lines.append("not run: " + ", ".join(missing))
    return "\n".join(lines) + "\n"


def run(cfg: RunConfig, out_dir: Path) -> None:
    """Run one subcommand and write its artifacts atomically into ``out_dir``."""
    if cfg.subcommand == "report":
        write_atomic({out_dir / "report.txt": run_report(out_dir)})
        return
    tables, summary, notes = RUNNERS[cfg.subcommand](cfg)
    report = [f"holoflat {cfg.subcommand}", f"seed = {cfg.seed}", f"unit_mode = {cfg.unit_mode}"]
    report += _echo_inputs(cfg) + ["results:"] + [f"  {n}" for n in notes]
    report += [f"  {k} = {_cell(v)}   ({label})" for k, label, v in summary]
    files = {out_dir / f"{t.name}.tsv": t.render() for t in tables}
    files[out_dir / f"{cfg.subcommand}_summary.tsv"] = _summary(summary)
    files[out_dir / f"{cfg.subcommand}_report.txt"] = "\n".join(report) + "\n"
    write_atomic(files)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="holoflat", description=__doc__.splitlines()[0])
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", type=Path, help="key = value configuration file")
    parser.add_argument("--seed", type=int, help="overrides the config seed")
    parser.add_argument("--out", type=Path, help=f"output directory (env {OUT_ENV})")
    parser.add_argument("--workers", type=int, help="threads for Monte Carlo batches")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.config.read_text() if args.config else ""
    except OSError as exc:
        print(f"holoflat: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        cfg = parse_config(text, args.subcommand)
        if args.seed is not None:
            cfg.seed = args.seed
        if args.workers is not None:
            if args.workers < 1:
                raise ConfigError("--workers must be at least 1")
            cfg.workers = args.workers
    except ConfigError as exc:
        print(f"holoflat: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out = args.out or os.environ.get(OUT_ENV) or cfg.output_path or DEFAULT_OUT
    try:
        run(cfg, Path(out))
    except (weight.ConvergenceError, cosmology.QuadratureError, FloatingPointError) as exc:
        print(f"holoflat: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ConfigError as exc:
        print(f"holoflat: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"holoflat: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"holoflat: invalid input: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
