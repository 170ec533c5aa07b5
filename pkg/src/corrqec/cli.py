"""Command-line front end.

Parses an experiment configuration (flat JSON config file, overridden by
flags), validates it, dispatches to the analysis modules, and writes CSV or
JSON artifacts.  Prints a one-line summary to stdout; diagnostics go to
stderr.  Exit codes: 0 success, 1 module error, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import csv
import enum
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import code3, histories, oracle, phase, rg
from .errors import ParameterError
from .noise import EnvironmentSpec, Kernel

COMMANDS = (
    "phase-scan",
    "rg-flow",
    "qec3-stats",
    "flawless",
    "oracle-compare",
    "dyson-bound",
)


def _fmt(x) -> str:
    """Floats with 17 significant digits for lossless round trips."""
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


@dataclass
class ExperimentConfig:
    command: str
    output_path: str = "out.csv"
    format: str = "csv"
    trials: int = 100_000
    seed: int = 0
    threads: int = 0            # 0 = machine parallelism; advisory only
    # environment / noise
    cutoff: float = 100.0
    velocity: float = 1.0
    dyn_exponent: float = 1.0
    scaling_dim: float = 0.75
    spatial_dim: float = 0.0
    tau0: float = 0.01
    kernel: str = "PowerLawTemporal"
    coupling: float = 0.1
    lambda_star: float = 0.1
    # schedule
    delta: float = 1.0
    cycles: int = 10
    # command-specific knobs
    epsilon: float = 0.01
    family: str = "frustrated"
    channels_k: int = 1
    lambda0: float = 0.5
    ell: float = 4.0
    dz_min: float | None = None
    dz_max: float | None = None
    d_min: float = 0.0
    d_max: float = 3.0
    z_min: float = 1.0
    z_max: float = 1.0
    delta_min: float = 0.0
    delta_max: float = 2.0
    res: int = 101
    n_steps: int = 64
    max_eigenvalue: float = 1.0
    t_max: float = 10.0
    points: int = 100


def validate(config: ExperimentConfig) -> list:
    """Return every violated invariant without running anything."""
    diags = []
    if config.command not in COMMANDS:
        diags.append(f"unknown command {config.command!r}")
    if config.trials < 1:
        diags.append("trials must be >= 1")
    if config.format not in ("csv", "json"):
        diags.append(f"unknown output format {config.format!r}")
    if config.delta > 0 and config.cutoff > 0 and config.cutoff * config.delta < 1.0:
        diags.append("cycle shorter than cutoff time")
    if config.command == "qec3-stats" and 3.0 * config.epsilon > 1.0:
        diags.append("p1 = 3*epsilon exceeds 1")
    if not 0.0 <= config.epsilon < 1.0:
        diags.append("epsilon must lie in [0, 1)")
    if config.lambda0 < 0 or config.lambda_star < 0 or config.coupling < 0:
        diags.append("couplings must be non-negative")
    if config.command == "phase-scan" and config.res < 2:
        diags.append("phase-scan needs res >= 2")
    if config.cycles < 1:
        diags.append("cycles must be >= 1")
    if config.max_eigenvalue <= 0:
        diags.append("max_eigenvalue must be positive")
    return diags


def _environment(config: ExperimentConfig) -> EnvironmentSpec:
    return EnvironmentSpec(
        cutoff_lambda=config.cutoff,
        velocity=config.velocity,
        dyn_exponent=config.dyn_exponent,
        scaling_dim=config.scaling_dim,
        spatial_dim=config.spatial_dim,
        tau0=config.tau0,
        kernel=Kernel(config.kernel),
    )


def _write_csv(path: str, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])


def _jsonable(x):
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    return x


def _write_json(path: str, payload: dict):
    with open(path, "w") as fh:
        json.dump({k: _jsonable(v) for k, v in payload.items()}, fh, indent=2)
        fh.write("\n")


def _emit(config: ExperimentConfig, header, rows, payload: dict):
    if config.format == "csv":
        _write_csv(config.output_path, header, rows)
    else:
        _write_json(config.output_path, payload)


# --- command implementations -------------------------------------------------


def _run_phase_scan(config: ExperimentConfig) -> str:
    if config.dz_min is not None or config.dz_max is not None:
        # combined D+z axis: report the sum in the D column with z = 0
        lo = 0.0 if config.dz_min is None else config.dz_min
        hi = 4.0 if config.dz_max is None else config.dz_max
        rows = phase.scan_grid(
            (lo, hi), (0.0, 0.0), (config.delta_min, config.delta_max),
            (config.res, 1, config.res),
        )
    else:
        rows = phase.scan_grid(
            (config.d_min, config.d_max),
            (config.z_min, config.z_max),
            (config.delta_min, config.delta_max),
            config.res,
        )
    header = ("D", "z", "delta", "exponent", "label")
    _emit(config, header, rows, {"header": list(header), "rows": rows})
    return f"phase-scan: {len(rows)} points -> {config.output_path}"


def _run_rg_flow(config: ExperimentConfig) -> str:
    family = {
        "kondo": rg.BetaFamily.KONDO_K_CHANNEL,
        "frustrated": rg.BetaFamily.QUANTUM_FRUSTRATED,
    }.get(config.family)
    if family is None:
        raise ParameterError(f"unknown beta-function family {config.family!r}")
    spec = rg.BetaFunctionSpec(family=family, channels_k=config.channels_k)
    traj = rg.integrate_flow(spec, config.lambda0, config.ell)
    closed = rg.closed_form_lambda_star(spec, config.lambda0, config.ell)
    rows = list(rg.trajectory_to_csv_rows(traj))
    _emit(
        config,
        ("ell", "lambda"),
        rows,
        {
            "family": config.family,
            "lambda0": config.lambda0,
            "ell": config.ell,
            "lambda_star": traj.lambda_star,
            "lambda_star_closed_form": closed.lambda_star,
            "closed_form_valid": closed.valid,
            "diverged": traj.diverged,
            "trajectory": rows,
        },
    )
    return (
        f"rg-flow {config.family}: lambda* = {_fmt(traj.lambda_star)} "
        f"(closed form {_fmt(closed.lambda_star)}, diverged={traj.diverged})"
    )


def _run_qec3_stats(config: ExperimentConfig) -> str:
    eps = config.epsilon
    n = config.cycles
    stats = code3.cycle_stats(eps)
    s = 1.0 / math.sqrt(2.0)
    state = code3.LogicalState(s, s)
    coherence = 2.0 * code3.mean_history_offdiagonal(n, state, eps).real
    small, large = code3.entropy_asymptotics(n, eps, state)
    payload = {
        "epsilon": eps,
        "cycles": n,
        "p0": stats.p0,
        "p1": stats.p1,
        "dephasing_no_error": stats.dephasing_no_error,
        "dephasing_error": stats.dephasing_error,
        "mean_history_coherence": coherence,
        "entropy_small_n": small,
        "entropy_large_n": large,
    }
    rows = [(k, v) for k, v in payload.items()]
    _emit(config, ("quantity", "value"), rows, payload)
    return (
        f"qec3-stats: p1 = {_fmt(stats.p1)}, "
        f"mean-history coherence = {_fmt(coherence)}"
    )


def _run_flawless(config: ExperimentConfig) -> str:
    env = _environment(config)
    lam_star = config.lambda_star
    eps = histories.local_error_probability(env, lam_star, config.delta)
    rows = []
    last = None
    for n in range(1, config.cycles + 1):
        schedule = histories.QecSchedule(delta=config.delta, n_cycles=n)
        last = histories.flawless_probability(env, schedule, lam_star, eps)
        rows.append((n, last.value, last.raw, last.correction, last.branch.value))
    breakdown = histories.breakdown_cycles(lam_star, config.delta, eps)
    _emit(
        config,
        ("n", "probability", "raw", "correction", "branch"),
        rows,
        {
            "epsilon": eps,
            "lambda_star": lam_star,
            "breakdown_cycles": breakdown,
            "rows": rows,
        },
    )
    return (
        f"flawless: eps = {_fmt(eps)}, P({config.cycles} cycles) = "
        f"{_fmt(last.value)} [{last.branch.value}], N* = {_fmt(breakdown)}"
    )


def _run_oracle_compare(config: ExperimentConfig) -> str:
    env = _environment(config)
    proc = oracle.DephasingProcess.from_kernel(
        env, config.coupling, config.delta, n_steps=config.n_steps, seed=config.seed
    )
    est = oracle.exact_cycle_statistics(proc, config.trials)
    closed = code3.cycle_stats(est.eps_exact)
    payload = {
        "trials": est.n_trials,
        "phase_variance": est.phase_variance,
        "eps_exact": est.eps_exact,
        "p1_oracle": est.p1_sampled,
        "p1_oracle_se": est.p1_sampled_se,
        "p1_closed_form": closed.p1,
        "dephasing_error_oracle": est.dephasing_error,
        "dephasing_error_se": est.dephasing_error_se,
        "dephasing_error_closed_form": closed.dephasing_error,
        "dephasing_no_error_oracle": est.dephasing_no_error,
        "dephasing_no_error_se": est.dephasing_no_error_se,
        "dephasing_no_error_closed_form": closed.dephasing_no_error,
    }
    rows = [(k, v) for k, v in payload.items()]
    _emit(config, ("quantity", "value"), rows, payload)
    return (
        f"oracle-compare: p1 = {_fmt(est.p1_sampled)} "
        f"+/- {_fmt(est.p1_sampled_se)} vs 3*eps = {_fmt(closed.p1)}"
    )


def _run_dyson_bound(config: ExperimentConfig) -> str:
    grid = np.linspace(0.0, config.t_max, config.points)
    table = oracle.dyson_norm_bound(config.max_eigenvalue, grid)
    rows = [tuple(r) for r in table]
    _emit(
        config,
        ("t", "exact_norm", "bound"),
        rows,
        {"max_eigenvalue": config.max_eigenvalue, "rows": rows},
    )
    slack = float((table[1:, 2] - table[1:, 1]).min()) if len(table) > 1 else 0.0
    return f"dyson-bound: {len(rows)} points, min bound slack {_fmt(slack)}"


_RUNNERS = {
    "phase-scan": _run_phase_scan,
    "rg-flow": _run_rg_flow,
    "qec3-stats": _run_qec3_stats,
    "flawless": _run_flawless,
    "oracle-compare": _run_oracle_compare,
    "dyson-bound": _run_dyson_bound,
}


def run(config: ExperimentConfig) -> int:
    """Validate, dispatch and report.  Never writes on an invalid config."""
    diags = validate(config)
    if diags:
        for d in diags:
            print(f"error: {d}", file=sys.stderr)
        return 2
    try:
        summary = _RUNNERS[config.command](config)
    except Exception as exc:  # module errors -> exit 1 with the message
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(summary)
    return 0


# --- argument parsing --------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corrqec",
        description="QEC under spatiotemporally correlated dephasing noise",
    )
    sub = parser.add_subparsers(dest="command")

    def common(p):
        p.add_argument("--config", help="flat JSON config file; flags override")
        p.add_argument("--output", dest="output_path")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--threads", type=int)
        p.add_argument("--validate-only", action="store_true")

    p = sub.add_parser("phase-scan", help="classify a (D, z, delta) grid")
    p.add_argument("--dz-min", type=float)
    p.add_argument("--dz-max", type=float)
    p.add_argument("--d-min", type=float)
    p.add_argument("--d-max", type=float)
    p.add_argument("--z-min", type=float)
    p.add_argument("--z-max", type=float)
    p.add_argument("--delta-min", type=float)
    p.add_argument("--delta-max", type=float)
    p.add_argument("--res", type=int)
    common(p)

    p = sub.add_parser("rg-flow", help="integrate a coupling flow")
    p.add_argument("--family", choices=("kondo", "frustrated"))
    p.add_argument("--channels-k", type=int)
    p.add_argument("--lambda0", type=float)
    p.add_argument("--ell", type=float)
    common(p)

    p = sub.add_parser("qec3-stats", help="3-qubit cycle statistics")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--cycles", type=int)
    common(p)

    p = sub.add_parser("flawless", help="flawless-history probability vs N")
    p.add_argument("--lambda-star", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--cycles", type=int)
    p.add_argument("--cutoff", type=float)
    p.add_argument("--dyn-exponent", type=float)
    p.add_argument("--scaling-dim", type=float)
    p.add_argument("--tau0", type=float)
    common(p)

    p = sub.add_parser("oracle-compare", help="MC oracle vs closed forms")
    p.add_argument("--coupling", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--cutoff", type=float)
    p.add_argument("--dyn-exponent", type=float)
    p.add_argument("--scaling-dim", type=float)
    p.add_argument("--tau0", type=float)
    p.add_argument("--kernel")
    p.add_argument("--n-steps", type=int)
    common(p)

    p = sub.add_parser("dyson-bound", help="exact error norm vs linear bound")
    p.add_argument("--max-eigenvalue", type=float)
    p.add_argument("--t-max", type=float)
    p.add_argument("--points", type=int)
    common(p)

    return parser


def build_config(argv=None) -> tuple:
    """Parse argv into (ExperimentConfig, validate_only flag).

    Precedence: built-in defaults < config file < environment variables
    (CORRQEC_SEED, CORRQEC_THREADS) < command-line flags.
    """
    parser = _build_parser()
    ns = parser.parse_args(argv)
    if ns.command is None:
        parser.print_usage(sys.stderr)
        raise SystemExit(2)

    values = {"command": ns.command}
    cfg_path = getattr(ns, "config", None)
    if cfg_path:
        try:
            with open(cfg_path) as fh:
                file_values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read config {cfg_path}: {exc}", file=sys.stderr)
            raise SystemExit(2)
        if not isinstance(file_values, dict):
            print("error: config file must hold a flat JSON object", file=sys.stderr)
            raise SystemExit(2)
        values.update(file_values)

    for var, key, cast in (
        ("CORRQEC_SEED", "seed", int),
        ("CORRQEC_THREADS", "threads", int),
    ):
        if var in os.environ:
            values[key] = cast(os.environ[var])

    validate_only = getattr(ns, "validate_only", False)
    for key, val in vars(ns).items():
        if key in ("command", "config", "validate_only") or val is None:
            continue
        values[key] = val

    known = set(ExperimentConfig.__dataclass_fields__)
    unknown = [k for k in values if k not in known]
    if unknown:
        print(f"error: unknown config keys {unknown}", file=sys.stderr)
        raise SystemExit(2)
    return ExperimentConfig(**values), validate_only


def main(argv=None) -> int:
    try:
        config, validate_only = build_config(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    if validate_only:
        for d in validate(config):
            print(d)
        return 0
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
