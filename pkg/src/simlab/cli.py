"""Command-line entry point for reproducible experiments.

Every subcommand is deterministic given its flags (the seed included):
outputs are written atomically and the fully resolved configuration is
echoed into the output directory as ``run.json``, which is enough to
reproduce any result.  Exit codes: 0 success, 1 validation error,
2 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .distances import (
    check_sandwich,
    e1_bound,
    e3_bound,
    mc_distance,
    tv_bound_f,
    tv_bound_g,
)
from .fourier import FourierSeries, project, series_from_json, series_to_json
from .mixture import MixtureLaw
from .model import DatasetFormatError, load as load_obs, save as save_obs, simulate
from .nets import MomentMatchError, fano_tv_certificate, make_fano_net
from .posterior import (
    ContractionConfig,
    PriorConfig,
    contraction_experiment,
    gibbs_posterior,
)
from .priors import (
    DirichletPriorConfig,
    RejectionLimitError,
    SievePriorConfig,
    SmoothPriorConfig,
    parse_flat_config,
    sample_dp,
    sample_f,
    sample_smooth,
)
from .shifts import (
    Discrete,
    GridDensity,
    raised_cosine_density,
    shift_from_json,
    shift_to_json,
    uniform_density,
)
from .special import a_n, bessel_i

__all__ = ["main"]


class ValidationError(ValueError):
    """Bad flags or malformed input files (exit code 1)."""


def _write_atomic(path: str, data: str) -> None:
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w") as fh:
        fh.write(data)
    os.replace(tmp, path)


def _write_json(path: str, obj) -> None:
    _write_atomic(path, json.dumps(obj, indent=1, sort_keys=True))


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    _write_atomic(path, buf.getvalue())


def _echo_run_config(out: str, args: argparse.Namespace) -> None:
    directory = out if os.path.isdir(out) else (os.path.dirname(out) or ".")
    resolved = {k: v for k, v in vars(args).items() if k != "func"}
    resolved["version"] = __version__
    _write_json(os.path.join(directory, "run.json"), resolved)


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc


def _sieve_from_config(cfg: dict, n: int) -> SievePriorConfig:
    preset = cfg.get("preset", "adaptive")
    kw = {}
    for key in ("c", "rho"):
        if key in cfg:
            kw[key] = float(cfg[key])
    if "l_max" in cfg:
        kw["l_max"] = int(cfg["l_max"])
    if preset == "adaptive":
        return SievePriorConfig.adaptive(n, **kw)
    if preset == "nonadaptive":
        return SievePriorConfig.non_adaptive(n, float(cfg.get("s", 1.0)), **kw)
    if preset == "manual":
        return SievePriorConfig(
            n=n, mu=float(cfg["mu"]), zeta=float(cfg["zeta"]), **kw
        )
    raise ValidationError(f"unknown sieve preset {preset!r}")


def _base_density(cfg: dict) -> GridDensity:
    grid = int(cfg.get("base_grid", 512))
    amplitude = float(cfg.get("base_amplitude", 0.0))
    if amplitude == 0.0:
        return uniform_density(grid)
    return raised_cosine_density(grid, amplitude)


def _dp_from_config(cfg: dict) -> DirichletPriorConfig:
    return DirichletPriorConfig(
        _base_density(cfg),
        total_mass=float(cfg.get("mass", 1.0)),
        truncation=int(cfg.get("truncation", 200)),
    )


def _smooth_from_config(cfg: dict) -> SmoothPriorConfig:
    if "nu" not in cfg or "radius" not in cfg:
        raise ValidationError("smooth prior config needs 'nu' and 'radius'")
    return SmoothPriorConfig(
        nu=float(cfg["nu"]),
        radius=float(cfg["radius"]),
        grid=int(cfg.get("grid", 1024)),
        max_rejections=int(cfg.get("max_rejections", 1000)),
    )


# -- subcommands -------------------------------------------------------------


def _cmd_simulate(args) -> int:
    theta = series_from_json(_load_json(args.theta))
    g = shift_from_json(_load_json(args.g))
    obs = simulate(theta, g, args.n, args.cutoff, sigma=args.sigma, seed=args.seed)
    save_obs(obs, args.out)
    _echo_run_config(args.out, args)
    return 0


def _cmd_prior_sample(args) -> int:
    cfg = parse_flat_config(args.config)
    rng = np.random.default_rng(args.seed)
    os.makedirs(args.out, exist_ok=True)
    for i in range(args.count):
        path = os.path.join(args.out, f"draw_{i:04d}.json")
        if args.kind == "sieve":
            draw = sample_f(_sieve_from_config(cfg, int(cfg.get("n", 100))), rng)
            _write_json(path, series_to_json(draw))
        elif args.kind == "dp":
            _write_json(path, shift_to_json(sample_dp(_dp_from_config(cfg), rng)))
        else:
            _write_json(
                path, shift_to_json(sample_smooth(_smooth_from_config(cfg), rng))
            )
    _echo_run_config(args.out, args)
    return 0


def _cmd_posterior(args) -> int:
    try:
        obs = load_obs(args.data)
    except DatasetFormatError as exc:
        raise ValidationError(str(exc)) from exc
    cfg = parse_flat_config(args.prior)
    kind = cfg.get("g_prior", "dp")
    sieve = _sieve_from_config(cfg, obs.n)
    if kind == "dp":
        prior = PriorConfig(sieve, _dp_from_config(cfg))
    elif kind == "smooth":
        prior = PriorConfig(sieve, _smooth_from_config(cfg))
    else:
        raise ValidationError(f"unknown g_prior {kind!r}")
    rng = np.random.default_rng(args.seed)
    ens = gibbs_posterior(obs, prior, args.steps, rng)
    os.makedirs(args.out, exist_ok=True)
    mean = ens.mean_theta(aligned=True)
    samples = [
        {
            "theta": series_to_json(theta),
            "g": shift_to_json(g),
            "weight": w,
        }
        for theta, g, w in ens.samples
    ]
    _write_json(os.path.join(args.out, "ensemble.json"), {"samples": samples})
    _write_json(
        os.path.join(args.out, "summary.json"),
        {
            "mean_theta_aligned": series_to_json(mean),
            "diagnostics": ens.diagnostics,
        },
    )
    _echo_run_config(args.out, args)
    return 0


def _cmd_contraction(args) -> int:
    theta = series_from_json(_load_json(os.path.join(args.truth, "theta.json")))
    g = shift_from_json(_load_json(os.path.join(args.truth, "g.json")))
    try:
        n_list = [int(x) for x in args.ns.split(",") if x]
    except ValueError as exc:
        raise ValidationError(f"bad --ns list: {args.ns!r}") from exc
    cfg = ContractionConfig(
        s=args.s,
        sigma=args.sigma,
        cutoff=args.cutoff,
        steps=args.steps,
        control_n=args.control_n,
    )
    rng = np.random.default_rng(args.seed)
    rows = contraction_experiment(
        theta, g, n_list, cfg, rng, include_control=not args.no_control
    )
    header = [
        "n",
        "sigma",
        "eps_n",
        "median_dh",
        "f_err_aligned",
        "f_err_raw",
        "g_err",
    ]
    _write_csv(args.out, header, [[row[h] for h in header] for row in rows])
    _echo_run_config(args.out, args)
    return 0


def _cmd_fano_net(args) -> int:
    net = make_fano_net(args.p, args.s, args.beta, args.nu, args.A)
    os.makedirs(args.out, exist_ok=True)
    _write_json(
        os.path.join(args.out, "net.json"),
        {
            "p": net.p,
            "s": net.s,
            "beta": net.beta,
            "nu": net.nu,
            "radius": net.radius,
            "fs": [series_to_json(f) for f in net.fs],
            "gs": [shift_to_json(g) for g in net.gs],
        },
    )
    if args.certify:
        rng = np.random.default_rng(args.seed)
        cert = fano_tv_certificate(net, args.samples, rng)
        rows = []
        for j, (m, mm) in enumerate(zip(cert.matched, cert.mismatched), start=1):
            rows.append(
                [j, m.value, m.std_error, mm.value, mm.std_error,
                 bool(j == 1 or m.value < mm.value)]
            )
        _write_csv(
            os.path.join(args.out, "certificate.csv"),
            ["j", "matched_tv", "matched_se", "mismatched_tv", "mismatched_se",
             "matched_below_mismatched"],
            rows,
        )
    _echo_run_config(args.out, args)
    return 0


def _random_series(rng, cutoff: int) -> FourierSeries:
    coeffs = rng.normal(0, 0.5, 2 * cutoff + 1) + 1j * rng.normal(
        0, 0.5, 2 * cutoff + 1
    )
    return FourierSeries(cutoff, coeffs)


def _random_shift_dist(rng, kind: int):
    if kind == 0:
        k = int(rng.integers(2, 5))
        w = rng.dirichlet(np.ones(k))
        return Discrete(rng.uniform(0, 1, k), w)
    amp = float(rng.uniform(0.0, 0.9))
    phase = float(rng.uniform(0, 1))
    t = np.linspace(0.0, 1.0, 257)
    return GridDensity(1.0 + amp * np.cos(2 * np.pi * (t - phase)))


def distance_verification_rows(
    instances: int, samples: int, rng: np.random.Generator
) -> list[list]:
    """Random-instance rows for the distance-inequality report."""
    rows: list[list] = []
    for i in range(instances):
        cutoff = int(rng.integers(1, 4))
        f = _random_series(rng, cutoff)
        f_tilde = _random_series(rng, cutoff)
        g = _random_shift_dist(rng, int(rng.integers(0, 2)))
        law_f = MixtureLaw(f, g)
        law_ft = MixtureLaw(f_tilde, g)
        tv = mc_distance(law_f, law_ft, "TV", samples, rng)
        rows.append(
            [
                f"tv_shape_{i}",
                tv.value,
                tv_bound_f(f, f_tilde),
                tv.std_error,
                tv.value <= tv_bound_f(f, f_tilde) + 3 * tv.std_error,
            ]
        )
        g_tilde = _random_shift_dist(rng, int(rng.integers(0, 2)))
        tvg = mc_distance(MixtureLaw(f, g), MixtureLaw(f, g_tilde), "TV", samples, rng)
        bound_g = tv_bound_g(f, g, g_tilde)
        rows.append(
            [
                f"tv_mixing_{i}",
                tvg.value,
                bound_g,
                tvg.std_error,
                tvg.value <= bound_g + 3 * tvg.std_error,
            ]
        )
        level = int(rng.integers(0, cutoff))
        f_l = project(project(f, level), cutoff)
        h2 = mc_distance(MixtureLaw(f, g), MixtureLaw(f_l, g), "H2", samples, rng)
        dh = math.sqrt(max(h2.value, 0.0))
        dh_se = h2.std_error / (2 * dh) if dh > 1e-6 else math.sqrt(h2.std_error)
        rows.append(
            [
                f"truncation_{i}",
                dh,
                e1_bound(f, level),
                dh_se,
                dh <= e1_bound(f, level) + 3 * dh_se,
            ]
        )
        rows.append(
            [
                f"perturbation_{i}",
                dh,
                e3_bound(f, f_l),
                dh_se,
                dh <= e3_bound(f, f_l) + 3 * dh_se,
            ]
        )
        report = check_sandwich(law_f, law_ft, samples, rng)
        rows.append(
            [
                f"sandwich_{i}",
                report.tv.value,
                math.sqrt(max(report.h2.value, 0.0)),
                report.tv.std_error,
                report.all_ok,
            ]
        )
    return rows


def _cmd_verify(args) -> int:
    if args.suite != "distances":
        raise ValidationError(f"unknown suite {args.suite!r}")
    rng = np.random.default_rng(args.seed)
    rows = distance_verification_rows(args.instances, args.samples, rng)
    _write_csv(args.out, ["check", "value", "bound", "std_error", "pass"], rows)
    _echo_run_config(args.out, args)
    return 0 if all(r[4] for r in rows) else 2


def _cmd_bessel_table(args) -> int:
    rows = []
    a_values = np.arange(0.0, args.a_max + 1e-12, args.step)
    for n in range(args.n_max + 1):
        for a in a_values:
            rows.append([n, float(a), bessel_i(n, float(a)), a_n(n, float(a))])
    _write_csv(args.out, ["n", "a", "bessel_i", "a_n"], rows)
    _echo_run_config(args.out, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simlab",
        description="Simulation and Bayesian inference for randomly shifted curves.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument(
            "--threads",
            type=int,
            default=1,
            help="worker count; results are identical for any value",
        )
        p.add_argument("--out", required=True)

    p = sub.add_parser("simulate", help="draw curves from the shifted-curve model")
    p.add_argument("--theta", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cutoff", type=int, required=True)
    p.add_argument("--sigma", type=float, default=1.0)
    common(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("prior-sample", help="draw from one of the priors")
    p.add_argument("--kind", choices=("sieve", "dp", "smooth"), required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--count", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_prior_sample)

    p = sub.add_parser("posterior", help="Gibbs posterior over shape and shifts")
    p.add_argument("--data", required=True)
    p.add_argument("--prior", required=True)
    p.add_argument("--steps", type=int, default=500)
    common(p)
    p.set_defaults(func=_cmd_posterior)

    p = sub.add_parser("contraction", help="posterior-shrinkage experiment")
    p.add_argument("--truth", required=True)
    p.add_argument("--ns", required=True)
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--cutoff", type=int, default=4)
    p.add_argument("--steps", type=int, default=600)
    p.add_argument("--control-n", dest="control_n", type=int, default=6000)
    p.add_argument("--no-control", dest="no_control", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_contraction)

    p = sub.add_parser("fano-net", help="hardness net and its TV certificate")
    p.add_argument("--p", type=int, default=8)
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=2.5)
    p.add_argument("--nu", type=float, default=1.5)
    p.add_argument("--A", type=float, default=2.0)
    p.add_argument("--certify", action="store_true")
    p.add_argument("--samples", type=int, default=100_000)
    common(p)
    p.set_defaults(func=_cmd_fano_net)

    p = sub.add_parser("verify", help="distance-inequality report")
    p.add_argument("--suite", required=True)
    p.add_argument("--instances", type=int, default=20)
    p.add_argument("--samples", type=int, default=20_000)
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bessel-table", help="tabulate I_n and A_n")
    p.add_argument("--n-max", dest="n_max", type=int, default=20)
    p.add_argument("--a-max", dest="a_max", type=float, default=10.0)
    p.add_argument("--step", type=float, default=0.5)
    common(p)
    p.set_defaults(func=_cmd_bessel_table)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (ValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (MomentMatchError, RejectionLimitError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
