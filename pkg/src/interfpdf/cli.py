"""Command-line front end.

Subcommands::

    pdf       closed-form vs Talbot density curves        -> CSV
    cdf       distribution function on a grid             -> CSV
    lt        the interference Laplace transform          -> CSV
    coverage  analytic (optionally vs Monte-Carlo) curves -> CSV
    simulate  per-trial Monte-Carlo records               -> CSV
    validate  run the analytic self-check suite           -> text report

Conventions: floats are printed with 17 significant digits and '\n' line
endings, so a fixed configuration and seed reproduce byte-identical files.
A flat ``key = value`` config file can seed any command's flags (flags win
on conflict).  Relative --output paths land in $INTERFPDF_OUTDIR when set.
Exit codes: 0 success, 1 a requested check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from ._backend import backend_name
from .errors import DomainError
from .interference import Nakagami, NetworkParams, Rayleigh, Rician, kww_scale
from .mc import SimConfig, empirical_cdf, ks_statistic, run_trials, truncation_tail_mean
from .stable import Backend, KwwScale, StablePdf, cdf_grid, eta_to_beta
from .talbot import TalbotConfig, invert_kww

OUTDIR_ENV = "INTERFPDF_OUTDIR"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _parse_grid(spec: str) -> np.ndarray:
    try:
        kind, lo, hi, n = spec.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise DomainError(f"grid spec {spec!r} is not kind:min:max:points")
    if n < 1:
        raise DomainError(f"grid needs at least one point, got {n}")
    if n == 1:
        if lo != hi:
            raise DomainError("single-point grid needs min == max")
        return np.array([lo])
    if kind == "log":
        if lo <= 0.0 or hi <= lo:
            raise DomainError(f"log grid needs 0 < min < max, got {spec!r}")
        return np.logspace(math.log10(lo), math.log10(hi), n)
    if kind == "lin":
        if hi <= lo:
            raise DomainError(f"lin grid needs min < max, got {spec!r}")
        return np.linspace(lo, hi, n)
    raise DomainError(f"unknown grid kind {kind!r} (use log or lin)")


def _parse_db_grid(spec: str) -> np.ndarray:
    try:
        lo, hi, n = spec.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise DomainError(f"dB grid spec {spec!r} is not min:max:points")
    if n < 1:
        raise DomainError(f"grid needs at least one point, got {n}")
    if n == 1:
        if lo != hi:
            raise DomainError("single-point grid needs min == max")
        return np.array([lo])
    if hi <= lo:
        raise DomainError(f"dB grid needs min < max, got {spec!r}")
    return np.linspace(lo, hi, n)


def _build_fading(kind: str, mu: float, m: float, pr: float, k: float, what: str):
    if kind == "rayleigh":
        return Rayleigh(mu=mu)
    if kind == "nakagami":
        return Nakagami(m=m, pr=pr)
    if kind == "rician":
        return Rician(k=k, pr=pr)
    raise DomainError(f"unknown {what} fading {kind!r}")


def _fading_args(p: argparse.ArgumentParser, prefix: str = "", what: str = "fading"):
    dash = f"--{prefix}-" if prefix else "--"
    dest = f"{prefix}_" if prefix else ""
    p.add_argument(
        f"{dash}fading",
        dest=f"{dest}fading",
        choices=("rayleigh", "nakagami", "rician"),
        default="rayleigh",
        help=f"{what} fading family",
    )
    p.add_argument(f"{dash}mu", dest=f"{dest}mu", type=float, default=1.0)
    p.add_argument(f"{dash}m", dest=f"{dest}m", type=float, default=1.0)
    p.add_argument(f"{dash}pr", dest=f"{dest}pr", type=float, default=1.0)
    p.add_argument(f"{dash}k", dest=f"{dest}k", type=float, default=0.0)


def _open_output(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not os.path.isabs(path):
        path = os.path.join(outdir, path)
    return open(path, "w", newline="\n"), True


def _emit(args, lines) -> None:
    stream, close = _open_output(args.output)
    try:
        for line in lines:
            stream.write(line + "\n")
    finally:
        if close:
            stream.close()


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_pdf(args) -> int:
    net = NetworkParams(lam=args.lam, eta=args.eta)
    fading = _build_fading(args.fading, args.mu, args.m, args.pr, args.k, "interference")
    scale = kww_scale(net, fading)
    grid = _parse_grid(args.i_grid)
    _, closed_available = eta_to_beta(args.eta)
    talbot = invert_kww(scale, grid, TalbotConfig(nodes=args.talbot_nodes))
    lines = ["I,pdf_closed_form,pdf_talbot,abs_diff"]
    worst = 0.0
    if closed_available:
        d = StablePdf(scale, talbot_nodes=args.talbot_nodes)
        for x, tv in zip(grid, talbot):
            cv = d.pdf(float(x))
            diff = abs(cv - tv)
            worst = max(worst, diff)
            lines.append(f"{_fmt(x)},{_fmt(cv)},{_fmt(tv)},{_fmt(diff)}")
    else:
        print(
            f"warning: beta = {scale.beta} has no closed form; emitting the "
            "Talbot column only",
            file=sys.stderr,
        )
        for x, tv in zip(grid, talbot):
            lines.append(f"{_fmt(x)},,{_fmt(tv)},")
    _emit(args, lines)
    if closed_available and worst > args.tol:
        print(f"FAIL: max |closed - talbot| = {worst:.3e} > {args.tol:.1e}", file=sys.stderr)
        return 1
    return 0


def _cmd_cdf(args) -> int:
    net = NetworkParams(lam=args.lam, eta=args.eta)
    fading = _build_fading(args.fading, args.mu, args.m, args.pr, args.k, "interference")
    scale = kww_scale(net, fading)
    _, closed_available = eta_to_beta(args.eta)
    d = StablePdf(scale, talbot_nodes=args.talbot_nodes)
    grid = _parse_grid(args.i_grid)
    vals = cdf_grid(d, [float(x) for x in grid])
    lines = ["I,cdf"]
    for x, v in zip(grid, vals):
        lines.append(f"{_fmt(x)},{_fmt(v)}")
    _emit(args, lines)
    return 0


def _cmd_lt(args) -> int:
    net = NetworkParams(lam=args.lam, eta=args.eta)
    fading = _build_fading(args.fading, args.mu, args.m, args.pr, args.k, "interference")
    scale = kww_scale(net, fading)
    grid = _parse_grid(args.s_grid)
    lines = ["s,lt"]
    from .interference import laplace_transform

    for s in grid:
        lines.append(f"{_fmt(s)},{_fmt(laplace_transform(scale, float(s)))}")
    _emit(args, lines)
    return 0


def _cmd_simulate(args) -> int:
    net = NetworkParams(lam=args.lam, eta=args.eta)
    sim = SimConfig(
        net=net,
        interference_fading=_build_fading(
            args.interference_fading,
            args.interference_mu,
            args.interference_m,
            args.interference_pr,
            args.interference_k,
            "interference",
        ),
        signal_fading=_build_fading(
            args.signal_fading,
            args.signal_mu,
            args.signal_m,
            args.signal_pr,
            args.signal_k,
            "signal",
        ),
        window_km=args.window,
        trials=args.trials,
        seed=args.seed,
        serving_distance_km=args.r,
        noise=args.noise,
    )
    records = run_trials(sim)
    lines = ["trial,interference,signal,sinr"]
    for i, rec in enumerate(records):
        lines.append(
            f"{i},{_fmt(rec['interference'])},{_fmt(rec['signal'])},{_fmt(rec['sinr'])}"
        )
    # summary footer: empirical vs analytic interference distribution
    d = StablePdf(kww_scale(net, sim.interference_fading))
    ks = ks_statistic(records["interference"], d.cdf)
    mean_n = net.lam * sim.window_km ** 2
    lines.append(f"# trials = {sim.trials}, seed = {sim.seed}")
    lines.append(f"# expected_transmitters_per_trial = {_fmt(mean_n)}")
    lines.append(f"# ks_interference_vs_analytic = {_fmt(ks)}")
    lines.append(f"# truncation_tail_mean = {_fmt(truncation_tail_mean(sim))}")
    _emit(args, lines)
    return 0


def _cmd_coverage(args) -> int:
    from .coverage import (
        CoverageScenario,
        coverage_analytic,
        coverage_lt_shortcut,
        coverage_mc_compare,
        coverage_xi_eta3,
    )

    net = NetworkParams(lam=args.lam, eta=args.eta)
    signal = _build_fading(
        args.signal_fading, args.signal_mu, args.signal_m, args.signal_pr, args.signal_k, "signal"
    )
    interference = _build_fading(
        args.interference_fading,
        args.interference_mu,
        args.interference_m,
        args.interference_pr,
        args.interference_k,
        "interference",
    )
    t_db = _parse_db_grid(args.t_grid_db)
    thresholds = tuple(10.0 ** (db / 10.0) for db in t_db)
    sc = CoverageScenario(
        net=net,
        signal_fading=signal,
        interference_fading=interference,
        r_km=args.r,
        noise=args.noise,
        thresholds=thresholds,
    )
    if args.use_xi:
        analytic = coverage_xi_eta3(sc)
    else:
        analytic = coverage_analytic(sc)

    header = "T_dB,p_c_analytic"
    columns = [t_db, analytic]
    failed = False

    if args.with_mc:
        sim = SimConfig(
            net=net,
            interference_fading=interference,
            signal_fading=signal,
            window_km=args.window,
            trials=args.trials,
            seed=args.seed,
            serving_distance_km=args.r,
            noise=args.noise,
        )
        rows = coverage_mc_compare(sc, sim, budget=args.budget)
        emp = np.array([r["empirical"] for r in rows])
        diff = np.abs(analytic - emp)
        header += ",p_c_mc,abs_diff"
        columns += [emp, diff]
        if args.check and np.max(diff) > args.budget:
            failed = True

    if args.check_lt_shortcut:
        shortcut = coverage_lt_shortcut(sc)
        sdiff = np.abs(analytic - shortcut)
        header += ",p_c_lt_shortcut,lt_shortcut_diff"
        columns += [shortcut, sdiff]
        if np.max(sdiff) > 1e-4:
            print(
                f"FAIL: transform-shortcut deviation {np.max(sdiff):.3e} > 1e-4",
                file=sys.stderr,
            )
            failed = True

    lines = [header]
    for vals in zip(*columns):
        lines.append(",".join(_fmt(v) for v in vals))
    _emit(args, lines)
    return 1 if failed else 0


def _cmd_validate(args) -> int:
    from .validate import format_report, run_validation

    beta = Fraction(args.beta) if args.beta else None
    if args.composition and beta is None:
        beta = Fraction(1, 4)
    checks = run_validation(quick=args.quick, composition_beta=beta)
    report = format_report(checks)
    lines = [f"backend: {backend_name()}", report]
    _emit(args, lines)
    return 0 if all(c.passed for c in checks) else 1


# ---------------------------------------------------------------------------
# parser and config file plumbing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="interfpdf",
        description="Interference-power distributions and coverage for Poisson fields",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, net=True):
        p.add_argument("--config", help="flat key = value file with flag defaults")
        p.add_argument("--output", "-o", help="output path ('-' = stdout, default)")
        p.add_argument("--dump-config", help="write the effective settings to a file")
        if net:
            p.add_argument("--eta", type=int, required=True, help="path-loss exponent (>= 3)")
            p.add_argument(
                "--lambda", dest="lam", type=float, required=True, help="density per km^2"
            )

    p = sub.add_parser("pdf", help="density: closed form vs Talbot inversion")
    common(p)
    _fading_args(p, what="interference")
    p.add_argument("--i-grid", default="log:0.05:50:200", help="kind:min:max:points")
    p.add_argument("--tol", type=float, default=1e-6, help="max |closed - talbot| allowed")
    p.add_argument("--talbot-nodes", type=int, default=32)
    p.set_defaults(func=_cmd_pdf)

    p = sub.add_parser("cdf", help="distribution function on a grid")
    common(p)
    _fading_args(p, what="interference")
    p.add_argument("--i-grid", default="log:0.05:50:200")
    p.add_argument("--talbot-nodes", type=int, default=32)
    p.set_defaults(func=_cmd_cdf)

    p = sub.add_parser("lt", help="interference Laplace transform")
    common(p)
    _fading_args(p, what="interference")
    p.add_argument("--s-grid", default="lin:0:5:51")
    p.set_defaults(func=_cmd_lt)

    p = sub.add_parser("simulate", help="Monte-Carlo trials")
    common(p)
    _fading_args(p, "interference", "interference")
    _fading_args(p, "signal", "signal")
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--window", type=float, default=40.0, help="square window width, km")
    p.add_argument("--r", type=float, default=0.25, help="serving distance, km")
    p.add_argument("--noise", type=float, default=0.0)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("coverage", help="coverage probability curves")
    common(p)
    _fading_args(p, "interference", "interference")
    _fading_args(p, "signal", "signal")
    p.add_argument("--t-grid-db", default="-10:20:16", help="min:max:points in dB")
    p.add_argument("--r", type=float, default=0.25)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--with-mc", action="store_true", help="add Monte-Carlo columns")
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--window", type=float, default=40.0)
    p.add_argument("--budget", type=float, default=0.03)
    p.add_argument("--check", action="store_true", help="exit 1 if any |diff| > budget")
    p.add_argument(
        "--check-lt-shortcut",
        action="store_true",
        help="compare against the Rayleigh-signal transform shortcut",
    )
    p.add_argument(
        "--use-xi",
        action="store_true",
        help="use the eta=3 closed-form inner integral instead of quadrature",
    )
    p.set_defaults(func=_cmd_coverage)

    p = sub.add_parser("validate", help="run the analytic self-check suite")
    common(p, net=False)
    p.add_argument("--quick", action="store_true", help="thinned grids, runs in seconds")
    p.add_argument("--composition", action="store_true", help="composition check only")
    p.add_argument("--beta", help="composition target (e.g. 1/4)")
    p.set_defaults(func=_cmd_validate)

    return parser


def _load_config(path: str) -> dict[str, str]:
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key = value, got {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            out[key.replace("_", "-")] = value
    return out


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> list[str]:
    """Prepend config-file entries as flags so CLI flags override them."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        parser.error("--config needs a path")
    entries = _load_config(argv[idx + 1])
    extra: list[str] = []
    for key, value in entries.items():
        if key == "command":
            continue
        if value.lower() in ("true", "yes"):
            extra.append(f"--{key}")
        else:
            # single-token form: values may start with '-' (dB grids)
            extra.append(f"--{key}={value}")
    # insert right after the subcommand name
    return argv[:1] + extra + argv[1:]


def _dump_config(args, argv: list[str]) -> None:
    skip = {"func", "config", "dump_config", "output"}
    lines = [f"command = {args.command}"]
    for key in sorted(vars(args)):
        if key in skip or key == "command":
            continue
        value = getattr(args, key)
        if value is None:
            continue
        if isinstance(value, bool):
            if value:
                lines.append(f"{key.replace('_', '-')} = true")
            continue
        lines.append(f"{key.replace('_', '-')} = {value}")
    with open(args.dump_config, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        argv = _apply_config(parser, argv)
        args = parser.parse_args(argv)
        if getattr(args, "dump_config", None):
            _dump_config(args, argv)
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
