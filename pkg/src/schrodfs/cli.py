"""Command-line front end.

Subcommands: build (dump a series), sweep (convergence experiment), verify
(invariant suites), audit (per-slice norm growth), decay (implicit spatial
decay).  A JSON config file may supply any long-flag value; flags given on
the command line win.  Exit codes: 0 success, 2 bad configuration, 3 mesh
ratio constraint violation, 4 numerical failure, 1 unexpected error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import (
    build_series,
    check_stability,
    convergence_sweep,
    horizon_steps,
    norm_growth_audit,
)
from .errors import ConfigurationError, EvaluationDomainError, NumericalError, StabilityError
from .implicit_fs import SOLVER_METHODS, build_implicit_fs, verify_decay
from .lattice import LatticeSpec
from .reporting import (
    figure_path_for,
    render_audit_figure,
    render_decay_figure,
    render_sweep_figure,
    write_audit_csv,
    write_decay_csv,
    write_series_json,
    write_sweep_csv,
)
from .verify import run_suites

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG = 2
EXIT_CONSTRAINT = 3
EXIT_NUMERICAL = 4

# flags a subcommand cannot run without; they may arrive via --config,
# so argparse-level required= is not used
REQUIRED = {
    "build": ("scheme", "h", "tau", "n_half", "k_max", "out"),
    "sweep": ("scheme", "h", "cfl", "t0", "out"),
    "verify": (),
    "audit": ("scheme", "h", "tau", "n_half", "k_max", "out"),
    "decay": ("h", "tau", "n_half", "k_max", "out"),
}


def _add_spec_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--h", type=float, help="spatial mesh width")
    p.add_argument("--tau", type=float, help="time step")
    p.add_argument("--n-half", type=int, help="points per half axis")
    p.add_argument("--k-max", type=int, help="number of time steps")


def _add_scheme_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scheme", choices=("explicit", "implicit"))
    p.add_argument("--boundary", choices=("zero", "periodic"), default="zero",
                   help="neighbor treatment for the explicit time-stepping route")
    p.add_argument("--method", choices=SOLVER_METHODS, default="spectral",
                   help="solver for implicit steps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fs",
        description="Discrete fundamental solutions of the backward "
                    "Schroedinger difference operator.",
    )
    parser.add_argument("--config", help="JSON file with default flag values")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a series and dump it as JSON")
    _add_scheme_flags(p)
    _add_spec_flags(p)
    p.add_argument("--route", choices=("stepping", "spectral"), default="stepping",
                   help="construction route for the explicit scheme")
    p.add_argument("--out", help="output JSON path")

    p = sub.add_parser("sweep", help="convergence sweep over a mesh schedule")
    _add_scheme_flags(p)
    p.add_argument("--h", help="comma-separated strictly decreasing mesh widths")
    p.add_argument("--cfl", type=float, help="mesh ratio tau/h^2")
    p.add_argument("--T0", type=float, dest="t0",
                   help="common time horizon (must sit on every time lattice)")
    p.add_argument("--n-half", type=int, default=None,
                   help="points per half axis (default: horizon steps of the finest mesh)")
    p.add_argument("--k-max", type=int, default=None,
                   help="time steps per run (default: the horizon steps of each mesh)")
    p.add_argument("--out", help="output CSV path")
    p.add_argument("--no-figures", action="store_true", help="skip the PNG companion")

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", default="all", help="comma-separated suite names, or all")

    p = sub.add_parser("audit", help="per-slice l1 norm audit of one series")
    _add_scheme_flags(p)
    _add_spec_flags(p)
    p.add_argument("--out", help="output CSV path")
    p.add_argument("--no-figures", action="store_true", help="skip the PNG companion")

    p = sub.add_parser("decay", help="spatial decay report for the implicit series")
    _add_spec_flags(p)
    p.add_argument("--method", choices=SOLVER_METHODS, default="spectral")
    p.add_argument("--out", help="output CSV path")
    p.add_argument("--no-figures", action="store_true", help="skip the PNG companion")

    return parser


def _all_dests(parser: argparse.ArgumentParser) -> set[str]:
    dests = {a.dest for a in parser._actions}
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for sp in action.choices.values():
                dests |= {a.dest for a in sp._actions}
    dests.discard("help")
    dests.discard("command")
    return dests


def parse_args(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    """Two-pass parse: config file values become defaults, flags override."""
    first, _ = parser.parse_known_args(argv)
    if getattr(first, "config", None):
        with open(first.config, encoding="utf-8") as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise ConfigurationError(f"config file {first.config} must hold a JSON object")
        defaults = {str(k).replace("-", "_"): v for k, v in loaded.items()}
        unknown = set(defaults) - _all_dests(parser)
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        parser.set_defaults(**defaults)
        for action in parser._actions:
            if isinstance(action, argparse._SubParsersAction):
                for sp in action.choices.values():
                    sp.set_defaults(**{k: v for k, v in defaults.items()
                                       if k in {a.dest for a in sp._actions}})
    args = parser.parse_args(argv)
    missing = [name for name in REQUIRED[args.command]
               if getattr(args, name, None) is None]
    if missing:
        flags = ", ".join("--" + m.replace("_", "-").replace("t0", "T0") for m in missing)
        raise ConfigurationError(f"{args.command} needs {flags} (flag or config file)")
    return args


def _make_spec(args) -> LatticeSpec:
    return LatticeSpec(h=args.h, tau=args.tau, n_half=args.n_half, k_max=args.k_max)


def _cmd_build(args) -> int:
    spec = _make_spec(args)
    if args.scheme == "explicit":
        check_stability(spec)
    if args.scheme == "explicit" and args.route == "spectral":
        from .explicit_fs import build_explicit_fs_spectral

        fs = build_explicit_fs_spectral(spec)
    else:
        fs = build_series(spec, args.scheme, boundary=args.boundary, method=args.method)
    write_series_json(args.out, fs)
    print(f"wrote {args.scheme} series ({spec.k_max + 1} slices, "
          f"{spec.n_points}^3 window) to {args.out}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    try:
        hs = [float(tok) for tok in str(args.h).split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigurationError(f"could not parse --h list {args.h!r}: {exc}") from exc
    if not hs:
        raise ConfigurationError("--h must name at least one mesh width")
    taus = [args.cfl * h * h for h in hs]
    horizons = []
    for h, tau in zip(hs, taus):
        probe = LatticeSpec(h=h, tau=tau, n_half=1, k_max=10**9)
        horizons.append(horizon_steps(probe, args.t0))
    n_half = args.n_half if args.n_half is not None else max(horizons)
    schedule = []
    for h, tau, m0 in zip(hs, taus, horizons):
        k_max = args.k_max if args.k_max is not None else m0
        schedule.append(LatticeSpec(h=h, tau=tau, n_half=n_half, k_max=k_max))
    sweep = convergence_sweep(schedule, args.scheme, args.t0,
                              boundary=args.boundary, method=args.method)
    write_sweep_csv(args.out, sweep)
    lines = [f"wrote {len(sweep)} rows to {args.out}"]
    if not args.no_figures:
        fig = figure_path_for(args.out)
        render_sweep_figure(fig, sweep)
        lines.append(f"wrote figure to {fig}")
    for r in sweep:
        lines.append(
            f"  h={r.h:g} tau={r.tau:g} total={r.total_error_bounded_interval:.6e} "
            f"bound={r.closed_form_error_bound:.6e} bound_ok={str(r.bound_satisfied).lower()}"
        )
    trend = "strictly decreasing" if sweep.strictly_decreasing else "NOT monotone"
    lines.append(f"measured totals are {trend} over the schedule")
    print("\n".join(lines))
    return EXIT_OK


def _cmd_verify(args) -> int:
    names = [tok.strip() for tok in str(args.suite).split(",") if tok.strip()]
    results = run_suites(names)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.suite}/{r.name}: {r.detail}")
    failed = sum(1 for r in results if not r.passed)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_NUMERICAL


def _cmd_audit(args) -> int:
    spec = _make_spec(args)
    if args.scheme == "explicit":
        check_stability(spec)
    fs = build_series(spec, args.scheme, boundary=args.boundary, method=args.method)
    rows = norm_growth_audit(fs)
    write_audit_csv(args.out, fs, rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    if not args.no_figures:
        fig = figure_path_for(args.out)
        render_audit_figure(fig, fs, rows)
        print(f"wrote figure to {fig}")
    flagged = [r.k for r in rows if r.exceeds_unit_bound]
    if flagged:
        print(f"unit-norm claim exceeded at k = {flagged}")
    else:
        print("no slice exceeds the unit-norm claim")
    return EXIT_OK


def _cmd_decay(args) -> int:
    spec = _make_spec(args)
    fs = build_implicit_fs(spec, method=args.method)
    report = verify_decay(fs)
    write_decay_csv(args.out, report)
    print(f"wrote {len(report.per_slice)} rows to {args.out}")
    if not args.no_figures:
        fig = figure_path_for(args.out)
        render_decay_figure(fig, report)
        print(f"wrote figure to {fig}")
    print(f"max boundary/origin magnitude ratio: {report.max_boundary_ratio:.3e}")
    return EXIT_OK


_COMMANDS = {
    "build": _cmd_build,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
    "audit": _cmd_audit,
    "decay": _cmd_decay,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        parser = build_parser()
        args = parse_args(parser, argv)
        return _COMMANDS[args.command](args)
    except StabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except (ConfigurationError, EvaluationDomainError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except Exception as exc:  # pragma: no cover - last-resort diagnostics
        print(f"unexpected error: {exc}", file=sys.stderr)
        return EXIT_UNEXPECTED


if __name__ == "__main__":
    raise SystemExit(main())
