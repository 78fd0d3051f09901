"""Command-line front end binding config files to the experiment drivers.

Subcommands: run, sweep-s, converge, diagnose, ic.  Every config key is also
available as a ``--<key> <value>`` flag; flags override file values.  Exit
codes: 0 success, 1 validation error (the message names the offending
key/flag), 2 trajectory terminated by a non-finite state (outputs for the
completed portion are still written).
"""
from __future__ import annotations

import argparse
import os
import sys
import time as _time
from typing import Optional, Sequence

from ._version import __version__
from .config import (
    CONVERGE_KEYS,
    IC_KEYS,
    KEY_SPECS,
    RUN_KEYS,
    SWEEP_KEYS,
    load_config_file,
    typed_config,
)
from .diagnostics import certify_symbol_inequalities, default_sweep, symbol_values
from .errors import ConfigError
from .harness import (
    DESK_SAMPLES,
    PAPER_SAMPLES,
    RunConfig,
    build_initial_field,
    convergence_study,
    emit_pgm,
    emit_snapshot,
    resolve_grid,
    run,
    sweep_stabilizer,
)


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so main() owns the exit code."""

    def error(self, message):
        raise ConfigError(message)


def _add_key_flags(parser: _Parser, keys) -> None:
    parser.add_argument("--config", metavar="PATH", help="config file to load first")
    for key in KEY_SPECS:
        if key in keys:
            parser.add_argument(f"--{key}", dest=key, metavar="VALUE", default=None)


def _merged_config(ns: argparse.Namespace, keys) -> dict:
    typed = load_config_file(ns.config, keys) if ns.config else {}
    overrides = {k: v for k, v in vars(ns).items() if k in KEY_SPECS and v is not None}
    typed.update(typed_config(overrides, keys))
    return typed


def _default_samples(ns: argparse.Namespace) -> int:
    return PAPER_SAMPLES if getattr(ns, "paper_scale", False) else DESK_SAMPLES


def _build_parser() -> _Parser:
    parser = _Parser(prog="chei", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"chei {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="integrate one trajectory", add_help=True)
    _add_key_flags(p_run, RUN_KEYS)
    p_run.add_argument("--paper-scale", action="store_true",
                       help="default the grid to 256 samples instead of 128")

    p_sweep = sub.add_parser("sweep-s", help="rerun one setup across stabilizer values")
    _add_key_flags(p_sweep, SWEEP_KEYS)
    p_sweep.add_argument("--paper-scale", action="store_true")

    p_conv = sub.add_parser("converge", help="manufactured-solution error ladder")
    _add_key_flags(p_conv, CONVERGE_KEYS)
    p_conv.add_argument("--paper-scale", action="store_true")

    p_diag = sub.add_parser("diagnose", help="certify the per-mode symbol inequalities")
    p_diag.add_argument("--sweep", default="default", metavar="NAME",
                        help="named sweep to certify (only 'default' is defined)")
    p_diag.add_argument("--count", type=int, default=100_000,
                        help="tuples in the sweep (default 100000)")
    p_diag.add_argument("--seed", type=int, default=31281)
    p_diag.add_argument("--nu", type=float, default=None)
    p_diag.add_argument("--tau", type=float, default=None)
    p_diag.add_argument("--kappa-sq", type=float, default=None)

    p_ic = sub.add_parser("ic", help="render an initial condition to snapshot + PGM")
    _add_key_flags(p_ic, IC_KEYS)
    p_ic.add_argument("--paper-scale", action="store_true")
    return parser


def _cmd_run(ns: argparse.Namespace) -> int:
    cfg = RunConfig.from_typed(_merged_config(ns, RUN_KEYS), _default_samples(ns))
    t0 = _time.perf_counter()
    result = run(cfg)
    wall = _time.perf_counter() - t0
    first, last = result.trace[0], result.trace[-1]
    print(f"steps {last.step}/{cfg.steps}  t = {last.time:g}  "
          f"E {first.energy:.6f} -> {last.energy:.6f}  ({wall:.1f} s)")
    if cfg.out_dir:
        print(f"outputs in {cfg.out_dir}")
    if result.failed_step is not None:
        print(f"error: non-finite state at step {result.failed_step}", file=sys.stderr)
        return 2
    return 0


def _cmd_sweep(ns: argparse.Namespace) -> int:
    typed = _merged_config(ns, SWEEP_KEYS)
    if "S_values" not in typed or not typed["S_values"]:
        raise ConfigError("missing required config key: S_values")
    s_values = typed.pop("S_values")
    typed.setdefault("S", s_values[0])
    cfg = RunConfig.from_typed(typed, _default_samples(ns))
    results = sweep_stabilizer(cfg, s_values)
    for s, res in results.items():
        last = res.trace[-1]
        status = (f"died at step {res.failed_step}" if res.failed_step is not None
                  else f"reached step {last.step}")
        print(f"S = {s:g}: {status}, final recorded E = {last.energy:.6f}")
    if cfg.out_dir:
        print(f"outputs in {cfg.out_dir}")
    return 0


def _cmd_converge(ns: argparse.Namespace) -> int:
    typed = _merged_config(ns, CONVERGE_KEYS)
    for required in ("nu", "S", "tau0", "T"):
        if required not in typed:
            raise ConfigError(f"missing required config key: {required}")
    grid = resolve_grid(typed.get("N"), typed.get("samples"), _default_samples(ns))
    rows = convergence_study(
        nu=typed["nu"], stabilizer=typed["S"], grid=grid,
        tau0=typed["tau0"], halvings=typed.get("halvings", 6),
        total_time=typed["T"], dealias=typed.get("dealias", True),
        out_dir=typed.get("out_dir"))
    print(f"{'tau':>12}  {'l2_rel_err':>12}  {'ratio':>7}  {'linf_rel_err':>12}  {'ratio':>7}")
    for r in rows:
        l2r = f"{r.l2_ratio:.3f}" if r.l2_ratio is not None else ""
        lir = f"{r.linf_ratio:.3f}" if r.linf_ratio is not None else ""
        print(f"{r.tau:>12.6g}  {r.l2_rel_err:>12.4e}  {l2r:>7}  "
              f"{r.linf_rel_err:>12.4e}  {lir:>7}")
    if typed.get("out_dir"):
        print(f"outputs in {typed['out_dir']}")
    return 0


def _cmd_diagnose(ns: argparse.Namespace) -> int:
    scalars = (ns.nu, ns.tau, ns.kappa_sq)
    if any(v is not None for v in scalars):
        if any(v is None for v in scalars):
            raise ConfigError("scalar diagnosis needs all of --nu, --tau, --kappa-sq")
        report = symbol_values(ns.nu, ns.tau, ns.kappa_sq)
        print(f"nu = {report.nu:g}  tau = {report.tau:g}  kappa^2 = {report.kappa_sq:g}")
        print(f"sqrt(A) = {report.sqrt_a:.10g}  sqrt(B) = {report.sqrt_b:.10g}  "
              f"L = {report.big_l:.10g}  M = {report.big_m:.10g}")
        for name, ok in report.flags.items():
            print(f"  {name}: {'ok' if ok else 'VIOLATED'}")
        return 0 if report.passed else 1
    if ns.sweep != "default":
        raise ConfigError(f"unknown sweep: {ns.sweep}")
    violations = certify_symbol_inequalities(default_sweep(ns.count, ns.seed))
    print(f"{ns.count} tuples checked, {len(violations)} violations")
    if violations:
        worst = violations[0]
        bad = [k for k, v in worst.flags.items() if not v]
        print(f"error: first violation at nu = {worst.nu:g}, tau = {worst.tau:g}, "
              f"kappa^2 = {worst.kappa_sq:g} ({', '.join(bad)})", file=sys.stderr)
        return 1
    return 0


def _cmd_ic(ns: argparse.Namespace) -> int:
    typed = _merged_config(ns, IC_KEYS)
    if "out_dir" not in typed:
        raise ConfigError("missing required config key: out_dir")
    grid = resolve_grid(typed.get("N"), typed.get("samples"), _default_samples(ns))
    kind = typed.get("ic.kind", "circles")
    cfg = RunConfig(
        nu=typed.get("nu", 0.01), tau=1.0, stabilizer=0.0, grid=grid,
        ic_kind=kind, ic_seed=typed.get("ic.seed", 0),
        ic_amplitude=typed.get("ic.amplitude", 0.5),
        ic_sharpness=typed.get("ic.sharpness"), ic_path=typed.get("ic.path"),
        steps=0)
    field = build_initial_field(cfg)
    out = typed["out_dir"]
    os.makedirs(out, exist_ok=True)
    stem = os.path.join(out, f"ic_{kind}")
    emit_snapshot(field, 0.0, stem + ".chf")
    emit_pgm(field, stem + ".pgm")
    print(f"wrote {stem}.chf and {stem}.pgm")
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "sweep-s": _cmd_sweep,
    "converge": _cmd_converge,
    "diagnose": _cmd_diagnose,
    "ic": _cmd_ic,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(list(sys.argv[1:] if argv is None else argv))
        return _COMMANDS[ns.command](ns)
    except ValueError as exc:
        # covers ConfigError, MalformedFile, GridMismatch, NonHermitianInput
        # and parameter validation; the message names the offender
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
