"""Experiment drivers: trajectory runs with trace/snapshot emission, the
stabilizer sweep, and the manufactured-solution convergence study.

File formats
------------
Trace CSV      header ``step,time,energy,mass,linf,h1_seminorm``; floats with
               17 significant digits; LF line endings.
Sweep CSV      ``time,E_S=<v1>,E_S=<v2>,...`` with one row per common step.
Convergence    ``tau,l2_rel_err,l2_ratio,linf_rel_err,linf_ratio`` (ratio
               cells empty on the first row).
Snapshot       see snapshot.py (magic ``CHF1``).
Preview PGM    binary P5, maxval 255, pixel = round(255*clamp((u+1)/2, 0, 1)).
Manifest       the canonical config dialect plus resolved grid and version.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from ._version import __version__
from .config import serialize_config
from .diagnostics import TraceRecord, norms, trace_record
from .errors import ConfigError, NonFiniteState
from .initial_data import from_file, random_uniform, seven_circles, sinusoidal
from .scheme import (
    SchemeParams,
    SimState,
    build_multipliers,
    exact_manufactured_solution,
    initial_state,
    manufactured_forcing,
    step,
    step_forward_euler,
)
from .snapshot import write_snapshot
from .spectral import GridSpec, RealField, SpectralField, forward_transform, inverse_transform

DESK_SAMPLES = 128
PAPER_SAMPLES = 256

INTEGRATORS = ("ei", "forward_euler")
IC_KINDS = ("circles", "sin", "random", "file")


@dataclass(frozen=True)
class RunConfig:
    """A fully resolved trajectory-run description."""

    nu: float
    tau: float
    stabilizer: float
    grid: GridSpec
    dealias: bool = True
    ic_kind: str = "circles"
    ic_seed: int = 0
    ic_amplitude: float = 0.5
    ic_sharpness: Optional[float] = None
    ic_path: Optional[str] = None
    integrator: str = "ei"
    steps: int = 0
    trace_stride: int = 1
    snapshot_times: tuple = ()
    out_dir: Optional[str] = None
    beta: float = 1.0
    note: str = ""

    def __post_init__(self):
        if self.integrator not in INTEGRATORS:
            raise ConfigError(f"unknown integrator: {self.integrator}")
        if self.ic_kind not in IC_KINDS:
            raise ConfigError(f"unknown ic.kind: {self.ic_kind}")
        if self.ic_kind == "file" and not self.ic_path:
            raise ConfigError("ic.kind = file requires ic.path")
        if self.steps < 0:
            raise ConfigError(f"steps must be >= 0, got {self.steps}")
        if self.trace_stride < 1:
            raise ConfigError(f"trace_stride must be >= 1, got {self.trace_stride}")
        for t in self.snapshot_times:
            if t < -0.5 * self.tau or t > (self.steps + 0.5) * self.tau:
                raise ConfigError(f"snapshot time {t} outside the run horizon")

    @classmethod
    def from_typed(cls, typed: dict, default_samples: int = DESK_SAMPLES) -> "RunConfig":
        for required in ("nu", "tau", "S"):
            if required not in typed:
                raise ConfigError(f"missing required config key: {required}")
        tau = typed["tau"]
        grid = resolve_grid(typed.get("N"), typed.get("samples"), default_samples)
        steps = resolve_steps(typed.get("steps"), typed.get("T"), tau)
        return cls(
            nu=typed["nu"],
            tau=tau,
            stabilizer=typed["S"],
            grid=grid,
            dealias=typed.get("dealias", True),
            ic_kind=typed.get("ic.kind", "circles"),
            ic_seed=typed.get("ic.seed", 0),
            ic_amplitude=typed.get("ic.amplitude", 0.5),
            ic_sharpness=typed.get("ic.sharpness"),
            ic_path=typed.get("ic.path"),
            integrator=typed.get("integrator", "ei"),
            steps=steps,
            trace_stride=typed.get("trace_stride", 1),
            snapshot_times=tuple(typed.get("snapshot_times", ())),
            out_dir=typed.get("out_dir"),
            beta=typed.get("beta", 1.0),
            note=typed.get("note", ""),
        )

    def to_typed(self) -> dict:
        typed = {
            "nu": self.nu,
            "tau": self.tau,
            "S": self.stabilizer,
            "N": self.grid.modes_per_axis,
            "samples": self.grid.samples_per_axis,
            "dealias": self.dealias,
            "integrator": self.integrator,
            "steps": self.steps,
            "trace_stride": self.trace_stride,
            "snapshot_times": self.snapshot_times,
            "ic.kind": self.ic_kind,
            "ic.seed": self.ic_seed,
            "ic.amplitude": self.ic_amplitude,
            "beta": self.beta,
        }
        if self.ic_sharpness is not None:
            typed["ic.sharpness"] = self.ic_sharpness
        if self.ic_path is not None:
            typed["ic.path"] = self.ic_path
        if self.out_dir is not None:
            typed["out_dir"] = self.out_dir
        if self.note:
            typed["note"] = self.note
        return typed

    def scheme_params(self, forcing=None) -> SchemeParams:
        return SchemeParams(nu=self.nu, tau=self.tau, stabilizer=self.stabilizer,
                            modes_per_axis=self.grid.modes_per_axis,
                            dealias=self.dealias, forcing=forcing)


def resolve_grid(n: Optional[int], samples: Optional[int],
                 default_samples: int = DESK_SAMPLES) -> GridSpec:
    if n is None and samples is None:
        return GridSpec.from_samples(default_samples)
    if samples is None:
        return GridSpec.from_modes(n)
    if n is None:
        return GridSpec.from_samples(samples)
    return GridSpec(n, samples)


def resolve_steps(steps: Optional[int], total_time: Optional[float], tau: float) -> int:
    if steps is None and total_time is None:
        raise ConfigError("either steps or T must be given")
    if steps is None:
        steps = round(total_time / tau)
    if total_time is not None and abs(steps * tau - total_time) > 0.5 * tau:
        raise ConfigError(
            f"steps and T are inconsistent: {steps} * {tau} != {total_time}")
    return steps


@dataclass(frozen=True)
class RunResult:
    config: RunConfig
    trace: tuple
    snapshots: tuple  # (time, RealField) pairs
    failed_step: Optional[int]
    final_state: SimState


def build_initial_field(cfg: RunConfig) -> RealField:
    if cfg.ic_kind == "circles":
        sharp = cfg.nu if cfg.ic_sharpness is None else cfg.ic_sharpness
        return seven_circles(cfg.grid, sharpness=sharp)
    if cfg.ic_kind == "sin":
        return sinusoidal(cfg.grid, cfg.ic_amplitude)
    if cfg.ic_kind == "random":
        return random_uniform(cfg.grid, cfg.ic_seed)
    return from_file(cfg.ic_path, cfg.grid)


def run(cfg: RunConfig, forcing=None) -> RunResult:
    """Step the configured integrator, collecting trace records and snapshots.

    A NonFiniteState abort is treated as data: the partial trace is kept (and
    written, if out_dir is set) with the failing step recorded.
    """
    params = cfg.scheme_params(forcing)
    mult = build_multipliers(params, cfg.grid)
    advance = step_forward_euler if cfg.integrator == "forward_euler" else step
    state = initial_state(build_initial_field(cfg))

    snap_steps = {}
    for t in cfg.snapshot_times:
        snap_steps.setdefault(min(max(round(t / cfg.tau), 0), cfg.steps), t)

    trace = [trace_record(0, 0.0, state.field, cfg.nu)]
    snapshots = []
    if 0 in snap_steps:
        snapshots.append((0.0, inverse_transform(state.field)))
    failed_step = None
    last_recorded = 0
    while state.step_index < cfg.steps:
        try:
            if cfg.integrator == "forward_euler":
                state = advance(state, params)
            else:
                state = advance(state, mult, params)
        except NonFiniteState as exc:
            failed_step = exc.step
            break
        n = state.step_index
        if n % cfg.trace_stride == 0 or n == cfg.steps:
            trace.append(trace_record(n, state.time, state.field, cfg.nu))
            last_recorded = n
        if n in snap_steps:
            snapshots.append((state.time, inverse_transform(state.field)))
    if failed_step is not None and last_recorded != state.step_index:
        trace.append(trace_record(state.step_index, state.time, state.field, cfg.nu))

    result = RunResult(config=cfg, trace=tuple(trace), snapshots=tuple(snapshots),
                       failed_step=failed_step, final_state=state)
    if cfg.out_dir:
        write_run_outputs(result)
    return result


def sweep_stabilizer(cfg: RunConfig, s_values: Sequence[float]) -> dict:
    """Run `run` once per stabilizer value and emit a combined energy CSV."""
    if not s_values:
        raise ConfigError("S_values must contain at least one value")
    results = {}
    for s in s_values:
        sub = replace(cfg, stabilizer=s,
                      out_dir=os.path.join(cfg.out_dir, f"S_{s:g}") if cfg.out_dir else None)
        results[s] = run(sub)
    if cfg.out_dir:
        os.makedirs(cfg.out_dir, exist_ok=True)
        emit_sweep_csv(results, os.path.join(cfg.out_dir, "sweep.csv"))
        typed = cfg.to_typed()
        typed["S_values"] = tuple(s_values)
        write_manifest(typed, os.path.join(cfg.out_dir, "manifest.txt"),
                       cfg.grid.padded_samples)
    return results


@dataclass(frozen=True)
class ConvergenceRow:
    tau: float
    l2_rel_err: float
    linf_rel_err: float
    l2_ratio: Optional[float] = None
    linf_ratio: Optional[float] = None


def convergence_study(nu: float, stabilizer: float, grid: GridSpec, tau0: float,
                      halvings: int, total_time: float, dealias: bool = True,
                      out_dir: Optional[str] = None) -> list:
    """Forced-run error ladder against the exact manufactured solution.

    For each tau = tau0/2^k, k = 0..halvings, integrates from
    u0 = 0.5 sin x sin y to T and reports relative L2 and L-infinity errors;
    consecutive-error ratios near 2 certify first order.
    """
    if halvings < 0:
        raise ConfigError(f"halvings must be >= 0, got {halvings}")
    rows = []
    u0 = forward_transform(sinusoidal(grid, 0.5))
    exact = exact_manufactured_solution(total_time, grid)
    exact_hat = forward_transform(exact)
    exact_l2 = norms(exact_hat).l2
    exact_linf = float(np.abs(exact.values).max())
    for k in range(halvings + 1):
        tau = tau0 / 2 ** k
        nsteps_f = total_time / tau
        nsteps = round(nsteps_f)
        if abs(nsteps_f - nsteps) > 1e-9 * max(1.0, nsteps_f):
            raise ConfigError(f"T = {total_time} is not a multiple of tau = {tau}")
        params = SchemeParams(nu=nu, tau=tau, stabilizer=stabilizer,
                              modes_per_axis=grid.modes_per_axis, dealias=dealias,
                              forcing=lambda t, g: manufactured_forcing(t, g, nu))
        mult = build_multipliers(params, grid)
        state = SimState(0, 0.0, u0)
        for _ in range(nsteps):
            state = step(state, mult, params)
        diff = SpectralField(grid, state.field.coeffs - exact_hat.coeffs)
        err_l2 = norms(diff).l2 / exact_l2
        err_linf = (float(np.abs(inverse_transform(state.field).values - exact.values).max())
                    / exact_linf)
        if rows:
            rows.append(ConvergenceRow(tau, err_l2, err_linf,
                                       rows[-1].l2_rel_err / err_l2,
                                       rows[-1].linf_rel_err / err_linf))
        else:
            rows.append(ConvergenceRow(tau, err_l2, err_linf))
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        emit_convergence_csv(rows, os.path.join(out_dir, "convergence.csv"))
    return rows


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return f"{x:.17g}"


def emit_trace_csv(trace: Sequence[TraceRecord], path) -> None:
    lines = ["step,time,energy,mass,linf,h1_seminorm"]
    for r in trace:
        lines.append(",".join([str(r.step), _fmt(r.time), _fmt(r.energy),
                               _fmt(r.mass), _fmt(r.linf), _fmt(r.h1_seminorm)]))
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def emit_sweep_csv(results: dict, path) -> None:
    # early termination respected: keep only rows every run reached
    count = min(len(r.trace) for r in results.values())
    header = "time," + ",".join(f"E_S={s:g}" for s in results)
    lines = [header]
    traces = list(results.values())
    for i in range(count):
        t = traces[0].trace[i].time
        lines.append(",".join([_fmt(t)] + [_fmt(r.trace[i].energy) for r in traces]))
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def emit_convergence_csv(rows: Sequence[ConvergenceRow], path) -> None:
    lines = ["tau,l2_rel_err,l2_ratio,linf_rel_err,linf_ratio"]
    for r in rows:
        lines.append(",".join([
            _fmt(r.tau), _fmt(r.l2_rel_err),
            _fmt(r.l2_ratio) if r.l2_ratio is not None else "",
            _fmt(r.linf_rel_err),
            _fmt(r.linf_ratio) if r.linf_ratio is not None else "",
        ]))
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def emit_snapshot(field: RealField, time: float, path) -> None:
    write_snapshot(field, time, path)


def emit_pgm(field: RealField, path) -> None:
    m = field.grid.samples_per_axis
    pixels = np.clip((field.values + 1.0) / 2.0, 0.0, 1.0)
    data = np.round(255.0 * pixels).astype(np.uint8)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{m} {m}\n255\n".encode("ascii"))
        fh.write(data.tobytes())


def write_manifest(typed: dict, path, padded_samples: Optional[int] = None,
                   extra: Optional[dict] = None) -> None:
    lines = [serialize_config(typed).rstrip("\n"),
             f"code_version = {__version__}"]
    if padded_samples is not None:
        lines.append(f"padded_samples = {padded_samples}")
    for key, value in (extra or {}).items():
        lines.append(f"{key} = {value}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_run_outputs(result: RunResult) -> None:
    cfg = result.config
    out = cfg.out_dir
    os.makedirs(out, exist_ok=True)
    emit_trace_csv(result.trace, os.path.join(out, "trace.csv"))
    extra = {}
    if result.failed_step is not None:
        extra["failed_step"] = result.failed_step
    write_manifest(cfg.to_typed(), os.path.join(out, "manifest.txt"),
                   cfg.grid.padded_samples, extra)
    for t, fld in result.snapshots:
        stem = os.path.join(out, f"snapshot_t{t:g}")
        emit_snapshot(fld, t, stem + ".chf")
        emit_pgm(fld, stem + ".pgm")
