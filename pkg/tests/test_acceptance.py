"""Acceptance gate: eight primary criteria, one test (one pass/fail line) each.

The two long pattern runs are session fixtures shared by criteria 2, 3, 4,
and 8, so the whole gate costs two 500-step runs plus the convergence ladder.
"""
import math
import time

import numpy as np
import pytest

from chei import (
    GridSpec,
    RealField,
    RunConfig,
    SchemeParams,
    SpectralField,
    apply_nonlinearity_dealiased,
    build_multipliers,
    certify_symbol_inequalities,
    convergence_study,
    default_sweep,
    forward_transform,
    initial_state,
    inverse_transform,
    run,
    step,
)
from oracles import brute_forward, oracle_ei_step, rk4_reference

# Reference absolute-error ladders for the nu=1, S=0.1, T=0.5 manufactured
# setup with tau = 0.01/2^k.  l2 is the area-normalized L2 error
# ||e||_{L2} / (2 pi)^2, linf the max over grid points; the acceptance window
# is a factor of ten either way.
REFERENCE_ABS_L2 = (9.099e-05, 4.523e-05, 2.255e-05, 1.126e-05,
                    5.624e-06, 2.811e-06)
REFERENCE_ABS_LINF = (1.156e-03, 5.745e-04, 2.864e-04, 1.430e-04,
                      7.143e-05, 3.570e-05)

CIRCLES_BASE = {"nu": 0.01, "tau": 0.1, "samples": 128, "steps": 500}


def _report(criterion: int, detail: str) -> None:
    print(f"[ACCEPTANCE #{criterion}] PASS  {detail}")


@pytest.fixture(scope="session")
def convergence_ladder():
    grid = GridSpec.from_samples(128)
    t0 = time.perf_counter()
    rows = convergence_study(nu=1.0, stabilizer=0.1, grid=grid,
                             tau0=0.01, halvings=6, total_time=0.5)
    return rows, time.perf_counter() - t0


@pytest.fixture(scope="session")
def circles_stabilized():
    cfg = RunConfig.from_typed(dict(CIRCLES_BASE, S=0.1))
    t0 = time.perf_counter()
    return run(cfg), time.perf_counter() - t0


@pytest.fixture(scope="session")
def circles_unstabilized():
    cfg = RunConfig.from_typed(dict(CIRCLES_BASE, S=0.0))
    t0 = time.perf_counter()
    return run(cfg), time.perf_counter() - t0


def test_criterion_1_convergence_order(convergence_ladder):
    rows, wall = convergence_ladder
    assert wall < 300.0, f"ladder took {wall:.1f} s"
    assert len(rows) == 7

    ratios = [r.l2_ratio for r in rows[1:]]
    assert all(1.9 <= q <= 2.1 for q in ratios), ratios

    taus = np.array([r.tau for r in rows])
    errs = np.array([r.l2_rel_err for r in rows])
    slope = float(np.polyfit(np.log(taus), np.log(errs), 1)[0])
    assert 0.95 <= slope <= 1.05, slope

    # exact-solution norms convert the relative errors to absolute ones:
    # at T=0.5 the profile is a sin x sin y with a = 0.5 e^{-1/2}, so
    # ||u_e||_L2 = a pi (area-normalized: a / (4 pi)) and max|u_e| = a
    amp = 0.5 * math.exp(-0.5)
    for row, ref_l2, ref_linf in zip(rows, REFERENCE_ABS_L2,
                                     REFERENCE_ABS_LINF):
        abs_l2 = row.l2_rel_err * amp / (4.0 * math.pi)
        abs_linf = row.linf_rel_err * amp
        assert ref_l2 / 10.0 <= abs_l2 <= ref_l2 * 10.0, (row.tau, abs_l2)
        assert ref_linf / 10.0 <= abs_linf <= ref_linf * 10.0, (row.tau, abs_linf)

    _report(1, f"ratios {min(ratios):.3f}..{max(ratios):.3f}, "
               f"slope {slope:.3f}, {wall:.1f} s")


def test_criterion_2_energy_dissipation(circles_stabilized):
    res, wall = circles_stabilized
    assert wall < 120.0, f"run took {wall:.1f} s"
    assert res.failed_step is None
    energies = [r.energy for r in res.trace]
    assert len(energies) == 501
    violations = [n for n, (a, b) in enumerate(zip(energies, energies[1:]))
                  if b > a + 1e-10 * (1.0 + abs(a))]
    assert violations == []
    _report(2, f"E {energies[0]:.6f} -> {energies[-1]:.6f} over 500 steps, "
               f"monotone, {wall:.1f} s")


def test_criterion_3_instability_without_stabilizer(circles_unstabilized):
    res, _ = circles_unstabilized
    energies = [r.energy for r in res.trace]
    rises = [n for n, (a, b) in enumerate(zip(energies, energies[1:]))
             if b > a]
    assert rises, "expected at least one energy increase with S = 0"
    detail = f"first energy rise at step {rises[0]}"
    if res.failed_step is not None:
        detail += f", non-finite at step {res.failed_step}"
    _report(3, detail)


def test_criterion_4_mass_conservation(circles_stabilized,
                                       circles_unstabilized):
    worst = 0.0
    for res, _ in (circles_stabilized, circles_unstabilized):
        masses = [r.mass for r in res.trace]
        drift = max(abs(m - masses[0]) for m in masses) / abs(masses[0])
        worst = max(worst, drift)
        assert drift <= 1e-12, drift
    _report(4, f"worst relative mass drift {worst:.2e}")


def test_criterion_5_small_grid_oracle_equivalence():
    grid = GridSpec(4, 12)
    rng = np.random.default_rng(20260814)
    worst = 0.0
    for _ in range(20):
        values = rng.uniform(-1.0, 1.0, (12, 12))
        nu = rng.uniform(0.05, 2.0)
        tau = rng.uniform(0.01, 0.5)
        stab = rng.uniform(0.0, 1.0)

        p = SchemeParams(nu=nu, tau=tau, stabilizer=stab, modes_per_axis=4)
        mult = build_multipliers(p, grid)
        produced = step(initial_state(RealField(grid, values)), mult, p)

        reference = oracle_ei_step(brute_forward(values, 4), nu, tau, stab)
        rel = (np.max(np.abs(produced.field.coeffs - reference))
               / np.max(np.abs(reference)))
        worst = max(worst, float(rel))
    assert worst < 1e-11, worst
    _report(5, f"20 random states, worst relative deviation {worst:.2e}")


def test_criterion_6_symbol_certification():
    t0 = time.perf_counter()
    violations = certify_symbol_inequalities(default_sweep(100_000))
    wall = time.perf_counter() - t0
    assert violations == []
    assert wall < 10.0, f"sweep took {wall:.2f} s"
    _report(6, f"100000 tuples, zero violations, {wall:.2f} s")


def test_criterion_7_local_order():
    grid = GridSpec.from_samples(32)
    x = grid.coordinates
    values = (0.5 * np.sin(x)[:, None] * np.sin(x)[None, :]
              + 0.1 * np.cos(2.0 * x)[:, None] * np.sin(x)[None, :])
    u0 = forward_transform(RealField(grid, values))
    nu, stab = 0.1, 0.1

    def fhat(block):
        return apply_nonlinearity_dealiased(
            SpectralField(grid, block), "f").coeffs

    errors = []
    for j in range(5):
        tau = 0.002 / 2 ** j
        p = SchemeParams(nu=nu, tau=tau, stabilizer=stab,
                         modes_per_axis=grid.modes_per_axis)
        mult = build_multipliers(p, grid)
        out = step(initial_state(u0), mult, p).field.coeffs
        ref = rk4_reference(u0.coeffs, nu, fhat, tau, 1000)
        errors.append(float(np.sqrt(np.sum(np.abs(out - ref) ** 2))))

    slopes = [math.log2(a / b) for a, b in zip(errors, errors[1:])]
    assert all(sl >= 1.9 for sl in slopes), slopes
    _report(7, "Richardson slopes " + ", ".join(f"{sl:.3f}" for sl in slopes))


def test_criterion_8_phase_separation(circles_stabilized):
    res, _ = circles_stabilized
    u = inverse_transform(res.final_state.field).values
    fraction = float(np.mean((np.abs(u) >= 0.8) & (np.abs(u) <= 1.1)))
    assert fraction >= 0.8, fraction
    _report(8, f"{fraction:.3f} of grid points at |u| in [0.8, 1.1] "
               f"at t = {res.final_state.time:g}")
