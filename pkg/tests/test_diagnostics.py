"""Observables and Fourier-symbol certification."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chei import (
    GridSpec,
    RealField,
    certify_symbol_inequalities,
    default_sweep,
    energy,
    forward_transform,
    norms,
    seven_circles,
    sinusoidal,
    symbol_values,
    trace_record,
)
from chei.diagnostics import phi, x_plus_expm1_neg
from oracles import quadrature_energy

TWO_PI = 2.0 * np.pi


def field_of(grid, values):
    return forward_transform(RealField(grid, values))


class TestEnergy:
    def test_zero_field(self):
        # E(0) = integral of F(0) = (1/4) * (2pi)^2 = pi^2
        g = GridSpec(4, 12)
        u = field_of(g, np.zeros((12, 12)))
        assert energy(u, 1.0) == pytest.approx(np.pi ** 2, rel=1e-13)

    def test_pure_phase_has_zero_energy(self):
        g = GridSpec(4, 12)
        u = field_of(g, np.ones((12, 12)))
        assert abs(energy(u, 0.7)) < 1e-13

    def test_sine_profile_closed_form(self):
        # u = sin x: gradient term nu pi^2, potential term 3 pi^2 / 8
        g = GridSpec.from_samples(16)
        x = g.coordinates
        u = field_of(g, np.sin(x)[:, None] * np.ones(16)[None, :])
        for nu in (1.0, 0.01):
            expect = nu * np.pi ** 2 + 3 * np.pi ** 2 / 8
            assert energy(u, nu) == pytest.approx(expect, rel=1e-13)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_matches_quadrature_oracle(self, seed):
        g = GridSpec(6, 16)
        rng = np.random.default_rng(seed)
        u = field_of(g, rng.uniform(-1.2, 1.2, (16, 16)))
        mine = energy(u, 0.3)
        ref = quadrature_energy(u.coeffs, 0.3, 4 * g.modes_per_axis + 3)
        assert mine == pytest.approx(ref, rel=1e-12)

    def test_accepts_real_field_directly(self):
        g = GridSpec(4, 12)
        u = sinusoidal(g, 0.5)
        assert energy(u, 1.0) == pytest.approx(energy(forward_transform(u), 1.0),
                                               rel=1e-13)


class TestNorms:
    def test_sine_norms(self):
        g = GridSpec.from_samples(16)
        x = g.coordinates
        u = field_of(g, np.sin(x)[:, None] * np.ones(16)[None, :])
        nm = norms(u)
        assert nm.l2 == pytest.approx(np.pi * np.sqrt(2), rel=1e-13)
        assert nm.h1_seminorm == pytest.approx(np.pi * np.sqrt(2), rel=1e-13)
        assert nm.h_threehalves_seminorm == pytest.approx(np.pi * np.sqrt(2), rel=1e-13)
        assert nm.linf == pytest.approx(1.0, rel=1e-12)

    def test_l2_is_integral_norm(self):
        g = GridSpec(5, 14)
        rng = np.random.default_rng(3)
        u = field_of(g, rng.uniform(-1, 1, (14, 14)))
        from chei import inverse_transform
        samples = inverse_transform(u).values
        integral = float((samples ** 2).sum()) * (TWO_PI / 14) ** 2
        assert norms(u).l2 ** 2 == pytest.approx(integral, rel=1e-12)

    def test_constant_field(self):
        g = GridSpec(3, 10)
        u = field_of(g, np.full((10, 10), -0.6))
        nm = norms(u)
        assert nm.l2 == pytest.approx(0.6 * TWO_PI, rel=1e-13)
        assert nm.h1_seminorm < 1e-13
        assert nm.linf == pytest.approx(0.6, rel=1e-12)


class TestTraceRecord:
    def test_fields_match_direct_computations(self):
        g = GridSpec.from_samples(32)
        u = forward_transform(seven_circles(g, sharpness=0.01))
        rec = trace_record(7, 0.7, u, 0.01)
        assert rec.step == 7 and rec.time == 0.7
        assert rec.energy == energy(u, 0.01)
        assert rec.mass == u.mean
        nm = norms(u)
        assert rec.linf == nm.linf
        assert rec.h1_seminorm == nm.h1_seminorm


class TestScalarHelpers:
    def test_phi_limits(self):
        assert phi(1e-12) == pytest.approx(1.0, rel=1e-6)
        assert phi(700.0) == pytest.approx(700.0, rel=1e-12)

    def test_phi_monotone(self):
        xs = np.logspace(-8, 2, 200)
        vals = phi(xs)
        assert (np.diff(vals) > 0).all()
        assert (vals >= 1.0).all()

    @pytest.mark.parametrize("x,expect", [
        # reference values computed symbolically to 20 digits
        (1e-8, 4.9999999833333333750e-17),
        (1e-4, 4.9998333374999166681e-09),
        (1e-3, 4.9983337499166805536e-07),
        (2e-3, 1.9986673330667555302e-06),
        (0.5, 0.10653065971263342360),
        (5.0, 4.0067379469990854671),
    ])
    def test_x_plus_expm1_neg_reference_values(self, x, expect):
        assert float(x_plus_expm1_neg(x)) == pytest.approx(expect, rel=1e-12)

    def test_x_plus_expm1_neg_bounds(self):
        xs = np.logspace(-10, 3, 500)
        vals = x_plus_expm1_neg(xs)
        assert (vals > 0).all()
        assert (vals < xs ** 2).all()


class TestSymbolValues:
    def test_unit_tuple(self):
        r = symbol_values(1.0, 1.0, 1.0)
        # sqrt(A) = sqrt(1 / (1 - 1/e)); at kappa^2 = 1 all four symbols agree
        assert r.sqrt_a == pytest.approx(1.2577665549971213, rel=1e-13)
        assert r.big_l == pytest.approx(r.sqrt_a, rel=1e-15)
        assert r.big_m == pytest.approx(r.sqrt_a, rel=1e-15)
        assert r.sqrt_b == pytest.approx(r.sqrt_a, rel=1e-15)
        assert r.passed

    def test_symbol_relations(self):
        # B = kappa^2 A tau kappa^2 ... the algebra pins M = kappa^2 L and
        # sqrt(B) = kappa L for every tuple
        for nu, tau, k2 in ((0.3, 2.0, 7.0), (5.0, 1e-3, 100.0), (1e-3, 1e-2, 9.0)):
            r = symbol_values(nu, tau, k2)
            assert r.big_m == pytest.approx(k2 * r.big_l, rel=1e-15)
            assert r.sqrt_b == pytest.approx(np.sqrt(k2) * r.big_l, rel=1e-15)

    def test_requires_nonzero_mode(self):
        with pytest.raises(ValueError):
            symbol_values(1.0, 1.0, 0.0)

    def test_l_bound_needs_viscosity_under_the_root(self):
        # at nu = 100, tau = 1, kappa^2 = 100: L = 1000, while the tau-only
        # expression 2(1 + sqrt(tau) kappa^2) = 202 would flag a violation
        r = symbol_values(100.0, 1.0, 100.0)
        assert r.big_l == pytest.approx(1000.0, rel=1e-12)
        assert r.big_l > 2.0 * (1.0 + np.sqrt(1.0) * 100.0)
        assert r.passed

    @given(
        nu=st.floats(1e-4, 1e2),
        tau=st.floats(1e-4, 1e2),
        k2=st.integers(1, 10_000),
    )
    @settings(max_examples=300, deadline=None)
    def test_inequalities_hold_pointwise(self, nu, tau, k2):
        assert symbol_values(nu, tau, float(k2)).passed


class TestCertification:
    def test_small_default_sweep_clean(self):
        assert certify_symbol_inequalities(default_sweep(2000, seed=7)) == []

    def test_tuple_iterable_input(self):
        rows = [(0.5, 0.1, 4.0), (2.0, 3.0, 1.0), (1e-3, 1e2, 9999.0)]
        assert certify_symbol_inequalities(rows) == []

    def test_empty_input(self):
        assert certify_symbol_inequalities([]) == []

    def test_domain_validation(self):
        with pytest.raises(ValueError):
            certify_symbol_inequalities([(0.0, 1.0, 1.0)])
        with pytest.raises(ValueError):
            certify_symbol_inequalities([(1.0, 1.0, 0.5)])

    def test_default_sweep_shape_and_domain(self):
        nu, tau, k2 = default_sweep(500, seed=1)
        assert len(nu) == len(tau) == len(k2) == 500
        assert (nu > 1e-4).all() and (nu < 1e2).all()
        assert (tau > 1e-4).all() and (tau < 1e2).all()
        assert (k2 >= 1).all() and (k2 <= 10_000).all()
        assert (k2 == np.round(k2)).all()

    def test_determinism(self):
        a = default_sweep(100, seed=42)
        b = default_sweep(100, seed=42)
        for x, y in zip(a, b):
            assert np.array_equal(x, y)
