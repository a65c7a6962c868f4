import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from badcavity.cavity import CavityParams, reflection_coefficient, resonant_reflection
from badcavity.errors import DegenerateInputError
from badcavity.metrics import (InputAngles, average_cnot, average_toffoli,
                               cnot_efficiency_closed, cnot_fidelity_closed,
                               metrics_from_engine, node_multiplier,
                               toffoli_efficiency_closed, toffoli_fidelity_closed,
                               xi_terms)
from badcavity.quadrature import periodic_mean

from conftest import DAYAN, TURCHETTE

angle = st.floats(0, 2 * math.pi)
real_r = st.floats(-1, 1)
Q = math.pi / 4


class TestCnotClosed:
    @given(angle, angle)
    def test_ideal(self, phi, theta):
        a = InputAngles(phi, theta)
        assert cnot_fidelity_closed(1.0, a) == pytest.approx(1, abs=1e-12)
        assert cnot_efficiency_closed(1.0, a) == pytest.approx(1, abs=1e-12)

    def test_r_zero_point(self):
        # numerator 9/16, denominator 3/4, computed exactly by hand
        a = InputAngles(Q, 0.0)
        assert cnot_fidelity_closed(0.0, a) == pytest.approx(0.75, abs=1e-15)
        assert cnot_efficiency_closed(0.0, a) == pytest.approx(0.75, abs=1e-15)

    @given(real_r, angle)
    def test_control_off(self, r, theta):
        a = InputAngles(0.0, theta)
        assert cnot_fidelity_closed(r, a) == pytest.approx(1, abs=1e-12)
        assert cnot_efficiency_closed(r, a) == pytest.approx(1, abs=1e-12)

    def test_degenerate(self):
        # photon all L, atom (|0>+|1>)/sqrt2, fully absorbing cavity
        with pytest.raises(DegenerateInputError):
            cnot_fidelity_closed(0.0, InputAngles(math.pi / 2, Q))

    def test_vectorized(self):
        phi = np.linspace(0, 1, 5)
        out = cnot_fidelity_closed(0.5, InputAngles(phi, 0.3))
        assert out.shape == (5,)
        assert out[2] == pytest.approx(cnot_fidelity_closed(0.5, InputAngles(0.5, 0.3)))


class TestToffoliClosed:
    @given(angle, angle, angle)
    def test_ideal(self, phi, theta, eta):
        a = InputAngles(phi, theta, eta)
        assert toffoli_fidelity_closed(1.0, a) == pytest.approx(1, abs=1e-12)
        assert toffoli_efficiency_closed(1.0, a) == pytest.approx(1, abs=1e-12)
        assert xi_terms(1.0, a).xi6 == 0

    @given(real_r, angle, angle)
    def test_control_off(self, r, theta, eta):
        a = InputAngles(0.0, theta, eta)
        assert toffoli_fidelity_closed(r, a) == pytest.approx(1, abs=1e-12)
        assert toffoli_efficiency_closed(r, a) == pytest.approx(1, abs=1e-12)

    def test_pinned_point(self):
        # exact rational evaluation (sympy) at r = 4/5, all angles pi/4
        a = InputAngles(Q, Q, Q)
        assert toffoli_fidelity_closed(0.8, a) == pytest.approx(3272481 / 3335368, abs=1e-12)
        assert toffoli_efficiency_closed(0.8, a) == pytest.approx(827281 / 1000000, abs=1e-12)
        xi = xi_terms(0.8, a)
        assert xi.xi6 == pytest.approx(6561 / 1000000, abs=1e-15)
        assert xi.xi4 == pytest.approx(2 / 25, abs=1e-15)
        eng = metrics_from_engine("toffoli", 0.8, a)
        assert eng.fidelity == pytest.approx(3272481 / 3335368, abs=1e-12)
        assert eng.efficiency == pytest.approx(827281 / 1000000, abs=1e-12)

    @settings(max_examples=200)
    @given(st.complex_numbers(max_magnitude=1), angle, angle, angle)
    def test_efficiency_bounds(self, r, phi, theta, eta):
        a = InputAngles(phi, theta, eta)
        xi = xi_terms(r, a)
        assert min(xi) >= 0
        assert toffoli_efficiency_closed(r, a) <= xi.total + 1e-15
        assert xi.total <= 1 + 1e-12


@settings(max_examples=200)
@given(st.complex_numbers(max_magnitude=1), angle, angle, angle)
def test_ranges(r, phi, theta, eta):
    a = InputAngles(phi, theta, eta)
    for fid, eff in [(cnot_fidelity_closed, cnot_efficiency_closed),
                     (toffoli_fidelity_closed, toffoli_efficiency_closed)]:
        try:
            f = fid(r, a)
        except DegenerateInputError:
            continue
        assert -1e-12 <= f <= 1 + 1e-12
        assert -1e-12 <= eff(r, a) <= 1 + 1e-12


def _draws(rng, n):
    return [(rng.uniform(-1, 1), InputAngles(*rng.uniform(0, 2 * np.pi, 3))) for _ in range(n)]


def test_engine_matches_cnot(rng):
    for r, a in _draws(rng, 300):
        m = metrics_from_engine("CNOT", r, a)
        assert m.fidelity == pytest.approx(cnot_fidelity_closed(r, a), abs=1e-12)
        assert m.efficiency == pytest.approx(cnot_efficiency_closed(r, a), abs=1e-12)


def test_engine_matches_toffoli(rng):
    for r, a in _draws(rng, 300):
        m = metrics_from_engine("TOFFOLI", r, a)
        assert m.fidelity == pytest.approx(toffoli_fidelity_closed(r, a), abs=1e-12)
        assert m.efficiency == pytest.approx(toffoli_efficiency_closed(r, a), abs=1e-12)


def test_engine_matches_complex_r(rng):
    for _ in range(100):
        r = rng.uniform(0, 1) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        a = InputAngles(*rng.uniform(0, 2 * np.pi, 3))
        m = metrics_from_engine("TOFFOLI", r, a)
        assert m.fidelity == pytest.approx(toffoli_fidelity_closed(r, a), abs=1e-12)
        m = metrics_from_engine("CNOT", r, a)
        assert m.efficiency == pytest.approx(cnot_efficiency_closed(r, a), abs=1e-12)


def test_engine_ideal():
    a = InputAngles(0.4, 1.3, 2.2)
    for kind in ("CNOT", "TOFFOLI"):
        f, p = metrics_from_engine(kind, 1.0, a)
        assert f == pytest.approx(1, abs=1e-12) and p == pytest.approx(1, abs=1e-12)


class TestQuadrature:
    def test_constant(self):
        assert periodic_mean(lambda a, b: np.ones_like(a * b), 2, 8) == pytest.approx(1)

    def test_trig_moments(self):
        assert periodic_mean(lambda a: np.cos(a) ** 2, 1, 16) == pytest.approx(0.5, abs=1e-15)
        assert periodic_mean(lambda a, b, c: np.sin(a) ** 4 * np.cos(b) ** 2, 3, 16) == \
            pytest.approx(3 / 16, abs=1e-15)

    def test_slabs_do_not_change_result(self, monkeypatch):
        import badcavity.quadrature as q
        f = lambda a, b, c: np.exp(np.cos(a) * np.sin(b + c))
        whole = periodic_mean(f, 3, 32)
        monkeypatch.setattr(q, "_SLAB_POINTS", 100)
        assert periodic_mean(f, 3, 32) == pytest.approx(whole, abs=1e-14)

    def test_against_scipy_dblquad(self):
        from scipy.integrate import dblquad
        r = 0.3
        f = lambda th, ph: cnot_fidelity_closed(r, InputAngles(ph, th))
        ref, _ = dblquad(f, 0, 2 * np.pi, 0, 2 * np.pi, epsabs=1e-11)
        assert average_cnot(r).fidelity == pytest.approx(ref / (4 * np.pi ** 2), abs=1e-9)


class TestAverages:
    def test_ideal(self):
        assert tuple(average_cnot(1.0)) == pytest.approx((1, 1), abs=1e-12)
        assert tuple(average_toffoli(1.0, 32)) == pytest.approx((1, 1), abs=1e-12)

    def test_turchette(self):
        r = reflection_coefficient(CavityParams(*TURCHETTE))
        fc, pc = average_cnot(r)
        ft, pt = average_toffoli(r)
        assert fc == pytest.approx(0.9943, abs=1e-3)
        assert pc == pytest.approx(0.9061, abs=1e-3)
        assert ft == pytest.approx(0.9885, abs=1e-3)
        assert pt == pytest.approx(0.8631, abs=1e-3)

    def test_dayan_fidelities(self):
        r = reflection_coefficient(CavityParams(*DAYAN))
        assert average_cnot(r).fidelity == pytest.approx(0.9998, abs=1e-3)
        assert average_toffoli(r).fidelity == pytest.approx(0.9994, abs=1e-3)

    def test_dayan_efficiencies_at_kappa_165(self):
        # values frozen from an independent numpy evaluation; they sit
        # above the quoted 0.9772 / 0.9661, which match kappa = 180
        r = reflection_coefficient(CavityParams(*DAYAN))
        assert average_cnot(r).efficiency == pytest.approx(0.979040, abs=1e-6)
        assert average_toffoli(r).efficiency == pytest.approx(0.968775, abs=1e-6)

    def test_dayan_upper_kappa_reproduces_all(self):
        r = reflection_coefficient(CavityParams(70.0, 180.0, 2.6))
        fc, pc = average_cnot(r)
        ft, pt = average_toffoli(r)
        assert (fc, pc, ft, pt) == pytest.approx((0.9998, 0.9772, 0.9994, 0.9661), abs=1e-4)

    def test_error_estimate(self):
        m = average_toffoli(resonant_reflection(1.5))
        assert m.averaged and m.nodes == 128
        assert m.error_estimate < 1e-10

    @pytest.mark.parametrize("x", [0.5, 0.526, 0.55, 0.7, 1.5, 3.0, 10.0])
    def test_convergence(self, x):
        r = resonant_reflection(x)
        for avg in (average_cnot, average_toffoli):
            a, b = avg(r), avg(r, 256)
            assert b.nodes == 2 * a.nodes
            assert abs(a.fidelity - b.fidelity) < 1e-8
            assert abs(a.efficiency - b.efficiency) < 1e-8

    @pytest.mark.parametrize("r, cnot, toffoli", [
        (1.0, 1, 1), (0.2, 1, 1), (0.15, 2, 1), (0.1, 2, 1),
        (0.05, 4, 2), (0.02, 8, 2), (0.0, 8, 2), (-0.05, 4, 2), (0.05j, 4, 2)])
    def test_node_multiplier(self, r, cnot, toffoli):
        assert node_multiplier("cnot", r) == cnot
        assert node_multiplier("TOFFOLI", r) == toffoli

    def test_small_r_needs_refinement(self):
        # near-pole at distance ~|r|: the unrefined base grid is off by ~4e-6
        r = resonant_reflection(0.526)
        plain = average_cnot(r, refine=False)
        fine = average_cnot(r)
        assert fine.nodes == 4 * plain.nodes
        assert abs(plain.fidelity - fine.fidelity) > 1e-6
        assert abs(fine.fidelity - average_cnot(r, 1024, refine=False).fidelity) < 1e-12

    def test_r_zero_cnot_limit(self):
        # at r = 0 the CNOT fidelity equals the efficiency pointwise
        fc, pc = average_cnot(0.0)
        assert fc == pytest.approx(0.75, abs=1e-12) and pc == pytest.approx(0.75, abs=1e-12)
