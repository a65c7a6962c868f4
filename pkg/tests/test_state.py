import math

import numpy as np
import pytest

from badcavity.errors import RoutingError, WiringError
from badcavity.state import (HybridState, apply_atom_hadamard,
                             apply_cavity_scatter, apply_cpbs,
                             apply_photon_hadamard, apply_photon_sigma_x,
                             apply_relabel, project_location, total_norm)


LOCS = ("a", "b", "c", "d", "e")
S = 1 / math.sqrt(2)


def ket(photon, atoms=((1, 0),), loc="a"):
    return HybridState.product(LOCS, loc, photon, atoms)


def random_state(rng, atom_count=2, locs=("a", "b")):
    amps = {}
    for loc in locs:
        for pol in "RL":
            for bits in np.ndindex(*(2,) * atom_count):
                amps[(pol, loc, bits)] = rng.normal() + 1j * rng.normal()
    st = HybridState(LOCS, atom_count, amps)
    return st * (1 / math.sqrt(st.total_norm()))


R, L = (1, 0), (0, 1)


class TestConstruction:
    def test_unregistered_location(self):
        with pytest.raises(WiringError):
            HybridState(LOCS, 1, {("R", "zz", (0,)): 1})

    def test_wrong_atom_bits(self):
        with pytest.raises(WiringError):
            HybridState(LOCS, 2, {("R", "a", (0,)): 1})

    def test_vector_round_trip(self, rng):
        v = rng.normal(size=8) + 1j * rng.normal(size=8)
        st = HybridState.from_vector(LOCS, "c", v, 2)
        assert np.array_equal(st.to_vector("c"), v)

    def test_ordering(self):
        st = ket(L, [(0, 1), (1, 0)])
        # (pol, atom0, atom1) with R<L, 0<1 -> |L,1,0> is index 6
        assert np.flatnonzero(st.to_vector("a")).tolist() == [6]


class TestCPBS:
    def test_r_transmits(self):
        out = apply_cpbs(ket(R), "a", "b", "c", "d")
        assert out.amplitude("R", "c", (0,)) == 1
        assert out.total_norm() == 1

    def test_l_reflects(self):
        out = apply_cpbs(ket(L), "a", "b", "c", "d")
        assert out.amplitude("L", "d", (0,)) == 1

    def test_l_from_second_input_crosses(self):
        out = apply_cpbs(ket(L, loc="b"), "a", "b", "c", "d")
        assert out.amplitude("L", "c", (0,)) == 1

    def test_split_superposition(self):
        ap, bp = 0.6, 0.8j
        out = apply_cpbs(ket((ap, bp), [(0.28, 0.96)]), "a", "b", "c", "d")
        expected = (HybridState.product(LOCS, "c", (ap, 0), [(0.28, 0.96)])
                    + HybridState.product(LOCS, "d", (0, bp), [(0.28, 0.96)]))
        assert out.allclose(expected, 1e-15)

    def test_other_locations_untouched(self, rng):
        st = random_state(rng, locs=("e",))
        assert apply_cpbs(st, "a", "b", "c", "d").allclose(st, 0)

    def test_reversible(self, rng):
        st = random_state(rng, locs=("a", "b"))
        there = apply_cpbs(st, "a", "b", "c", "d")
        back = apply_cpbs(there, "c", "d", "a", "b")
        assert back.allclose(st, 1e-15)

    def test_bad_wiring(self):
        with pytest.raises(WiringError):
            apply_cpbs(ket(R), "a", "zz", "c", "d")
        with pytest.raises(WiringError):
            apply_cpbs(ket(R), "a", "b", "c", "c")


class TestPhotonGates:
    def test_hadamard_on_r(self):
        out = apply_photon_hadamard(ket(R), "a")
        assert out.amplitude("R", "a", (0,)) == pytest.approx(S)
        assert out.amplitude("L", "a", (0,)) == pytest.approx(S)

    def test_hadamard_recombines(self):
        out = apply_photon_hadamard(ket((S, -S)), "a")
        assert out.allclose(ket(L), 1e-15)

    def test_hadamard_involution(self, rng):
        st = random_state(rng)
        assert apply_photon_hadamard(apply_photon_hadamard(st, "a"), "a").allclose(st, 1e-15)

    def test_hadamard_only_at_loc(self):
        st = ket(R, loc="b")
        assert apply_photon_hadamard(st, "a").allclose(st, 0)

    def test_sigma_x(self):
        assert apply_photon_sigma_x(ket(R), "a").allclose(ket(L), 0)
        assert apply_photon_sigma_x(ket(L), "a").allclose(ket(R), 0)

    def test_sigma_x_block_a_terms(self):
        # beta_p [beta1 |R>|1> + alpha1 |L>|0>] -> beta_p [beta1 |L>|1> + alpha1 |R>|0>]
        bp, a1, b1 = 0.7, 0.6, 0.8
        st = HybridState(LOCS, 1, {("R", "c", (1,)): bp * b1, ("L", "c", (0,)): bp * a1})
        out = apply_photon_sigma_x(st, "c")
        expected = HybridState(LOCS, 1, {("L", "c", (1,)): bp * b1, ("R", "c", (0,)): bp * a1})
        assert out.allclose(expected, 0)

    def test_unregistered(self):
        with pytest.raises(WiringError):
            apply_photon_sigma_x(ket(R), "zz")


class TestAtomHadamard:
    def test_zero(self):
        out = apply_atom_hadamard(ket(R), 0)
        assert out.allclose(ket(R, [(S, S)]), 1e-15)

    def test_involution(self, rng):
        st = random_state(rng)
        for atom in (0, 1):
            assert apply_atom_hadamard(apply_atom_hadamard(st, atom), atom).allclose(st, 1e-15)

    def test_bad_index(self):
        with pytest.raises(WiringError):
            apply_atom_hadamard(ket(R), 1)

    def test_cnot_second_step(self):
        # state after CPBS1 -> state after the atom Hadamard
        ap, bp, a, b = 0.6, 0.8, 0.28, 0.96
        st = (HybridState.product(LOCS, "a", (ap, 0), [(a, b)])
              + HybridState.product(LOCS, "b", (0, bp), [(a, b)]))
        h = ((a + b) * S, (a - b) * S)
        expected = (HybridState.product(LOCS, "a", (ap, 0), [h])
                    + HybridState.product(LOCS, "b", (0, bp), [h]))
        assert apply_atom_hadamard(st, 0).allclose(expected, 1e-15)


class TestCavityScatter:
    def test_coupled_phase_zero(self):
        assert apply_cavity_scatter(ket(L), "a", 0, 1, -1).allclose(ket(L), 0)

    def test_empty_phase_pi(self):
        st = ket(L, [(0, 1)])
        assert apply_cavity_scatter(st, "a", 0, 1, -1).allclose(st * -1, 0)

    def test_lossy(self):
        out = apply_cavity_scatter(ket(L, [(S, S)]), "a", 0, 0.8, -1)
        assert out.amplitude("L", "a", (0,)) == pytest.approx(0.8 * S)
        assert out.amplitude("L", "a", (1,)) == pytest.approx(-S)
        assert out.total_norm() == pytest.approx(0.82, abs=1e-15)

    def test_full_absorption(self):
        assert total_norm(apply_cavity_scatter(ket(L), "a", 0, 0, -1)) == 0

    def test_r_polarization_rejected(self):
        with pytest.raises(RoutingError):
            apply_cavity_scatter(ket((S, S)), "a", 0, 1, -1)

    def test_other_location_untouched(self, rng):
        st = random_state(rng, locs=("b",))
        assert apply_cavity_scatter(st, "a", 0, 0.3, -1).allclose(st, 0)

    def test_unit_modulus_preserves_norm(self, rng):
        st = random_state(rng, locs=("a",))
        st = st.project("a")
        l_only = HybridState(LOCS, 2, {k: v for k, v in st.items() if k.pol == "L"})
        l_only = l_only * (1 / math.sqrt(l_only.total_norm()))
        out = apply_cavity_scatter(l_only, "a", 1, np.exp(0.3j), np.exp(2.1j))
        assert out.total_norm() == pytest.approx(1, abs=1e-12)


class TestProjection:
    def test_all_here(self, rng):
        st = random_state(rng, locs=("a",))
        assert project_location(st, "a").allclose(st, 0)

    def test_elsewhere(self, rng):
        st = random_state(rng, locs=("a",))
        assert project_location(st, "b").total_norm() == 0


OPS = [
    lambda s: apply_cpbs(s, "a", "b", "c", "d"),
    lambda s: apply_photon_hadamard(s, "a"),
    lambda s: apply_photon_sigma_x(s, "b"),
    lambda s: apply_atom_hadamard(s, 1),
    lambda s: apply_relabel(s, "a", "e"),
]


@pytest.mark.parametrize("op", OPS)
def test_norm_preserved(op, rng):
    for _ in range(20):
        st = random_state(rng)
        assert op(st).total_norm() == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("op", OPS + [lambda s: apply_cavity_scatter(
    HybridState(LOCS, 2, {k: v for k, v in s.items() if k.loc != "c" or k.pol == "L"}),
    "c", 0, 0.3 - 0.2j, -0.9)])
def test_linear(op, rng):
    for _ in range(10):
        s1, s2 = random_state(rng), random_state(rng)
        a, b = rng.normal() + 1j * rng.normal(), rng.normal() + 1j * rng.normal()
        lhs = op(a * s1 + b * s2)
        rhs = a * op(s1) + b * op(s2)
        assert lhs.allclose(rhs, 1e-12)


def test_disjoint_operations_commute(rng):
    pairs = [
        (lambda s: apply_photon_hadamard(s, "a"), lambda s: apply_photon_sigma_x(s, "b")),
        (lambda s: apply_atom_hadamard(s, 0), lambda s: apply_photon_hadamard(s, "a")),
        (lambda s: apply_cpbs(s, "a", "b", "c", "d"), lambda s: apply_photon_hadamard(s, "e")),
    ]
    for f, g in pairs:
        st = random_state(rng, locs=("a", "b", "e"))
        assert f(g(st)).allclose(g(f(st)), 1e-14)
