import numpy as np
import pytest
from numpy.testing import assert_allclose

from common.exceptions import ConfigError, TruncationLeakageWarning
from common.linalg import HermitianOperator
from dynamics.models import PulseSpec
from dynamics.propagation import (
    basis_state,
    effective_flip_probability,
    flip_probability,
    leakage_levels,
    propagate,
)
from effective.models import EffectiveTwoLevel
from hamiltonians.builders import build_partition
from hamiltonians.models import BasisIndex, ModelSpec
from utils.enums import ModelKind, PulseRule, Spin


def random_state(rng, size):
    psi = rng.normal(size=size) + 1j * rng.normal(size=size)
    return psi / np.linalg.norm(psi)


@pytest.fixture
def ss_hamiltonian():
    return build_partition(ModelSpec(kind=ModelKind.SS_GATE, eta=0.2, n_fock=10)).hamiltonian


def test_zero_time_is_identity(rng, ss_hamiltonian):
    psi = random_state(rng, 20)
    assert_allclose(propagate(ss_hamiltonian, psi, 0.0), psi, atol=1e-14)


def test_diagonal_hamiltonian_keeps_populations(rng):
    hamiltonian = HermitianOperator(np.diag([0.0, 0.3, 1.1, 2.0]), n_fock=2)
    psi = random_state(rng, 4)
    assert_allclose(np.abs(propagate(hamiltonian, psi, 7.3)) ** 2, np.abs(psi) ** 2, atol=1e-14)


def test_evolution_is_unitary_and_reversible(rng, ss_hamiltonian):
    psi = random_state(rng, 20)
    forward = propagate(ss_hamiltonian, psi, 12.5)
    assert np.linalg.norm(forward) == pytest.approx(1.0, abs=1e-10)
    assert_allclose(propagate(ss_hamiltonian, forward, -12.5), psi, atol=1e-10)


def test_unnormalised_state_rejected(ss_hamiltonian):
    with pytest.raises(ConfigError):
        propagate(ss_hamiltonian, 2 * basis_state(BasisIndex(Spin.UPPER, 0), 10), 1.0)


def test_two_level_flip_formula(rng):
    start = np.array([1.0, 0.0])
    for _ in range(100):
        delta, t = rng.uniform(-1, 1), rng.uniform(0, 10)
        r_ab = complex(*rng.uniform(-0.5, 0.5, size=2))
        effective = EffectiveTwoLevel(r_aa=0.0, r_bb=0.0, r_ab=r_ab, delta=delta, E_ref=0.0, trace=0.0)
        psi = propagate(HermitianOperator(effective.matrix, n_fock=1), start, t)
        assert abs(psi[1]) ** 2 == pytest.approx(effective_flip_probability(effective, t), abs=1e-12)


def test_effective_pi_pulse_flips_on_resonance(toy_family):
    assert flip_probability(toy_family, 1.0, PulseSpec(PulseRule.EFFECTIVE_PI)) == pytest.approx(1.0, abs=1e-10)
    assert flip_probability(toy_family, 0.9, PulseSpec(PulseRule.EFFECTIVE_PI)) < 0.9


def test_leakage_window():
    assert leakage_levels(25, (0, 1)) == 5
    assert leakage_levels(6, (0, 1)) == 4
    assert leakage_levels(2, (0, 1)) == 0


def test_truncation_leakage_warns():
    spec = ModelSpec(kind=ModelKind.SS_GATE, eta=0.3, n_fock=6)
    with pytest.warns(TruncationLeakageWarning):
        flip_probability(spec, 1.0, PulseSpec(PulseRule.LD_PI))


class TestPulseSpec:
    def test_durations(self):
        spec = ModelSpec(kind=ModelKind.SS_GATE, eta=0.1, n_fock=10)
        partition = build_partition(spec)
        assert PulseSpec(PulseRule.LD_PI).resolve(partition) == pytest.approx(10 * np.pi)
        assert PulseSpec(PulseRule.EXPLICIT, 3.0).resolve(partition) == 3.0
        sideband = build_partition(spec.replace(transition=(1, 2)))
        assert PulseSpec(PulseRule.SIDEBAND_PI).resolve(sideband) == pytest.approx(np.pi / (0.1 * np.sqrt(2)))

    def test_defaults(self, ss_spec, cz_spec):
        assert PulseSpec.default_for(ss_spec).rule is PulseRule.LD_PI
        assert PulseSpec.default_for(cz_spec).rule is PulseRule.LD_PI
        assert PulseSpec.default_for(ss_spec.replace(transition=(1, 2))).rule is PulseRule.SIDEBAND_PI
        assert PulseSpec.default_for(ModelSpec()).rule is PulseRule.EFFECTIVE_PI

    def test_invalid_pulses(self, toy_family):
        with pytest.raises(ConfigError):
            PulseSpec(PulseRule.EXPLICIT)
        with pytest.raises(ConfigError):
            PulseSpec(PulseRule.LD_PI).resolve(toy_family.at(1.0))
        with pytest.raises(ConfigError):
            PulseSpec(PulseRule.EFFECTIVE_PI).resolve(toy_family.at(1.0))
        without_recoil = build_partition(ModelSpec(kind=ModelKind.SS_GATE, eta=0.0, n_fock=4))
        with pytest.raises(ConfigError):
            PulseSpec(PulseRule.LD_PI).resolve(without_recoil)
