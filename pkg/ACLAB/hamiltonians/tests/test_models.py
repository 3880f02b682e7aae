import pytest

from common.exceptions import ConfigError
from common.linalg import HermitianOperator
from hamiltonians.models import BasisIndex, ModelSpec, Partition, bare_crossing, rabi_resonance
from utils.enums import ModelKind, Spin


def test_flat_index_is_a_bijection():
    indices = [BasisIndex.from_flat(i, n_fock=4).flat(4) for i in range(8)]
    assert indices == list(range(8))
    assert BasisIndex(Spin.LOWER, 3).flat() == 7


def test_flat_index_outside_truncation():
    with pytest.raises(ConfigError):
        BasisIndex(Spin.UPPER, 4).flat(4)
    with pytest.raises(ConfigError):
        BasisIndex.from_flat(8, n_fock=4)
    with pytest.raises(ConfigError):
        BasisIndex(Spin.UPPER, -1)


def test_labels_follow_the_model():
    state = BasisIndex(Spin.UPPER, 2)
    assert state.label() == "|a,2>"
    assert state.label(ModelKind.SS_GATE) == "|+,2>"
    assert state.label(ModelKind.CZ_GATE) == "|e,2>"


def test_bare_crossing_and_rabi_resonance():
    assert bare_crossing(0, 1) == (1.0, 0.5)
    assert bare_crossing(2, 2) == (0.0, 2.0)
    assert bare_crossing(1, 3, omega=2.0) == (4.0, 4.0)
    assert rabi_resonance(0, 3) == 3


def test_ss_spec_rejects_detuning():
    with pytest.raises(ConfigError) as excinfo:
        ModelSpec(kind=ModelKind.SS_GATE, detuning=0.5)
    assert excinfo.value.key == "detuning"


@pytest.mark.parametrize("changes, key", [
    ({"eta": -0.1}, "eta"),
    ({"n_fock": 1}, "n_fock"),
    ({"omega": 0.0}, "omega"),
    ({"transition": (0, 5), "n_fock": 5}, "transition"),
])
def test_spec_validation(changes, key):
    with pytest.raises(ConfigError) as excinfo:
        ModelSpec(kind=ModelKind.CZ_GATE, **changes)
    assert excinfo.value.key == key


def test_scan_parameter_per_model():
    ss = ModelSpec(kind=ModelKind.SS_GATE, eta=0.3, transition=(1, 3))
    assert ss.xi_name == "rabi"
    assert ss.xi_0 == pytest.approx(2.0)
    assert ss.with_xi(2.1).rabi == pytest.approx(2.1)
    assert ss.perturbation_strength == pytest.approx(0.3)
    cz = ModelSpec(kind=ModelKind.CZ_GATE, eta=0.1, rabi=0.2, detuning=0.9)
    assert cz.xi_value == pytest.approx(0.9)
    assert cz.perturbation_strength == pytest.approx(0.2)
    generic = ModelSpec(kind=ModelKind.GENERIC, transition=(0, 2))
    assert generic.xi_value == pytest.approx(2.0)


@pytest.mark.parametrize("spec", [
    ModelSpec(kind=ModelKind.SS_GATE, eta=0.3),
    ModelSpec(kind=ModelKind.CZ_GATE, eta=0.1, rabi=0.3, detuning=1.0),
    ModelSpec(kind=ModelKind.GENERIC),
])
def test_default_window_contains_bare_crossing(spec):
    low, high = spec.default_window()
    assert low < spec.xi_0 < high


def test_partition_needs_distinct_states():
    operator = HermitianOperator([[0, 0], [0, 0]], n_fock=1)
    state = BasisIndex(Spin.UPPER, 0)
    with pytest.raises(ConfigError):
        Partition(h0=operator, v=operator, p_states=(state, state), xi=1.0)


def test_spec_to_dict_exports_derived_fields():
    data = ModelSpec(kind=ModelKind.CZ_GATE, eta=0.1, rabi=0.3, detuning=1.0).to_dict()
    assert data["kind"] == "cz_gate"
    assert data["xi_name"] == "detuning"
    assert data["transition"] == [0, 1]
