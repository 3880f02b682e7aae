from fractions import Fraction

import pytest

from common.exceptions import ConfigError
from effective.closed_forms import (
    STRUCTURAL_SHIFT_TABLE,
    coupling_slope,
    ld_level_shift_elements,
    shift_closed_forms,
    structural_shift_coefficient,
)
from effective.resolvent import effective_hamiltonian
from hamiltonians.builders import build_partition
from hamiltonians.models import ModelSpec
from utils.enums import ModelKind, ShiftMethod


def test_first_sideband_reference_values():
    report = shift_closed_forms(0, 1, 0.3)
    assert report.xi_S == pytest.approx(0.9775)
    assert report.xi_D == pytest.approx(1.0675)
    assert report.Delta_D == pytest.approx(0.09)
    assert report.method is ShiftMethod.CLOSED_FORM_LD
    assert report.tolerance == pytest.approx(0.3 ** 4)
    assert any("xi_0" in note for note in report.notes)


@pytest.mark.parametrize("n", range(4))
def test_first_resonance_elements(n):
    eta = 0.2
    r_pp, r_mm, r_pm = ld_level_shift_elements(n, n + 1, eta, 1.0, n + 0.5)
    assert r_pp == pytest.approx(-(3 * n + 2) / 8 * eta ** 2)
    assert r_mm == pytest.approx((3 * n + 4) / 8 * eta ** 2)
    assert r_pm == pytest.approx(0.5j * eta * (n + 1) ** 0.5)
    assert coupling_slope(n, n + 1, eta, 1.0) == pytest.approx(0.5 * eta ** 2 * (n + 1))
    assert shift_closed_forms(n, 1, eta).Delta_D == pytest.approx(eta ** 2 * (n + 1))


@pytest.mark.parametrize("k", sorted(STRUCTURAL_SHIFT_TABLE))
@pytest.mark.parametrize("n", range(4))
def test_formulas_reproduce_table(n, k):
    report = shift_closed_forms(n, k, 0.1)
    assert report.Delta_S == pytest.approx(structural_shift_coefficient(n, k) * 0.01, rel=1e-12)
    if k > 1:
        assert report.Delta_D == pytest.approx(0.0, abs=1e-15)


def test_table_coefficients():
    assert structural_shift_coefficient(0, 1) == pytest.approx(-0.25)
    assert structural_shift_coefficient(2, 2) == pytest.approx(-7 / 3)
    assert structural_shift_coefficient(1, 4) == pytest.approx(-14 / 15)


def test_higher_sideband_orders_rejected():
    with pytest.raises(ConfigError):
        shift_closed_forms(0, 5, 0.1)
    with pytest.raises(ConfigError):
        structural_shift_coefficient(0, 0)
    with pytest.raises(ConfigError):
        shift_closed_forms(-1, 1, 0.1)


@pytest.mark.slow
@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("n", [0, 1])
def test_resolvent_agrees_with_table(n, k):
    spec = ModelSpec(kind=ModelKind.SS_GATE, eta=0.1, rabi=float(k), transition=(n, n + k), n_fock=25)
    effective = effective_hamiltonian(build_partition(spec), spec.E_0)
    shift = effective.r_bb - effective.r_aa
    assert shift / 0.01 == pytest.approx(structural_shift_coefficient(n, k), rel=0.15)


def test_formulas_are_cross_checked_against_table(monkeypatch):
    report = shift_closed_forms(1, 2, 0.1)
    assert not any("disagrees" in note for note in report.notes)
    monkeypatch.setitem(STRUCTURAL_SHIFT_TABLE, 2, (Fraction(0), Fraction(-1, 2)))
    report = shift_closed_forms(1, 2, 0.1)
    assert any("disagrees" in note for note in report.notes)
