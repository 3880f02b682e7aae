import numpy as np
import pytest

from common.exceptions import WindowError
from dynamics.models import PulseSpec
from effective.closed_forms import shift_closed_forms
from effective.locate import (
    effective_detuning,
    find_dynamical_root,
    locate_resonances_numeric,
    locate_resonances_resolvent,
    structural_residual,
)
from hamiltonians.models import ModelSpec
from utils.enums import GenericCoupling, ModelKind, PulseRule, ShiftMethod

TOY_XI_S = 1.0 / 1.04


def test_toy_effective_detuning(toy_family):
    assert effective_detuning(toy_family, 0.9) == pytest.approx(0.05)
    assert find_dynamical_root(toy_family) == pytest.approx(1.0, abs=1e-7)


def test_structural_residual_vanishes_at_anticrossing(toy_family):
    assert structural_residual(toy_family, TOY_XI_S) == pytest.approx(0.0, abs=1e-6)
    assert structural_residual(toy_family, 1.0) > 0


def test_resolvent_locator(toy_family):
    report = locate_resonances_resolvent(toy_family)
    assert report.xi_S == pytest.approx(TOY_XI_S, abs=1e-6)
    assert report.xi_D == pytest.approx(1.0, abs=1e-7)
    assert report.method is ShiftMethod.RESOLVENT
    assert report.Delta_S == pytest.approx(TOY_XI_S - 1.0, abs=1e-6)


def test_series_locator(toy_family):
    report = locate_resonances_resolvent(toy_family, order=20)
    assert report.method is ShiftMethod.SERIES
    assert report.xi_S == pytest.approx(TOY_XI_S, abs=1e-6)
    assert report.notes == ("series truncated at order 20",)


def test_numeric_locator_with_flip_check(toy_family):
    report = locate_resonances_numeric(toy_family, pulse=PulseSpec(PulseRule.EFFECTIVE_PI))
    assert report.xi_S == pytest.approx(TOY_XI_S, abs=1e-6)
    assert report.xi_D == pytest.approx(1.0, abs=1e-7)
    assert report.xi_D_flip == pytest.approx(1.0, abs=1e-5)
    assert report.xi_char == pytest.approx(1.0, abs=1e-8)
    assert report.min_gap == pytest.approx(0.2 / np.sqrt(1.04), abs=1e-9)
    assert report.method is ShiftMethod.NUMERIC_SCAN


def test_constant_coupling_has_no_shifts():
    spec = ModelSpec(kind=ModelKind.GENERIC, n_fock=4, coupling=GenericCoupling.JAYNES_CUMMINGS, g=0.05)
    report = locate_resonances_numeric(spec)
    assert report.Delta_S == pytest.approx(0.0, abs=1e-6)
    assert report.Delta_D == pytest.approx(0.0, abs=1e-6)
    assert report.min_gap == pytest.approx(0.1, abs=1e-9)


def test_root_outside_window(toy_family):
    with pytest.raises(WindowError):
        find_dynamical_root(toy_family, (1.05, 1.2))


def test_report_export(toy_family):
    data = locate_resonances_resolvent(toy_family).to_dict()
    assert data["method"] == "resolvent"
    assert data["Delta_D"] == pytest.approx(1.0 - TOY_XI_S, abs=1e-6)
    assert "dynamical_shift_negligible" in data


@pytest.mark.slow
@pytest.mark.parametrize("transition", [(0, 1), (1, 2)])
def test_ss_dynamical_shift_grows_with_phonon_number(transition):
    eta = 0.1
    spec = ModelSpec(kind=ModelKind.SS_GATE, eta=eta, transition=transition, n_fock=25)
    report = locate_resonances_numeric(spec)
    assert report.Delta_D / eta ** 2 == pytest.approx(transition[0] + 1, rel=0.15)
    assert report.xi_S < report.xi_0 < report.xi_D


@pytest.mark.slow
def test_cz_dynamical_shift_negligible(cz_spec):
    report = locate_resonances_numeric(cz_spec)
    assert report.Delta_S == pytest.approx(-0.3 ** 2 / 2, abs=5e-3)
    assert report.dynamical_shift_negligible


@pytest.mark.slow
def test_structural_shift_is_quadratic_in_recoil():
    etas = np.array([0.05, 0.1, 0.2, 0.3])
    shifts = [
        locate_resonances_numeric(ModelSpec(kind=ModelKind.SS_GATE, eta=eta, n_fock=25)).Delta_S
        for eta in etas
    ]
    slope = np.polyfit(etas ** 2, shifts, 1)[0]
    assert slope == pytest.approx(-0.25, rel=0.15)


def test_detuning_changes_sign_at_dynamical_root():
    spec = ModelSpec(kind=ModelKind.SS_GATE, eta=0.1, n_fock=20)
    xi_d = find_dynamical_root(spec)
    assert effective_detuning(spec, xi_d) == pytest.approx(0.0, abs=1e-7)
    assert effective_detuning(spec, xi_d - 0.01) > 0 > effective_detuning(spec, xi_d + 0.01)


@pytest.mark.slow
def test_closed_form_anticrossing_error_is_fourth_order():
    etas = np.array([0.05, 0.1, 0.2])
    residuals = [
        abs(structural_residual(
            ModelSpec(kind=ModelKind.SS_GATE, eta=eta, n_fock=25), shift_closed_forms(0, 1, eta).xi_S
        ))
        for eta in etas
    ]
    exponent = np.polyfit(np.log(etas), np.log(residuals), 1)[0]
    assert exponent == pytest.approx(4.0, abs=0.5)
