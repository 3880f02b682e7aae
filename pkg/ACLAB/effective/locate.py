import logging

import numpy as np
from scipy.optimize import bisect, brentq

from aclab import settings
from common.exceptions import WindowError
from effective.models import ShiftReport
from effective.resolvent import iterate_implicit_energy
from hamiltonians.builders import model_family
from spectra.scans import character_profile, find_structural_resonance, scan_levels
from utils.enums import Branch, ShiftMethod

logger = logging.getLogger(__name__)


def effective_at(family, xi, order=None):
    """Effective model at xi, evaluated at the self-consistent centre energy."""
    return iterate_implicit_energy(family.at(xi), Branch.CENTER, order=order).effective


def effective_detuning(model, xi, order=None):
    return effective_at(model_family(model), xi, order=order).delta


def _bracketed_root(fn, low, high, xtol, what):
    f_low, f_high = fn(low), fn(high)
    if f_low == 0:
        return low
    if f_high == 0:
        return high
    if np.sign(f_low) == np.sign(f_high):
        raise WindowError(f"{what} is not bracketed by [{low:.6g}, {high:.6g}]")
    return bisect(fn, low, high, xtol=xtol * max(1.0, abs(low), abs(high)))


def find_dynamical_root(model, xi_window=None, xtol=None, order=None):
    """xi_D where the effective detuning delta(xi) changes sign."""
    family = model_family(model)
    low, high = xi_window or family.window
    xtol = xtol or settings.XTOL
    xi_d = _bracketed_root(
        lambda xi: effective_detuning(family, xi, order=order), low, high, xtol, "the zero of the effective detuning"
    )
    logger.info(f"Dynamical resonance (delta = 0) at xi_D={xi_d:.10g}")
    return float(xi_d)


def structural_residual(model, xi, step=None, order=None):
    """d/dxi (delta^2 + |r_ab|^2) at xi by central differences; zero at xi_S."""
    family = model_family(model)
    step = step or settings.FD_STEP

    def splitting(x):
        effective = effective_at(family, x, order=order)
        return effective.delta ** 2 + abs(effective.r_ab) ** 2

    return (splitting(xi + step) - splitting(xi - step)) / (2 * step)


def locate_resonances_resolvent(model, xi_window=None, xtol=None, order=None):
    """xi_S and xi_D from the effective model alone.

    xi_S is the root of the structural residual and xi_D the root of delta,
    both with R evaluated at the iterated centre energy. `order` uses the
    truncated series instead of the closed resolvent.
    """
    family = model_family(model)
    low, high = xi_window or family.window
    xtol = xtol or settings.XTOL
    xi_d = find_dynamical_root(family, (low, high), xtol, order=order)

    def residual(xi):
        return structural_residual(family, xi, order=order)

    try:
        xi_s = brentq(residual, low, high, xtol=xtol * max(1.0, abs(low), abs(high)))
    except ValueError as exc:
        raise WindowError(f"structural condition has no root in [{low:.6g}, {high:.6g}]") from exc
    return ShiftReport(
        xi_0=family.xi_0,
        xi_S=float(xi_s),
        xi_D=xi_d,
        method=ShiftMethod.RESOLVENT if order is None else ShiftMethod.SERIES,
        tolerance=xtol,
        xi_name=family.spec.xi_name if family.spec else "xi",
        E_0=family.E_0,
        notes=() if order is None else (f"series truncated at order {order}",),
    )


def locate_resonances_numeric(model, xi_window=None, points=None, pulse=None, xtol=None):
    """xi_S from the dressed spectrum, xi_D from delta(xi) = 0.

    With a pulse, the flip-probability maximum is located as well and stored
    as `xi_D_flip` for comparison.
    """
    family = model_family(model)
    window = tuple(xi_window or family.window)
    xtol = xtol or settings.XTOL
    track = scan_levels(family, window, points)
    structural = find_structural_resonance(track, xtol)
    xi_char = character_profile(track).xi_char
    xi_d = find_dynamical_root(family, window, xtol)
    notes = []
    xi_d_flip = None
    if pulse is not None:
        from dynamics.resonance import find_dynamical_resonance

        xi_d_flip = find_dynamical_resonance(family, window, pulse, points=points, xtol=xtol).xi_D
        notes.append(f"flip maximum under {pulse.rule.value} pulse at {xi_d_flip:.10g}")
    if not structural.isolated:
        notes.append("crossing not isolated; structural estimates disagree or a third level intrudes")
    report = ShiftReport(
        xi_0=family.xi_0,
        xi_S=structural.xi_S,
        xi_D=xi_d,
        method=ShiftMethod.NUMERIC_SCAN,
        tolerance=structural.tolerance,
        xi_name=track.xi_name,
        E_0=family.E_0,
        min_gap=structural.min_gap,
        xi_D_flip=xi_d_flip,
        xi_char=xi_char,
        notes=tuple(notes),
    )
    logger.info(f"Numeric shifts: Delta_S={report.Delta_S:.6g}, Delta_D={report.Delta_D:.6g}")
    return report
