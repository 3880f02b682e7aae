"""Leading-order (Lamb-Dicke) level-shift elements and shift formulas for the SS gate.

All quantities are in units of omega_T and keep only the O(eta^2) terms from
nearest-neighbour vibrational couplings.
"""
import logging
from fractions import Fraction

import numpy as np

from common.exceptions import ConfigError
from effective.models import ShiftReport
from hamiltonians.models import bare_crossing, rabi_resonance
from utils.enums import ShiftMethod

logger = logging.getLogger(__name__)

# Delta_S / (eta^2 omega_T) of |+,n> <-> |-,n+k> as (slope, offset) of n
STRUCTURAL_SHIFT_TABLE = {
    1: (Fraction(-1, 4), Fraction(-1, 4)),
    2: (Fraction(-2, 3), Fraction(-1, 1)),
    3: (Fraction(-3, 8), Fraction(-3, 4)),
    4: (Fraction(-4, 15), Fraction(-2, 3)),
}

CLOSED_FORM_NOTE = "Delta_D evaluated at xi_0; diagonal derivatives dropped (O(eta^4))"


def structural_shift_coefficient(n, k):
    if k not in STRUCTURAL_SHIFT_TABLE:
        raise ConfigError(f"tabulated sideband orders are 1..4, got {k}", key="k")
    slope, offset = STRUCTURAL_SHIFT_TABLE[k]
    return float(slope * n + offset)


def _dressed_level(sign, n, rabi, omega_t):
    return n * omega_t + sign * 0.5 * rabi


def _f_function(sign, n_self, energy, rabi, omega_t):
    """F_+- of the diagonal element r_{+-,+-} = eta^2 Omega_R F_+-.

    Terms with a vanishing denominator are excluded from the sum.
    """
    value = -sign * 0.5 * (n_self + 0.5)
    for neighbour, weight in ((n_self - 1, n_self), (n_self + 1, n_self + 1)):
        if neighbour < 0 or weight == 0:
            continue
        denominator = energy - _dressed_level(-sign, neighbour, rabi, omega_t)
        if np.isclose(denominator, 0.0, atol=1e-12):
            continue
        value += 0.25 * rabi * weight / denominator
    return value


def ld_level_shift_elements(n_plus, n_minus, eta, rabi, energy, omega_t=1.0):
    """(r_++, r_--, r_+-) to leading order in eta for |+,n_plus> and |-,n_minus>."""
    r_pp = eta ** 2 * rabi * _f_function(1, n_plus, energy, rabi, omega_t)
    r_mm = eta ** 2 * rabi * _f_function(-1, n_minus, energy, rabi, omega_t)
    r_pm = 0.5j * eta * rabi * np.sqrt(n_minus) if n_plus == n_minus - 1 else 0j
    return r_pp, r_mm, r_pm


def coupling_slope(n_plus, n_minus, eta, rabi):
    """d|r_+-|^2 / dOmega_R of the leading-order coupling."""
    if n_plus != n_minus - 1:
        return 0.0
    return 0.5 * eta ** 2 * rabi * n_minus


def shift_closed_forms(n, k, eta, omega_t=1.0):
    """Closed-form xi_S, xi_D and the shifts of the SS transition |+,n> <-> |-,n+k>.

    xi_D = xi_0 + r_-- - r_++ and xi_S = xi_D - 2 d|r_+-|^2/dOmega_R, with R
    evaluated at the bare crossing (xi_0, E_0).
    """
    if k not in STRUCTURAL_SHIFT_TABLE:
        raise ConfigError(f"closed forms cover sideband orders 1..4, got {k}", key="k")
    if n < 0:
        raise ConfigError(f"vibrational number must be non-negative, got {n}", key="n")
    if eta < 0:
        raise ConfigError(f"must be non-negative, got {eta}", key="eta")
    n_minus = n + k
    xi_0, energy = bare_crossing(n, n_minus, omega_t)
    rabi = rabi_resonance(n, n_minus, omega_t)
    r_pp, r_mm, _ = ld_level_shift_elements(n, n_minus, eta, rabi, energy, omega_t)
    xi_d = xi_0 + r_mm - r_pp
    xi_s = xi_d - 2.0 * coupling_slope(n, n_minus, eta, rabi)
    notes = [CLOSED_FORM_NOTE]
    if k > 1:
        notes.append("leading-order coupling vanishes beyond the first sideband, so xi_D = xi_S at O(eta^2)")
    tabulated = structural_shift_coefficient(n, k) * eta ** 2 * omega_t
    if not np.isclose(xi_s - xi_0, tabulated, rtol=1e-9, atol=1e-15):
        logger.warning(f"Delta_S={xi_s - xi_0:.10g} disagrees with the tabulated {tabulated:.10g} for n={n}, k={k}")
        notes.append(f"Delta_S disagrees with the tabulated coefficient {structural_shift_coefficient(n, k):.10g}")
    logger.info(f"Closed-form shifts for |+,{n}> <-> |-,{n_minus}>: xi_S={xi_s:.10g}, xi_D={xi_d:.10g}")
    return ShiftReport(
        xi_0=xi_0,
        xi_S=xi_s,
        xi_D=xi_d,
        method=ShiftMethod.CLOSED_FORM_LD,
        tolerance=eta ** 4,
        xi_name="rabi",
        E_0=energy,
        notes=tuple(notes),
    )
