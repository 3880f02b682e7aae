"""Gate imprecision after a pi pulse and the speed limit it implies."""
import logging

import numpy as np
from scipy.stats import linregress

from common.exceptions import ConfigError, ThresholdUnreachableError
from dynamics.models import ErrorFit, GateErrorCurve, PulseSpec, SpeedBound
from dynamics.propagation import flip_probability
from effective.closed_forms import shift_closed_forms
from effective.locate import find_dynamical_root
from hamiltonians.builders import model_family
from hamiltonians.models import ModelSpec
from spectra.scans import find_structural_resonance, scan_levels
from utils.enums import ModelKind, Tuning

logger = logging.getLogger(__name__)

SS_ETA_GRID = np.linspace(0.05, 0.3, 11)
CZ_RABI_GRID = np.linspace(0.05, 0.3, 11)


def gate_error(model, xi, pulse):
    """epsilon = sqrt(1 - P_flip)."""
    probability = flip_probability(model, xi, pulse)
    return float(np.sqrt(max(0.0, 1.0 - probability)))


def tuned_position(model, tuning, closed_form=False):
    """Where the laser is set: bare crossing, anti-crossing centre or delta = 0.

    `closed_form` takes the dynamical position of an SS transition from the
    leading-order formulas instead of the resolvent.
    """
    family = model_family(model)
    tuning = Tuning(tuning)
    if tuning is Tuning.BARE:
        return family.xi_0
    if tuning is Tuning.STRUCTURAL:
        return find_structural_resonance(scan_levels(family)).xi_S
    spec = family.spec
    if closed_form and spec is not None and spec.kind is ModelKind.SS_GATE:
        na, nb = spec.transition
        return shift_closed_forms(na, nb - na, spec.eta, spec.omega).xi_D
    return find_dynamical_root(family)


def default_grid(spec):
    if spec.kind is ModelKind.SS_GATE:
        return "eta", SS_ETA_GRID
    if spec.kind is ModelKind.CZ_GATE:
        return "rabi", CZ_RABI_GRID
    raise ConfigError("gate-error sweeps need kind ss_gate or cz_gate", key="kind")


def fit_error_curve(grid, errors):
    result = linregress(grid, errors)
    return ErrorFit(
        slope=float(result.slope),
        intercept=float(result.intercept),
        r_squared=float(result.rvalue ** 2),
        grid_min=float(np.min(grid)),
        grid_max=float(np.max(grid)),
    )


def gate_error_curve(spec, tuning, grid=None, pulse=None, parameter=None, closed_form=False):
    """Gate error along a perturbation-strength sweep, tuned per `tuning`.

    The SS sweep varies eta; the CZ sweep varies Omega_R at fixed eta.
    """
    if not isinstance(spec, ModelSpec):
        raise ConfigError("gate-error sweeps need a ModelSpec")
    tuning = Tuning(tuning)
    default_parameter, default_values = default_grid(spec)
    parameter = parameter or default_parameter
    grid = np.asarray(default_values if grid is None else grid, dtype=float)
    pulse = pulse or PulseSpec.default_for(spec)
    logger.info(f"Gate error sweep ({tuning.value}) over {parameter} in [{grid.min():.4g}, {grid.max():.4g}]")
    errors, positions = [], []
    for value in grid:
        current = spec.replace(**{parameter: float(value)})
        xi = tuned_position(current, tuning, closed_form=closed_form)
        positions.append(xi)
        errors.append(gate_error(current, xi, pulse))
    errors = np.array(errors)
    return GateErrorCurve(
        grid=grid,
        errors=errors,
        positions=np.array(positions),
        tuning=tuning,
        parameter=parameter,
        fit=fit_error_curve(grid, errors),
    )


def speed_bound(epsilon_t, eta, n=0, fits=None, rabi=1.0, omega_t=1.0):
    """Pi-pulse duration T_n = pi / (eta Omega_R sqrt(n+1)) and its admissible limits.

    `fits` maps tunings to ErrorFit lines of error against eta; each is
    inverted at epsilon_t to the admissible eta, which fixes the largest
    usable Omega_R at this eta and hence the fastest admissible pulse.
    """
    if not 0 < epsilon_t < 1:
        raise ConfigError(f"error threshold must lie in (0, 1), got {epsilon_t}", key="epsilon_t")
    if eta <= 0 or rabi <= 0:
        raise ConfigError(f"eta and Omega_R must be positive, got {eta} and {rabi}", key="eta")
    if n < 0:
        raise ConfigError(f"vibrational number must be non-negative, got {n}", key="n")
    rate = eta * rabi * np.sqrt(n + 1) / np.pi
    admissible = {}
    for tuning, fit in (fits or {}).items():
        tuning = Tuning(tuning)
        eta_adm = fit.invert(epsilon_t)
        if eta_adm is None:
            raise ThresholdUnreachableError(
                f"error threshold {epsilon_t} is not reached by the {tuning.value} fit "
                f"within eta <= {fit.grid_max:.4g}"
            )
        rabi_max = omega_t * eta_adm / eta
        admissible_rate = eta * rabi_max * np.sqrt(n + 1) / np.pi
        admissible[tuning.value] = {
            "eta": eta_adm,
            "rabi_max": rabi_max,
            "pulse_time": 1.0 / admissible_rate,
            "rate": admissible_rate,
        }
    improvement = None
    if Tuning.BARE.value in admissible and Tuning.DYNAMICAL.value in admissible:
        improvement = admissible[Tuning.DYNAMICAL.value]["rate"] / admissible[Tuning.BARE.value]["rate"]
    bound = SpeedBound(
        epsilon_t=epsilon_t,
        eta=eta,
        n=n,
        rabi=rabi,
        pulse_time=1.0 / rate,
        rate=rate,
        rate_bound=epsilon_t * omega_t / np.pi,
        admissible=admissible,
        improvement=improvement,
        cz_ratio=1.0 / eta,
    )
    logger.info(f"Speed bound: 1/T_{n}={rate:.6g}, improvement {improvement}")
    return bound
