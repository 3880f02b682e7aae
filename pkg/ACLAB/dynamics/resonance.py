import logging

import numpy as np
from scipy.optimize import minimize_scalar

from aclab import settings
from common.exceptions import ConfigError, WindowError
from dynamics.models import DynamicalResonance, FlipScan, PulseSpec
from dynamics.propagation import flip_at, warn_leakage
from hamiltonians.builders import model_family
from utils.parallel import map_grid

logger = logging.getLogger(__name__)


def scan_flip_probability(model, xi_window=None, pulse=None, points=None):
    """Flip probability after the pulse on a uniform xi grid."""
    family = model_family(model)
    pulse = pulse or PulseSpec.default_for(family.spec)
    points = points or settings.GRID_POINTS
    if points < 3:
        raise ConfigError(f"a scan needs at least 3 points, got {points}", key="points")
    low, high = xi_window or family.window
    grid = np.linspace(low, high, points)
    logger.info(f"Scanning flip probability ({pulse.rule.value}) over [{low:.6g}, {high:.6g}]")
    results = map_grid(lambda xi: flip_at(family.at(xi), pulse), grid)
    probabilities, durations, leakage = (np.array(column) for column in zip(*results))
    warn_leakage(leakage.max(), family.at(grid[0]).n_fock)
    return FlipScan(
        xi_grid=grid,
        probabilities=probabilities,
        pulse_rule=pulse.rule,
        durations=durations,
        max_leakage=float(leakage.max()),
    )


def find_dynamical_resonance(model, xi_window=None, pulse=None, points=None, xtol=None):
    """xi_D maximizing the flip probability: grid scan, then golden-section refinement."""
    family = model_family(model)
    xtol = xtol or settings.XTOL
    scan = scan_flip_probability(family, xi_window, pulse, points)
    grid, probabilities = scan.xi_grid, scan.probabilities
    i = int(np.argmax(probabilities))
    if i == 0 or i == len(grid) - 1:
        raise WindowError(f"flip maximum sits on the window boundary xi={grid[i]:.6g}; widen the scan window")
    pulse = pulse or PulseSpec.default_for(family.spec)

    def loss(xi):
        return -flip_at(family.at(xi), pulse)[0]

    try:
        result = minimize_scalar(loss, bracket=(grid[i - 1], grid[i], grid[i + 1]), method="golden",
                                 options={"xtol": xtol})
    except ValueError:
        result = minimize_scalar(loss, bounds=(grid[i - 1], grid[i + 1]), method="bounded",
                                 options={"xatol": xtol * max(1.0, abs(grid[i]))})
    xi_d, p_max = float(result.x), float(-result.fun)
    if p_max < probabilities[i]:
        xi_d, p_max = float(grid[i]), float(probabilities[i])
    duration = flip_at(family.at(xi_d), pulse)[1]
    logger.info(f"Flip maximum P={p_max:.10g} at xi_D={xi_d:.10g}")
    return DynamicalResonance(xi_D=xi_d, p_max=p_max, pulse_rule=pulse.rule, duration=duration)
