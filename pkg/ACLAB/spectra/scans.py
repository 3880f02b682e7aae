import logging
import warnings

import numpy as np
from scipy.optimize import brentq, linear_sum_assignment, minimize_scalar

from aclab import settings
from common.exceptions import ConfigError, NonIsolatedCrossingWarning, WindowError
from common.linalg import diagonalize
from hamiltonians.builders import model_family
from spectra.models import CharacterProfile, LevelTrack, StructuralResonance
from utils.parallel import map_grid

logger = logging.getLogger(__name__)


def _p_weights(partition, vectors):
    """|<a|v_k>|^2 and |<b|v_k>|^2 for every eigenvector column, shape (dim, 2)."""
    return np.abs(vectors[partition.p_indices, :].T) ** 2


def dressed_pair(partition):
    """The two eigenpairs with the largest weight on P, ordered (upper, lower).

    Returns (energies, vectors, weights, intruder) where `intruder` is the
    largest P weight of any remaining level.
    """
    decomposition = diagonalize(partition.hamiltonian)
    weights = _p_weights(partition, decomposition.eigenvectors)
    total = weights.sum(axis=1)
    order = np.argsort(total)[::-1]
    pair = order[:2]
    pair = pair[np.argsort(decomposition.eigenvalues[pair])[::-1]]
    intruder = float(total[order[2]]) if len(order) > 2 else 0.0
    return (
        decomposition.eigenvalues[pair],
        decomposition.eigenvectors[:, pair],
        weights[pair],
        intruder,
    )


def gap_at(family, xi):
    energies, _, _, _ = dressed_pair(family.at(xi))
    return float(energies[0] - energies[1])


def _check_window(xi_window, points, xi_0, require_crossing):
    if points < 3:
        raise ConfigError(f"a scan needs at least 3 points, got {points}", key="points")
    low, high = map(float, xi_window)
    if not low < high:
        raise ConfigError(f"empty window [{low}, {high}]", key="window")
    if require_crossing and not low <= xi_0 <= high:
        raise ConfigError(f"window [{low}, {high}] does not contain the bare crossing {xi_0}", key="window")
    return low, high


def scan_levels(model, xi_window=None, points=None, require_crossing=True):
    """Diagonalize along a xi grid and follow the two levels of the resonant pair.

    Levels are followed by maximal eigenvector overlap with the previous grid
    point, so the tracks stay smooth through the crossing.
    """
    family = model_family(model)
    points = points or settings.GRID_POINTS
    low, high = _check_window(xi_window or family.window, points, family.xi_0, require_crossing)
    grid = np.linspace(low, high, points)
    logger.info(f"Scanning {family.name} over [{low:.6g}, {high:.6g}] with {points} points")

    def evaluate(xi):
        partition = family.at(xi)
        decomposition = diagonalize(partition.hamiltonian)
        return partition, decomposition

    results = map_grid(evaluate, grid)

    energies = np.zeros((points, 2))
    weights = np.zeros((points, 2, 2))
    intruder = np.zeros(points)
    continuity = np.ones(points)
    previous = None
    for i, (partition, decomposition) in enumerate(results):
        vectors = decomposition.eigenvectors
        level_weights = _p_weights(partition, vectors)
        total = level_weights.sum(axis=1)
        if previous is None:
            tracks = np.argsort(total)[::-1][:2]
        else:
            overlaps = np.abs(previous.conj().T @ vectors) ** 2
            rows, tracks = linear_sum_assignment(-overlaps)
            tracks = tracks[np.argsort(rows)]
            continuity[i] = float(np.min(overlaps[[0, 1], tracks]))
        previous = vectors[:, tracks]
        energies[i] = decomposition.eigenvalues[tracks]
        weights[i] = level_weights[tracks]
        others = np.delete(total, tracks)
        intruder[i] = float(others.max()) if others.size else 0.0

    track = LevelTrack(
        xi_grid=grid,
        energies=energies,
        weights=weights,
        intruder_weight=intruder,
        continuity=continuity,
        xi_name=family.spec.xi_name if family.spec else "xi",
        xi_0=family.xi_0,
        family=family,
    )
    if not track.isolated:
        where = grid[np.argmax(intruder)]
        message = (
            f"a third level carries P weight {intruder.max():.3f} > {settings.INTRUDER_THRESHOLD} "
            f"near xi={where:.6g}; the crossing is not isolated"
        )
        logger.warning(message)
        warnings.warn(message, NonIsolatedCrossingWarning, stacklevel=2)
    if continuity.min() < settings.CONTINUITY_THRESHOLD:
        message = f"track continuity overlap dropped to {continuity.min():.3f}; refine the grid"
        logger.warning(message)
        warnings.warn(message, NonIsolatedCrossingWarning, stacklevel=2)
    return track


def _slope(fn, x, h):
    # central difference with one Richardson step
    coarse = (fn(x + h) - fn(x - h)) / (2 * h)
    fine = (fn(x + h / 2) - fn(x - h / 2)) / h
    return (4 * fine - coarse) / 3


def find_structural_resonance(track, xtol=None):
    """Locate the minimal splitting of the tracked pair.

    Golden-section refinement of the gap around the best grid point; the zero
    of the finite-difference gap slope serves as an independent check.
    """
    xtol = xtol or settings.XTOL
    family = track.family
    grid, gaps = track.xi_grid, track.gap
    i = int(np.argmin(gaps))
    if i == 0 or i == len(grid) - 1:
        raise WindowError(
            f"gap minimum sits on the window boundary xi={grid[i]:.6g}; widen the scan window"
        )

    def gap(xi):
        return gap_at(family, xi)

    bracket = (grid[i - 1], grid[i], grid[i + 1])
    try:
        result = minimize_scalar(gap, bracket=bracket, method="golden", options={"xtol": xtol})
    except ValueError:
        # flat triple, fall back to a bounded search inside the bracket
        result = minimize_scalar(
            gap, bounds=(grid[i - 1], grid[i + 1]), method="bounded",
            options={"xatol": xtol * max(1.0, abs(grid[i]))},
        )
    xi_s, min_gap = float(result.x), float(result.fun)
    if min_gap > gaps[i]:
        xi_s, min_gap = float(grid[i]), float(gaps[i])

    spacing = grid[1] - grid[0]
    tolerance = 10 * xtol * max(1.0, abs(xi_s))
    xi_slope = None
    try:
        xi_slope = float(brentq(lambda x: _slope(gap, x, spacing), grid[i - 1], grid[i + 1], xtol=1e-14))
    except ValueError:
        pass
    isolated = xi_slope is not None and abs(xi_slope - xi_s) <= tolerance
    if not isolated:
        message = (
            f"structural estimates disagree: gap minimum at {xi_s:.12g}, "
            f"zero level slope at {xi_slope if xi_slope is None else f'{xi_slope:.12g}'}"
        )
        logger.warning(message)
        warnings.warn(message, NonIsolatedCrossingWarning, stacklevel=2)
    logger.info(f"Structural resonance xi_S={xi_s:.10g}, minimal gap {min_gap:.6g}")
    return StructuralResonance(
        xi_S=xi_s, min_gap=min_gap, xi_slope=xi_slope, tolerance=tolerance, isolated=isolated and track.isolated
    )


def character_profile(track):
    """Bare-state content of the upper and lower dressed levels along the track.

    `xi_char` is where |a> is shared equally between both levels, refined by
    root finding between the bracketing grid points.
    """
    profile = {
        "p_a_plus": track.bare_weight(0, upper=True),
        "p_a_minus": track.bare_weight(0, upper=False),
        "p_b_plus": track.bare_weight(1, upper=True),
        "p_b_minus": track.bare_weight(1, upper=False),
    }
    difference = profile["p_a_plus"] - profile["p_a_minus"]
    xi_char = None
    changes = np.nonzero(np.sign(difference[:-1]) * np.sign(difference[1:]) < 0)[0]
    exact = np.nonzero(difference == 0)[0]
    if changes.size and track.family is not None:
        i = int(changes[np.argmin(np.abs(track.xi_grid[changes] - track.xi_0))])

        def balance(xi):
            _, _, weights, _ = dressed_pair(track.family.at(xi))
            return weights[0, 0] - weights[1, 0]

        xi_char = float(brentq(balance, track.xi_grid[i], track.xi_grid[i + 1], xtol=1e-14))
    elif exact.size:
        xi_char = float(track.xi_grid[exact[0]])
    return CharacterProfile(xi_grid=track.xi_grid, xi_char=xi_char, **profile)
