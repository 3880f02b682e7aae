"""Level-shift operator on the resonant pair and the implicit effective Hamiltonian."""
import logging

import numpy as np
import scipy.linalg

from aclab import settings
from common.exceptions import ConfigError, ConvergenceError, DegenerateIntruderError, SeriesDivergenceError
from effective.models import EffectiveTwoLevel, ImplicitSolution
from utils.enums import Branch

logger = logging.getLogger(__name__)


def _blocks(partition):
    p, q = partition.p_indices, partition.q_indices
    v = partition.v.entries
    return p, q, v[np.ix_(p, p)], v[np.ix_(p, q)], v[np.ix_(q, p)]


def level_shift_resolvent(partition, E):
    """R(E) = PVP + PVQ [Q(E - H)Q]^-1 QVP on the pair, in units of omega_T.

    Rows and columns are ordered (|a>, |b>).
    """
    p, q, vpp, vpq, vqp = _blocks(partition)
    if q.size == 0:
        return vpp.copy()
    h = partition.hamiltonian.entries
    system = E * np.eye(q.size) - h[np.ix_(q, q)]
    condition = np.linalg.cond(system)
    if not np.isfinite(condition) or condition > settings.RESOLVENT_MAX_CONDITION:
        logger.error(f"Q-resolvent singular at E={E:.12g} (condition {condition:.3e})")
        raise DegenerateIntruderError(E, condition)
    solution = scipy.linalg.solve(system, vqp, assume_a="her")
    return vpp + vpq @ solution


def level_shift_series(partition, E, order):
    """Partial sum PVP + sum_{k=1}^{order} PV (Q/(E - H0) V)^k P.

    Raises SeriesDivergenceError once the non-vanishing term norms stop
    decreasing for settings.DIVERGENCE_WINDOW consecutive terms. Terms that
    vanish by a parity selection rule are left out of that window.
    """
    if order < 0:
        raise ConfigError(f"series order must be non-negative, got {order}", key="order")
    p, q, vpp, vpq, vqp = _blocks(partition)
    total = vpp.copy()
    if order == 0 or q.size == 0:
        return total
    denominators = E - np.real(np.diag(partition.h0.entries))[q]
    if np.any(np.abs(denominators) < 1.0 / settings.RESOLVENT_MAX_CONDITION):
        raise DegenerateIntruderError(E, np.inf)
    propagator = 1.0 / denominators
    vqq = partition.v.entries[np.ix_(q, q)]
    chain = propagator[:, None] * vqp
    norms = []
    window = settings.DIVERGENCE_WINDOW
    for k in range(1, order + 1):
        term = vpq @ chain
        total = total + term
        norms.append(float(np.linalg.norm(term)))
        scale = max(norms)
        recent = [norm for norm in norms if norm > settings.SERIES_ZERO_RTOL * scale][-window:]
        if len(recent) == window and all(b >= a for a, b in zip(recent, recent[1:])):
            logger.warning(f"Level-shift series diverging at order {k} (term norm {recent[-1]:.3e})")
            raise SeriesDivergenceError(k, norms)
        chain = propagator[:, None] * (vqq @ chain)
    return total


def effective_hamiltonian(partition, E, order=None):
    """Effective 2x2 model at energy E.

    delta = ((eps_b + r_bb) - (eps_a + r_aa)) / 2 with the bare energies read
    off H0. `order` switches from the closed resolvent to the truncated series.
    """
    if order is None:
        shift = level_shift_resolvent(partition, E)
    else:
        shift = level_shift_series(partition, E, order)
    eps_a, eps_b = partition.bare_energies
    r_aa, r_bb = float(shift[0, 0].real), float(shift[1, 1].real)
    return EffectiveTwoLevel(
        r_aa=r_aa,
        r_bb=r_bb,
        r_ab=complex(shift[0, 1]),
        delta=0.5 * ((eps_b + r_bb) - (eps_a + r_aa)),
        E_ref=float(E),
        trace=0.5 * (eps_a + eps_b + r_aa + r_bb),
        bare_energies=(eps_a, eps_b),
    )


def iterate_implicit_energy(partition, branch=Branch.CENTER, E0=None, tol=None, max_iter=None, order=None):
    """Solve E = E_branch(H_eff(E)) by fixed-point iteration from the bare crossing energy.

    The start (eps_a + eps_b)/2 equals the bare crossing energy E_0 at every xi.
    """
    branch = Branch(branch)
    tol = settings.IMPLICIT_TOL if tol is None else tol
    max_iter = settings.MAX_IMPLICIT_ITER if max_iter is None else max_iter
    energy = float(np.mean(partition.bare_energies)) if E0 is None else float(E0)
    history = [energy]
    residual = np.inf
    for iteration in range(1, max_iter + 1):
        effective = effective_hamiltonian(partition, energy, order=order)
        updated = effective.energy(branch)
        residual = abs(updated - energy)
        energy = updated
        history.append(energy)
        if residual <= tol * max(1.0, abs(energy)):
            logger.debug(f"Implicit energy ({branch.value}) converged to {energy:.12g} in {iteration} steps")
            return ImplicitSolution(
                energy=energy,
                effective=effective_hamiltonian(partition, energy, order=order),
                iterations=iteration,
                branch=branch,
                history=tuple(history),
            )
    logger.error(f"Implicit energy ({branch.value}) failed after {max_iter} steps, residual {residual:.3e}")
    raise ConvergenceError(max_iter, residual)
