import logging
import warnings

import numpy as np

from aclab import settings
from common.exceptions import ConfigError, TruncationLeakageWarning
from common.linalg import diagonalize
from effective.resolvent import iterate_implicit_energy
from hamiltonians.builders import model_family
from utils.enums import Branch, PulseRule

logger = logging.getLogger(__name__)


def propagate(hamiltonian, psi0, t, decomposition=None):
    """psi(t) = sum_k exp(-i lambda_k t) v_k <v_k|psi0>, exact on the truncated space."""
    psi0 = np.asarray(psi0, dtype=complex)
    norm = np.linalg.norm(psi0)
    if abs(norm - 1.0) > 1e-12:
        raise ConfigError(f"initial state must be normalised, got norm {norm:.15g}", key="psi0")
    decomposition = decomposition or diagonalize(hamiltonian)
    vectors = decomposition.eigenvectors
    amplitudes = vectors.conj().T @ psi0
    return vectors @ (np.exp(-1j * decomposition.eigenvalues * t) * amplitudes)


def basis_state(state, n_fock):
    vector = np.zeros(2 * n_fock, dtype=complex)
    vector[state.flat(n_fock)] = 1.0
    return vector


def leakage_levels(n_fock, transition):
    """Vibrational levels watched for truncation leakage (the top five, clear of the transition)."""
    top = min(settings.LEAKAGE_LEVELS, n_fock - max(transition) - 1)
    return max(top, 0)


def flip_at(partition, pulse):
    """(P_flip, duration, leakage) for one partition."""
    effective = None
    if pulse.rule is PulseRule.EFFECTIVE_PI:
        effective = iterate_implicit_energy(partition, Branch.CENTER).effective
    duration = pulse.resolve(partition, effective)
    a, b = partition.p_states
    n_fock = partition.n_fock
    psi = propagate(partition.hamiltonian, basis_state(a, n_fock), duration)
    probability = float(abs(psi[b.flat(n_fock)]) ** 2)
    watched = leakage_levels(n_fock, (a.n, b.n))
    leakage = float(np.sum(np.abs(psi[2 * (n_fock - watched):]) ** 2)) if watched else 0.0
    return min(probability, 1.0), duration, leakage


def warn_leakage(leakage, n_fock):
    if leakage > settings.LEAKAGE_TOL:
        message = (
            f"population {leakage:.3e} reached the top vibrational levels of N_fock={n_fock}; "
            "increase the truncation"
        )
        logger.warning(message)
        warnings.warn(message, TruncationLeakageWarning, stacklevel=3)


def flip_probability(model, xi, pulse):
    """|<b|exp(-iHt)|a>|^2 under the full truncated Hamiltonian at xi."""
    family = model_family(model)
    partition = family.at(xi)
    probability, duration, leakage = flip_at(partition, pulse)
    warn_leakage(leakage, partition.n_fock)
    logger.debug(f"P_flip({xi:.10g}) = {probability:.12g} after t={duration:.6g}")
    return probability


def effective_flip_probability(effective, t):
    """|r|^2/(delta^2 + |r|^2) sin^2(Omega t / 2), Omega the dressed splitting."""
    coupling = abs(effective.r_ab) ** 2
    if coupling == 0:
        return 0.0
    half = effective.half_splitting
    return float(coupling / half ** 2 * np.sin(half * t) ** 2)
