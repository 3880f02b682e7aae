"""Hamiltonians and H0 + V partitions of the two-level + oscillator models.

Matrices act on oscillator (x) spin with flat index 2n + spin offset, spin
order (upper, lower). For the ion the upper state is |e>; in the SS-gate frame
it is |+> = (|e> + |g>)/sqrt(2).
"""
import logging

import numpy as np

from aclab import settings
from common.exceptions import ConfigError
from common.linalg import HermitianOperator, diagonalize
from common.operators import build_ladder_operators, displacement_matrix, quadrature_functions
from hamiltonians.models import ModelSpec, Partition, PartitionFamily, bare_crossing, rabi_resonance
from utils.enums import GenericCoupling, ModelKind

logger = logging.getLogger(__name__)

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_Z = np.diag([1.0, -1.0]).astype(complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_MINUS = SIGMA_PLUS.T.copy()

# columns are |+> and |-> in the (|e>, |g>) basis
SS_BASIS_CHANGE = np.array([[1, -1], [1, 1]], dtype=complex) / np.sqrt(2)

__all__ = [
    "SS_BASIS_CHANGE",
    "bare_crossing",
    "build_cz_partition",
    "build_full_ion_hamiltonian",
    "build_generic_partition",
    "build_partition",
    "build_ss_partition",
    "check_convergence",
    "generic_perturbation",
    "model_family",
    "rabi_resonance",
    "tilde_pauli",
    "to_dressed_basis",
]


def _oscillator(n_fock, omega=1.0):
    annihilation, creation = build_ladder_operators(n_fock)
    return annihilation, creation, omega * (creation @ annihilation)


def _sideband_coupling(eta, n_fock):
    displacement = displacement_matrix(eta, n_fock)
    return np.kron(displacement, SIGMA_PLUS) + np.kron(displacement.conj().T, SIGMA_MINUS)


def build_full_ion_hamiltonian(spec):
    """H = omega_T a^dagger a - (Delta/2) sigma_z + (Omega_R/2)[exp(i eta (a + a^dagger)) sigma_+ + h.c.]"""
    if spec.kind is ModelKind.GENERIC:
        raise ConfigError("the ion Hamiltonian needs kind ss_gate or cz_gate", key="kind")
    _, _, number = _oscillator(spec.n_fock, spec.omega)
    entries = (
        np.kron(number, IDENTITY_2)
        - 0.5 * spec.detuning * np.kron(np.eye(spec.n_fock), SIGMA_Z)
        + 0.5 * spec.rabi * _sideband_coupling(spec.eta, spec.n_fock)
    )
    return HermitianOperator(entries, spec.n_fock)


def to_dressed_basis(operator):
    """Rotate the spin factor from (|e>, |g>) to (|+>, |->)."""
    matrix = np.asarray(operator)
    n_fock = matrix.shape[0] // 2
    rotation = np.kron(np.eye(n_fock), SS_BASIS_CHANGE)
    rotated = rotation.conj().T @ matrix @ rotation
    # the similarity transform leaves rounding-level asymmetry
    rotated = 0.5 * (rotated + rotated.conj().T)
    if isinstance(operator, HermitianOperator):
        return HermitianOperator(rotated, operator.n_fock)
    return rotated


def tilde_pauli():
    """Pauli matrices of the (|+>, |->) frame expressed in the (|e>, |g>) basis."""
    w = SS_BASIS_CHANGE
    return {name: w @ matrix @ w.conj().T for name, matrix in (
        ("x", SIGMA_X), ("y", SIGMA_Y), ("z", SIGMA_Z), ("plus", SIGMA_PLUS), ("minus", SIGMA_MINUS),
    )}


def build_ss_partition(spec):
    """SS gate in the |+-> frame: H0 = omega_T a^dagger a + (Omega_R/2) sigma~_z.

    V = (Omega_R/2)[(cos(alpha) - 1) sigma~_z + i sin(alpha)(sigma~_+ - sigma~_-)]
    with alpha = eta (a + a^dagger); V vanishes at eta = 0.
    """
    if spec.kind is not ModelKind.SS_GATE:
        raise ConfigError(f"expected kind ss_gate, got {spec.kind.value}", key="kind")
    if spec.detuning != 0:
        raise ConfigError(f"the SS gate requires zero detuning, got {spec.detuning}", key="detuning")
    n_fock = spec.n_fock
    _, _, number = _oscillator(n_fock, spec.omega)
    cosine, sine = quadrature_functions(spec.eta, n_fock)
    h0 = np.kron(number, IDENTITY_2) + 0.5 * spec.rabi * np.kron(np.eye(n_fock), SIGMA_Z)
    v = 0.5 * spec.rabi * (
        np.kron(cosine - np.eye(n_fock), SIGMA_Z)
        + 1j * np.kron(sine, SIGMA_PLUS - SIGMA_MINUS)
    )
    return Partition(
        h0=HermitianOperator(h0, n_fock),
        v=HermitianOperator(v, n_fock),
        p_states=spec.p_states,
        xi=spec.rabi,
        spec=spec,
    )


def build_cz_partition(spec):
    """CZ gate: H0 = omega_T a^dagger a - (Delta/2) sigma_z, V = the full laser coupling."""
    if spec.kind is not ModelKind.CZ_GATE:
        raise ConfigError(f"expected kind cz_gate, got {spec.kind.value}", key="kind")
    n_fock = spec.n_fock
    _, _, number = _oscillator(n_fock, spec.omega)
    h0 = np.kron(number, IDENTITY_2) - 0.5 * spec.detuning * np.kron(np.eye(n_fock), SIGMA_Z)
    v = 0.5 * spec.rabi * _sideband_coupling(spec.eta, n_fock)
    return Partition(
        h0=HermitianOperator(h0, n_fock),
        v=HermitianOperator(v, n_fock),
        p_states=spec.p_states,
        xi=spec.detuning,
        spec=spec,
    )


def generic_perturbation(coupling, g):
    """Built-in perturbations V(xi) for the generic model, as (n_fock, xi) -> matrix."""
    coupling = GenericCoupling(coupling)

    def build(n_fock, xi):
        annihilation, creation = build_ladder_operators(n_fock)
        if coupling is GenericCoupling.NONE:
            return np.zeros((2 * n_fock, 2 * n_fock), dtype=complex)
        if coupling is GenericCoupling.JAYNES_CUMMINGS:
            return g * (np.kron(annihilation, SIGMA_PLUS) + np.kron(creation, SIGMA_MINUS))
        if coupling is GenericCoupling.RABI:
            return g * np.kron(annihilation + creation, SIGMA_X)
        return g * np.kron(creation @ annihilation, SIGMA_Z)

    return build


def build_generic_partition(omega, xi, v_builder, n_fock, transition=(0, 1), spec=None):
    """H = omega a^dagger a + (xi/2) sigma_z + V(xi).

    `v_builder(n_fock, xi)` returns the perturbation matrix.
    """
    if omega <= 0:
        raise ConfigError(f"oscillator frequency must be positive, got {omega}", key="omega")
    if spec is None:
        spec = ModelSpec(kind=ModelKind.GENERIC, n_fock=n_fock, transition=transition, omega=omega, xi=xi)
    _, _, number = _oscillator(n_fock, omega)
    h0 = np.kron(number, IDENTITY_2) + 0.5 * xi * np.kron(np.eye(n_fock), SIGMA_Z)
    v = np.asarray(v_builder(n_fock, xi), dtype=complex)
    if v.shape != h0.shape:
        raise ConfigError(f"perturbation has shape {v.shape}, expected {h0.shape}")
    return Partition(
        h0=HermitianOperator(h0, n_fock),
        v=HermitianOperator(v, n_fock),
        p_states=spec.p_states,
        xi=xi,
        spec=spec,
    )


def build_partition(spec):
    if spec.kind is ModelKind.SS_GATE:
        return build_ss_partition(spec)
    if spec.kind is ModelKind.CZ_GATE:
        return build_cz_partition(spec)
    return build_generic_partition(
        spec.omega,
        spec.xi_value,
        generic_perturbation(spec.coupling, spec.g),
        spec.n_fock,
        spec.transition,
        spec=spec,
    )


def model_family(model):
    """Wrap a ModelSpec (or pass through a PartitionFamily) as xi -> Partition."""
    if isinstance(model, PartitionFamily):
        return model
    if not isinstance(model, ModelSpec):
        raise ConfigError(f"expected a ModelSpec or PartitionFamily, got {type(model).__name__}")
    return PartitionFamily(
        build=lambda xi: build_partition(model.with_xi(xi)),
        xi_0=model.xi_0,
        E_0=model.E_0,
        window=model.default_window(),
        name=model.kind.value,
        spec=model,
    )


def check_convergence(spec, levels=4, tol=None):
    """Compare the lowest eigenvalues at N_fock and 2 N_fock.

    Returns (converged, max deviation).
    """
    tol = settings.CONVERGENCE_TOL if tol is None else tol
    coarse = diagonalize(build_partition(spec).hamiltonian).eigenvalues[:levels]
    fine = diagonalize(build_partition(spec.replace(n_fock=2 * spec.n_fock)).hamiltonian).eigenvalues[:levels]
    deviation = float(np.max(np.abs(coarse - fine)))
    converged = deviation <= tol
    if not converged:
        logger.warning(f"Truncation N_fock={spec.n_fock} not converged: lowest levels move by {deviation:.3e}")
    return converged, deviation
