"""Truncated Fock-space operators and trapped-ion coupling strengths."""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg
from scipy.special import gammaln

from common.base import BaseRecord
from common.exceptions import ConfigError


def build_ladder_operators(n_fock):
    """Annihilation and creation operators on the first `n_fock` number states."""
    if n_fock < 2:
        raise ConfigError(f"N_fock must be at least 2, got {n_fock}", key="n_fock")
    annihilation = np.diag(np.sqrt(np.arange(1, n_fock, dtype=float)), k=1).astype(complex)
    return annihilation, annihilation.conj().T.copy()


def number_operator(n_fock):
    annihilation, creation = build_ladder_operators(n_fock)
    return creation @ annihilation


def quadrature(n_fock):
    """a + a^dagger, real symmetric."""
    annihilation, creation = build_ladder_operators(n_fock)
    return (annihilation + creation).real


def laguerre_table(n_max, alphas, x):
    """Associated Laguerre values L_n^alpha(x) for n < n_max and every alpha.

    Uses the three-term recurrence in n, vectorized over alpha, so no factorial
    ratios are formed. Returns an array indexed [alpha position, n].
    """
    alphas = np.asarray(alphas, dtype=float)
    table = np.zeros((alphas.size, max(n_max, 1)))
    table[:, 0] = 1.0
    if n_max > 1:
        table[:, 1] = 1.0 + alphas - x
    for m in range(2, n_max):
        table[:, m] = ((2 * m - 1 + alphas - x) * table[:, m - 1] - (m - 1 + alphas) * table[:, m - 2]) / m
    return table


@dataclass(frozen=True)
class CouplingStrength(BaseRecord):
    """Dimensionless amplitude <n|exp(i eta (a + a^dagger))|n'> per unit Rabi frequency."""

    value: complex

    extra_fields = ("c", "s")

    @property
    def c(self):
        return float(self.value.real)

    @property
    def s(self):
        return float(self.value.imag)

    def __abs__(self):
        return abs(self.value)


def _check_eta(eta):
    if eta < 0:
        raise ConfigError(f"Lamb-Dicke parameter must be non-negative, got {eta}", key="eta")


def coupling_strength(eta, n, n_prime):
    """Closed-form Omega_{n,n'} = e^{-eta^2/2} (i eta)^d sqrt(n_<!/n_>!) L^d_{n_<}(eta^2)."""
    _check_eta(eta)
    if n < 0 or n_prime < 0:
        raise ConfigError(f"vibrational numbers must be non-negative, got ({n}, {n_prime})")
    lower, upper = min(n, n_prime), max(n, n_prime)
    d = upper - lower
    x = eta * eta
    laguerre = laguerre_table(lower + 1, [d], x)[0, lower]
    ratio = np.exp(0.5 * (gammaln(lower + 1) - gammaln(upper + 1)))
    value = np.exp(-0.5 * x) * (1j * eta) ** d * ratio * laguerre
    return CouplingStrength(value=complex(value))


@lru_cache(maxsize=64)
def _displacement_cached(eta, n_fock):
    x = eta * eta
    offsets = np.arange(n_fock)
    table = laguerre_table(n_fock, offsets, x)
    matrix = np.zeros((n_fock, n_fock), dtype=complex)
    for d in offsets:
        lower = np.arange(n_fock - d)
        ratio = np.exp(0.5 * (gammaln(lower + 1) - gammaln(lower + d + 1)))
        diagonal = np.exp(-0.5 * x) * (1j * eta) ** d * ratio * table[d, : n_fock - d]
        matrix[lower, lower + d] = diagonal
        matrix[lower + d, lower] = diagonal
    matrix.flags.writeable = False
    return matrix


def displacement_matrix(eta, n_fock):
    """Matrix of exact elements Omega_{n,n'} on the truncated space (read-only)."""
    _check_eta(eta)
    if n_fock < 2:
        raise ConfigError(f"N_fock must be at least 2, got {n_fock}", key="n_fock")
    return _displacement_cached(float(eta), int(n_fock))


def quadrature_functions(eta, n_fock):
    """cos(alpha) and sin(alpha) for alpha = eta (a + a^dagger), from the exact elements.

    Entry-wise these are C_{n,n'} = Re Omega_{n,n'} and S_{n,n'} = Im Omega_{n,n'}.
    """
    matrix = displacement_matrix(eta, n_fock)
    return matrix.real.copy(), matrix.imag.copy()


def matrix_exponential_quadrature(eta, n_fock):
    """exp(i eta (a + a^dagger)) of the truncated quadrature, by eigendecomposition.

    Brute-force oracle for coupling_strength; only the entries well below the
    truncation are meaningful.
    """
    _check_eta(eta)
    positions, modes = scipy.linalg.eigh(quadrature(n_fock))
    return (modes * np.exp(1j * eta * positions)) @ modes.T
