import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from aclab import settings
from common.exceptions import ConfigError, NonHermitianError, NumericalError

logger = logging.getLogger(__name__)


def hermiticity_violation(matrix):
    matrix = np.asarray(matrix)
    return float(np.max(np.abs(matrix - matrix.conj().T))) if matrix.size else 0.0


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Dense complex Hermitian matrix on the truncated Fock x two-level space.

    Rows and columns follow the flat index 2n + spin offset. Energies are in
    units of the trap frequency.
    """

    entries: np.ndarray
    n_fock: int

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ConfigError(f"operator must be a square matrix, got shape {entries.shape}")
        if self.n_fock < 1:
            raise ConfigError(f"truncation must be positive, got {self.n_fock}")
        violation = hermiticity_violation(entries)
        if violation > settings.HERMITIAN_ATOL:
            raise NonHermitianError(violation, settings.HERMITIAN_ATOL)
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self):
        return self.entries.shape[0]

    @property
    def norm(self):
        return float(np.linalg.norm(self.entries, 2)) if self.dim else 0.0

    def __add__(self, other):
        if not isinstance(other, HermitianOperator):
            return NotImplemented
        if other.dim != self.dim:
            raise ConfigError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return HermitianOperator(self.entries + other.entries, self.n_fock)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def max_residual(self, matrix):
        """Largest ||H v_k - lambda_k v_k|| over all eigenpairs."""
        matrix = np.asarray(matrix)
        residual = matrix @ self.eigenvectors - self.eigenvectors * self.eigenvalues
        return float(np.max(np.linalg.norm(residual, axis=0)))

    def orthonormality_defect(self):
        gram = self.eigenvectors.conj().T @ self.eigenvectors
        return float(np.max(np.abs(gram - np.eye(gram.shape[0]))))

    def reconstruct(self):
        vectors = self.eigenvectors
        return (vectors * self.eigenvalues) @ vectors.conj().T


def diagonalize(operator):
    """Ascending eigenvalues and orthonormal eigenvectors of a Hermitian matrix.

    Accepts a HermitianOperator or a raw array; raw arrays are checked for
    Hermiticity first.
    """
    if isinstance(operator, HermitianOperator):
        matrix = operator.entries
    else:
        matrix = np.asarray(operator, dtype=complex)
        violation = hermiticity_violation(matrix)
        if violation > settings.HERMITIAN_ATOL:
            logger.error(f"Refusing to diagonalize non-Hermitian input (violation {violation:.3e})")
            raise NonHermitianError(violation, settings.HERMITIAN_ATOL)
    eigenvalues, eigenvectors = scipy.linalg.eigh(matrix)
    decomposition = EigenDecomposition(eigenvalues=eigenvalues, eigenvectors=eigenvectors)
    # residuals are relative to the spectral norm, with a floor of one
    scale = max(1.0, float(np.max(np.abs(eigenvalues), initial=0.0)))
    residual = decomposition.max_residual(matrix)
    defect = decomposition.orthonormality_defect()
    if residual > settings.RESIDUAL_RTOL * scale or defect > settings.RESIDUAL_RTOL:
        logger.error(f"Eigensolver post-condition failed (residual {residual:.3e}, orthonormality {defect:.3e})")
        raise NumericalError(
            f"eigen-decomposition residual {residual:.3e} or orthonormality defect {defect:.3e} "
            f"exceeds {settings.RESIDUAL_RTOL:.0e}"
        )
    return decomposition
