from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from common.base import BaseRecord
from utils.enums import Branch, ShiftMethod


@dataclass(frozen=True)
class EffectiveTwoLevel(BaseRecord):
    """Implicit 2x2 effective Hamiltonian on P = {|a>, |b>} evaluated at E_ref.

    With the trace removed the matrix is [[-delta, r_ab], [r_ab*, delta]];
    `trace` restores absolute energies.
    """

    r_aa: float
    r_bb: float
    r_ab: complex
    delta: float
    E_ref: float
    trace: float
    bare_energies: tuple = (0.0, 0.0)

    extra_fields = ("theta", "phi", "half_splitting")

    @property
    def coupling(self):
        return abs(self.r_ab)

    @property
    def phi(self):
        return float(np.angle(self.r_ab))

    @property
    def theta(self):
        """Mixing angle, tan(theta) = -|r_ab| / delta, in [0, pi]."""
        return float(np.arctan2(abs(self.r_ab), -self.delta))

    @property
    def half_splitting(self):
        return float(np.hypot(self.delta, abs(self.r_ab)))

    @property
    def rabi_frequency(self):
        """Generalized Rabi frequency of the pair, the full dressed splitting."""
        return 2.0 * self.half_splitting

    @property
    def matrix(self):
        return np.array([[-self.delta, self.r_ab], [np.conj(self.r_ab), self.delta]], dtype=complex)

    @property
    def full_matrix(self):
        return self.matrix + self.trace * np.eye(2)

    def energy(self, branch):
        branch = Branch(branch)
        if branch is Branch.CENTER:
            return self.trace
        sign = 1.0 if branch is Branch.PLUS else -1.0
        return self.trace + sign * self.half_splitting

    def dressed_states(self):
        """(|eps_+>, |eps_->) as coefficient pairs on (|a>, |b>)."""
        c, s = np.cos(self.theta / 2), np.sin(self.theta / 2)
        phase = np.exp(0.5j * self.phi)
        plus = np.array([c * phase, s * np.conj(phase)])
        minus = np.array([-s * phase, c * np.conj(phase)])
        return plus, minus

    def character(self):
        """p_{a+}, p_{a-}, p_{b+}, p_{b-}; p_{a+} = p_{b-} = cos^2(theta/2)."""
        plus, minus = self.dressed_states()
        return {
            "p_a_plus": float(abs(plus[0]) ** 2),
            "p_a_minus": float(abs(minus[0]) ** 2),
            "p_b_plus": float(abs(plus[1]) ** 2),
            "p_b_minus": float(abs(minus[1]) ** 2),
        }


@dataclass(frozen=True)
class ImplicitSolution(BaseRecord):
    """Fixed point E* = E_branch(H_eff(E*)) of the implicit effective Hamiltonian."""

    energy: float
    effective: EffectiveTwoLevel
    iterations: int
    branch: Branch
    history: tuple = ()

    def __iter__(self):
        return iter((self.energy, self.effective))


@dataclass(frozen=True)
class ShiftReport(BaseRecord):
    """Bare, structural and dynamical resonance positions of one transition.

    Delta_S = xi_S - xi_0 and Delta_D = xi_D - xi_S.
    """

    xi_0: float
    xi_S: float
    xi_D: float
    method: ShiftMethod
    tolerance: float
    xi_name: str = "xi"
    E_0: Optional[float] = None
    min_gap: Optional[float] = None
    xi_D_flip: Optional[float] = None
    xi_char: Optional[float] = None
    notes: tuple = field(default_factory=tuple)

    extra_fields = ("Delta_S", "Delta_D", "dynamical_shift_negligible")

    @property
    def Delta_S(self):
        return self.xi_S - self.xi_0

    @property
    def Delta_D(self):
        return self.xi_D - self.xi_S

    @property
    def dynamical_shift_negligible(self):
        """|Delta_D| at most a tenth of |Delta_S|."""
        return bool(abs(self.Delta_D) <= 0.1 * abs(self.Delta_S))
