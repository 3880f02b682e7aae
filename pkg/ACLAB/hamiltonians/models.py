import dataclasses
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from aclab import settings
from common.base import BaseRecord
from common.exceptions import ConfigError
from common.linalg import HermitianOperator
from utils.enums import GenericCoupling, ModelKind, Spin

SPIN_LABELS = {
    ModelKind.GENERIC: {Spin.UPPER: "a", Spin.LOWER: "b"},
    ModelKind.SS_GATE: {Spin.UPPER: "+", Spin.LOWER: "-"},
    ModelKind.CZ_GATE: {Spin.UPPER: "e", Spin.LOWER: "g"},
}

XI_NAMES = {
    ModelKind.GENERIC: "xi",
    ModelKind.SS_GATE: "rabi",
    ModelKind.CZ_GATE: "detuning",
}


@dataclass(frozen=True)
class BasisIndex(BaseRecord):
    """Product state |spin, n> with flat matrix index 2n + spin offset."""

    spin: Spin
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ConfigError(f"vibrational number must be non-negative, got {self.n}", key="n")

    def flat(self, n_fock=None):
        if n_fock is not None and self.n >= n_fock:
            raise ConfigError(f"state n={self.n} lies outside the truncation N_fock={n_fock}", key="transition")
        return 2 * self.n + self.spin.value

    @classmethod
    def from_flat(cls, index, n_fock=None):
        if index < 0 or (n_fock is not None and index >= 2 * n_fock):
            raise ConfigError(f"flat index {index} out of range")
        return cls(spin=Spin(index % 2), n=index // 2)

    def label(self, kind=ModelKind.GENERIC):
        return f"|{SPIN_LABELS[kind][self.spin]},{self.n}>"


def bare_crossing(na, nb, omega=1.0):
    """Bare crossing (xi_0, E_0) of |upper, na> and |lower, nb>."""
    return (nb - na) * omega, 0.5 * (na + nb) * omega


def rabi_resonance(na, nb, omega=1.0):
    """The (nb - na)-th Rabi resonance, Omega_R = (nb - na) omega_T."""
    return (nb - na) * omega


@dataclass(frozen=True)
class ModelSpec(BaseRecord):
    """Which model to build and at which parameters, in units of omega_T.

    The scan parameter xi is `rabi` for the SS gate, `detuning` for the CZ gate
    and `xi` for the generic model; `transition` is the resonant pair (na, nb).
    """

    kind: ModelKind = ModelKind.GENERIC
    eta: float = 0.0
    rabi: float = 1.0
    detuning: float = 0.0
    n_fock: int = settings.N_FOCK
    transition: tuple = (0, 1)
    omega: float = 1.0
    xi: Optional[float] = None
    coupling: GenericCoupling = GenericCoupling.NONE
    g: float = 0.0

    extra_fields = ("xi_name", "xi_value", "xi_0", "E_0")

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        object.__setattr__(self, "coupling", GenericCoupling(self.coupling))
        object.__setattr__(self, "transition", tuple(int(n) for n in self.transition))
        if self.eta < 0:
            raise ConfigError(f"must be non-negative, got {self.eta}", key="eta")
        if self.n_fock < 2:
            raise ConfigError(f"must be at least 2, got {self.n_fock}", key="n_fock")
        if self.omega <= 0:
            raise ConfigError(f"must be positive, got {self.omega}", key="omega")
        if len(self.transition) != 2:
            raise ConfigError(f"expected a pair [na, nb], got {list(self.transition)}", key="transition")
        for state in self.p_states:
            state.flat(self.n_fock)
        if self.kind is ModelKind.SS_GATE and self.detuning != 0:
            raise ConfigError(f"the SS gate requires zero detuning, got {self.detuning}", key="detuning")

    @property
    def xi_name(self):
        return XI_NAMES[self.kind]

    @property
    def xi_0(self):
        return bare_crossing(*self.transition, omega=self.omega)[0]

    @property
    def E_0(self):
        return bare_crossing(*self.transition, omega=self.omega)[1]

    @property
    def xi_value(self):
        value = getattr(self, self.xi_name)
        return self.xi_0 if value is None else value

    @property
    def perturbation_strength(self):
        """The parameter that switches V off: eta (SS), rabi (CZ) or g (generic)."""
        if self.kind is ModelKind.SS_GATE:
            return self.eta
        if self.kind is ModelKind.CZ_GATE:
            return self.rabi
        return self.g

    def with_xi(self, value):
        return dataclasses.replace(self, **{self.xi_name: float(value)})

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    @property
    def p_states(self):
        na, nb = self.transition
        if self.kind is ModelKind.CZ_GATE:
            return BasisIndex(Spin.LOWER, na), BasisIndex(Spin.UPPER, nb)
        return BasisIndex(Spin.UPPER, na), BasisIndex(Spin.LOWER, nb)

    def default_window(self):
        """Scan window centred on the bare crossing, wide enough for the expected shifts."""
        if self.kind is ModelKind.SS_GATE:
            half = 0.1 + 2.0 * self.eta ** 2 * max(self.transition)
        elif self.kind is ModelKind.CZ_GATE:
            half = 0.05 + 1.5 * self.rabi ** 2
        else:
            half = 0.25 * self.omega
        return self.xi_0 - half, self.xi_0 + half

    def labels(self):
        return tuple(state.label(self.kind) for state in self.p_states)


@dataclass(frozen=True, eq=False)
class Partition:
    """H = H0 + V at one value of xi, with the resonant pair P = {|a>, |b>}."""

    h0: HermitianOperator
    v: HermitianOperator
    p_states: tuple
    xi: float
    spec: Optional[ModelSpec] = None

    def __post_init__(self):
        a, b = self.p_states
        if a == b:
            raise ConfigError(f"resonant states must be distinct, got {a} twice", key="transition")
        if self.h0.dim != self.v.dim:
            raise ConfigError(f"H0 and V dimensions differ: {self.h0.dim} vs {self.v.dim}")

    @property
    def n_fock(self):
        return self.h0.n_fock

    @property
    def hamiltonian(self):
        return self.h0 + self.v

    @property
    def p_indices(self):
        return np.array([state.flat(self.n_fock) for state in self.p_states])

    @property
    def q_indices(self):
        return np.setdiff1d(np.arange(self.h0.dim), self.p_indices)

    @property
    def bare_energies(self):
        """(eps_a, eps_b) from the diagonal of H0."""
        diagonal = np.real(np.diag(self.h0.entries))
        return tuple(float(diagonal[i]) for i in self.p_indices)


@dataclass(frozen=True, eq=False)
class PartitionFamily:
    """A custom partition-producing model: xi -> Partition.

    Lets callers scan models that are not described by a ModelSpec, such as a
    generic model with a user-supplied perturbation.
    """

    build: Callable
    xi_0: float
    E_0: float
    window: tuple
    name: str = "custom"
    spec: Optional[ModelSpec] = None

    def at(self, xi):
        return self.build(xi)
