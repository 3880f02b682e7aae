from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd

from aclab import settings
from common.base import BaseRecord
from common.exceptions import ConfigError
from utils.enums import ModelKind, PulseRule, Tuning

ENERGY_UNIT = f"[{settings.UNITS}]"


@dataclass(frozen=True)
class PulseSpec(BaseRecord):
    """How long the laser stays on.

    effective_pi: Omega t = pi with Omega the dressed splitting of the pair;
    ld_pi: eta Omega_R t = pi; sideband_pi: eta Omega_R sqrt(n+1) t = pi with
    n the lower vibrational number of the transition; explicit_time: `time`.
    """

    rule: PulseRule = PulseRule.LD_PI
    time: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "rule", PulseRule(self.rule))
        if self.rule is PulseRule.EXPLICIT and (self.time is None or self.time <= 0):
            raise ConfigError(f"explicit pulses need a positive time, got {self.time}", key="time")

    @classmethod
    def default_for(cls, spec):
        """ld_pi for the ion models (sideband_pi beyond n = 0), effective_pi otherwise."""
        if spec is None or spec.kind is ModelKind.GENERIC:
            return cls(PulseRule.EFFECTIVE_PI)
        if min(spec.transition) > 0:
            return cls(PulseRule.SIDEBAND_PI)
        return cls(PulseRule.LD_PI)

    def resolve(self, partition, effective=None):
        """Pulse duration at the partition's xi.

        `effective` supplies the dressed splitting for effective_pi pulses.
        """
        if self.rule is PulseRule.EXPLICIT:
            return float(self.time)
        if self.rule is PulseRule.EFFECTIVE_PI:
            if effective is None:
                raise ConfigError("effective_pi pulses need the effective two-level model", key="pulse")
            return _positive(np.pi / effective.rabi_frequency)
        spec = partition.spec
        if spec is None or spec.kind is ModelKind.GENERIC:
            raise ConfigError(f"{self.rule.value} pulses need an ion model with eta and Omega_R", key="pulse")
        coupling = spec.eta * spec.rabi
        if self.rule is PulseRule.SIDEBAND_PI:
            coupling *= np.sqrt(min(spec.transition) + 1)
        return _positive(np.pi / coupling if coupling > 0 else np.inf)


def _positive(duration):
    if not np.isfinite(duration) or duration <= 0:
        raise ConfigError(f"pulse duration must be finite and positive, got {duration}", key="pulse")
    return float(duration)


@dataclass(frozen=True, eq=False)
class FlipScan(BaseRecord):
    xi_grid: np.ndarray
    probabilities: np.ndarray
    pulse_rule: PulseRule
    durations: np.ndarray
    max_leakage: float = 0.0

    hidden_fields = ("xi_grid", "probabilities", "durations")

    def to_frame(self):
        return pd.DataFrame({
            f"xi{ENERGY_UNIT}": self.xi_grid,
            "P": self.probabilities,
            "pulse_rule": self.pulse_rule.value,
        })


@dataclass(frozen=True)
class DynamicalResonance(BaseRecord):
    xi_D: float
    p_max: float
    pulse_rule: PulseRule
    duration: float

    def __iter__(self):
        # unpacks as (xi_D, P_max)
        return iter((self.xi_D, self.p_max))


@dataclass(frozen=True)
class ErrorFit(BaseRecord):
    """Least-squares line error = slope * x + intercept over the curve's grid."""

    slope: float
    intercept: float
    r_squared: float
    grid_min: float
    grid_max: float

    def invert(self, error):
        """Grid value at which the fitted error reaches `error`, or None outside the grid."""
        if self.slope <= 0:
            return None
        value = (error - self.intercept) / self.slope
        if value <= 0 or value > self.grid_max:
            return None
        return value


@dataclass(frozen=True, eq=False)
class GateErrorCurve(BaseRecord):
    """epsilon = sqrt(1 - P_flip) after a pi pulse, along a perturbation-strength grid.

    `parameter` is `eta` for the SS gate and `rabi` for the CZ gate;
    `positions` holds the tuned xi at each grid value.
    """

    grid: np.ndarray
    errors: np.ndarray
    positions: np.ndarray
    tuning: Tuning
    parameter: str = "eta"
    fit: Optional[ErrorFit] = None

    hidden_fields = ("grid", "errors", "positions")

    def to_frame(self):
        column = self.parameter if self.parameter == "eta" else f"{self.parameter}{ENERGY_UNIT}"
        return pd.DataFrame({
            column: self.grid,
            "error": self.errors,
            "tuning": self.tuning.value,
            f"xi{ENERGY_UNIT}": self.positions,
        })


@dataclass(frozen=True)
class SpeedBound(BaseRecord):
    """Pi-pulse duration T_n = pi / (eta Omega_R sqrt(n+1)) and the rates the error budget admits."""

    epsilon_t: float
    eta: float
    n: int
    rabi: float
    pulse_time: float
    rate: float
    rate_bound: float
    admissible: dict = field(default_factory=dict)
    improvement: Optional[float] = None
    cz_ratio: Optional[float] = None
