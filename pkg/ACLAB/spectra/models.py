from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np
import pandas as pd

from aclab import settings
from common.base import BaseRecord

ENERGY_UNIT = f"[{settings.UNITS}]"


@dataclass(frozen=True, eq=False)
class LevelTrack(BaseRecord):
    """Two dressed levels followed across a xi window.

    `energies[:, k]` is track k; `weights[:, k, j]` is the probability of the
    j-th resonant bare state (a, then b) in track k. `intruder_weight` is the
    largest P weight carried by any other level at each grid point and
    `continuity` the smaller of the two step-to-step eigenvector overlaps.
    """

    xi_grid: np.ndarray
    energies: np.ndarray
    weights: np.ndarray
    intruder_weight: np.ndarray
    continuity: np.ndarray
    xi_name: str = "xi"
    xi_0: float = 0.0
    family: Any = field(default=None, repr=False)

    hidden_fields = ("family", "energies", "weights", "intruder_weight", "continuity", "xi_grid")
    extra_fields = ("points", "window", "isolated")

    @property
    def points(self):
        return len(self.xi_grid)

    @property
    def window(self):
        return float(self.xi_grid[0]), float(self.xi_grid[-1])

    @property
    def isolated(self):
        return bool(np.all(self.intruder_weight <= settings.INTRUDER_THRESHOLD))

    @property
    def _upper(self):
        return np.argmax(self.energies, axis=1)

    @property
    def e_plus(self):
        return np.max(self.energies, axis=1)

    @property
    def e_minus(self):
        return np.min(self.energies, axis=1)

    @property
    def gap(self):
        return self.e_plus - self.e_minus

    def bare_weight(self, state, upper):
        """|<state|eps_+->|^2 along the grid; `state` 0 is |a>, 1 is |b>."""
        rows = np.arange(self.points)
        track = self._upper if upper else 1 - self._upper
        return self.weights[rows, track, state]

    def to_frame(self):
        return pd.DataFrame({
            f"xi{ENERGY_UNIT}": self.xi_grid,
            f"E_plus{ENERGY_UNIT}": self.e_plus,
            f"E_minus{ENERGY_UNIT}": self.e_minus,
            f"gap{ENERGY_UNIT}": self.gap,
            "p_a_plus": self.bare_weight(0, upper=True),
            "p_a_minus": self.bare_weight(0, upper=False),
        })


@dataclass(frozen=True, eq=False)
class CharacterProfile(BaseRecord):
    """Bare-state content p_{alpha,+-} = |<alpha|eps_+->|^2 of the dressed pair."""

    xi_grid: np.ndarray
    p_a_plus: np.ndarray
    p_a_minus: np.ndarray
    p_b_plus: np.ndarray
    p_b_minus: np.ndarray
    xi_char: Optional[float] = None

    hidden_fields = ("xi_grid", "p_a_plus", "p_a_minus", "p_b_plus", "p_b_minus")

    def to_frame(self):
        return pd.DataFrame({
            f"xi{ENERGY_UNIT}": self.xi_grid,
            "p_a_plus": self.p_a_plus,
            "p_a_minus": self.p_a_minus,
            "p_b_plus": self.p_b_plus,
            "p_b_minus": self.p_b_minus,
        })


@dataclass(frozen=True)
class StructuralResonance(BaseRecord):
    """Minimal splitting of the dressed pair, with the level-slope cross-check."""

    xi_S: float
    min_gap: float
    xi_slope: Optional[float]
    tolerance: float
    isolated: bool = True

    def __iter__(self):
        # unpacks as (xi_S, min_gap)
        return iter((self.xi_S, self.min_gap))
