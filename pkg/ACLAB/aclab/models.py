from dataclasses import dataclass
from typing import Optional

from common.base import BaseRecord
from dynamics.models import PulseSpec
from hamiltonians.models import ModelSpec
from utils.enums import Tuning


@dataclass(frozen=True)
class RunConfig(BaseRecord):
    """Everything one CLI run needs; identical configs give identical output files."""

    model: ModelSpec
    window: Optional[tuple] = None
    points: Optional[int] = None
    pulse: Optional[PulseSpec] = None
    tunings: tuple = (Tuning.BARE, Tuning.STRUCTURAL, Tuning.DYNAMICAL)
    grid: Optional[tuple] = None
    closed_form: bool = False
    epsilon_t: float = 0.05
    order: Optional[int] = None
    output_dir: Optional[str] = None
    prefix: Optional[str] = None

    @property
    def resolved_pulse(self):
        return self.pulse or PulseSpec.default_for(self.model)

    def file_prefix(self, command):
        return self.prefix or f"{self.model.kind.value}_{command}"
