from enum import Enum


class Spin(Enum):
    # value is the offset inside the flat index 2n + offset
    UPPER = 0
    LOWER = 1


class ModelKind(Enum):
    GENERIC = "generic_two_level_oscillator"
    SS_GATE = "ss_gate"
    CZ_GATE = "cz_gate"


class GenericCoupling(Enum):
    NONE = "none"
    JAYNES_CUMMINGS = "jaynes_cummings"
    RABI = "rabi"
    DISPERSIVE = "dispersive"


class PulseRule(Enum):
    EFFECTIVE_PI = "effective_pi"
    LD_PI = "ld_pi"
    SIDEBAND_PI = "sideband_pi"
    EXPLICIT = "explicit_time"


class Tuning(Enum):
    BARE = "bare"
    STRUCTURAL = "structural"
    DYNAMICAL = "dynamical"


class ShiftMethod(Enum):
    CLOSED_FORM_LD = "closed_form_LD"
    RESOLVENT = "resolvent"
    SERIES = "series_order_k"
    NUMERIC_SCAN = "numeric_scan"


class Branch(Enum):
    PLUS = "plus"
    MINUS = "minus"
    CENTER = "center"
