from enum import Enum

import numpy as np

from aclab import settings


def round_sig(value, digits=None):
    """Round a float to a fixed number of significant digits for stable output."""
    digits = digits or settings.SIGNIFICANT_DIGITS
    if value is None:
        return None
    value = float(value)
    if not np.isfinite(value) or value == 0.0:
        return value
    return float(f"{value:.{digits}g}")


def to_primitive(value):
    """Convert enums, numpy values and complex numbers into JSON-ready values."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, BaseRecord):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(to_primitive(k)): to_primitive(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return [to_primitive(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [to_primitive(v) for v in value]
    if isinstance(value, (complex, np.complexfloating)):
        return [round_sig(value.real), round_sig(value.imag)]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return round_sig(value)
    return value


class BaseRecord:
    """Mixin for the frozen dataclasses that leave the library as reports.

    `to_dict` goes through common.serializer.RecordSerializer. Subclasses list
    derived properties in `extra_fields` so they are exported alongside the
    dataclass fields, and bulky arrays in `hidden_fields`.
    """

    extra_fields = ()
    hidden_fields = ()

    def to_dict(self):
        from common.serializer import RecordSerializer

        return dict(RecordSerializer(self).data)

    def __str__(self):
        return f"{type(self).__name__}({self.to_dict()})"
