import dataclasses
import json
import logging

import numpy as np
from rest_framework import serializers
from rest_framework.settings import api_settings

from common.base import to_primitive
from common.exceptions import ConfigError
from common.linalg import HermitianOperator

logger = logging.getLogger(__name__)


def dump_matrix(operator):
    """Debug dump: {dim, n_fock, entries} with row-major [re, im] pairs."""
    entries = np.asarray(operator.entries)
    return {
        "dim": int(entries.shape[0]),
        "n_fock": int(operator.n_fock),
        "entries": [[float(z.real), float(z.imag)] for z in entries.ravel()],
    }


def load_matrix(data):
    try:
        dim = int(data["dim"])
        pairs = np.asarray(data["entries"], dtype=float)
        n_fock = int(data["n_fock"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed matrix dump: {exc}") from exc
    if pairs.shape != (dim * dim, 2):
        raise ConfigError(f"expected {dim * dim} [re, im] pairs, got shape {pairs.shape}", key="entries")
    entries = (pairs[:, 0] + 1j * pairs[:, 1]).reshape(dim, dim)
    return HermitianOperator(entries, n_fock)


def read_json_config(path):
    """Load a JSON config file, returning the parsed object and its raw text."""
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    logger.debug(f"Loaded config {path}")
    return data, text


def first_error(errors, key=None):
    """(field, message) of the first leaf in a nested DRF error structure.

    Nested serializers report the innermost field name; list positions and
    non-field errors keep the enclosing key.
    """
    if isinstance(errors, dict):
        field, detail = next(iter(errors.items()))
        if isinstance(field, str) and field != api_settings.NON_FIELD_ERRORS_KEY:
            key = field
        return first_error(detail, key)
    if isinstance(errors, list):
        return first_error(errors[0], key)
    return key, str(errors)


class EnumField(serializers.ChoiceField):
    """Choice among an Enum's values; validates to the member, renders its value."""

    def __init__(self, enum_class, **kwargs):
        self.enum_class = enum_class
        super().__init__(choices=[member.value for member in enum_class], **kwargs)

    def to_internal_value(self, data):
        if isinstance(data, self.enum_class):
            return data
        return self.enum_class(super().to_internal_value(data))

    def to_representation(self, value):
        return self.enum_class(value).value


class ConfigSerializer(serializers.Serializer):
    """Base for the JSON config serializers.

    Unknown keys are rejected, and `is_valid(raise_exception=True)` raises a
    ConfigError naming the offending key and, when the raw config text is
    known, the line it sits on.
    """

    def __init__(self, *args, source_text=None, **kwargs):
        self.source_text = source_text
        super().__init__(*args, **kwargs)

    def line_of(self, key):
        if not self.source_text or key is None:
            return None
        needle = f'"{key}"'
        for number, line in enumerate(self.source_text.splitlines(), start=1):
            if needle in line:
                return number
        return None

    def to_internal_value(self, data):
        if isinstance(data, dict):
            unknown = sorted(set(data) - set(self.fields))
            if unknown:
                raise serializers.ValidationError({key: ["unknown field"] for key in unknown})
        return super().to_internal_value(data)

    def is_valid(self, *, raise_exception=False):
        valid = super().is_valid()
        if not valid and raise_exception:
            key, message = first_error(self.errors)
            logger.debug(f"Rejected config: {dict(self.errors)}")
            raise ConfigError(message, key=key, line=self.line_of(key))
        return valid


class ValueField(serializers.Field):
    """Read-only field rendering numpy values, complex numbers, enums and nested records."""

    def __init__(self, **kwargs):
        kwargs["read_only"] = True
        super().__init__(**kwargs)

    def to_representation(self, value):
        return to_primitive(value)


class RecordSerializer(serializers.Serializer):
    """Read-only export of a frozen result record.

    Fields are the record's dataclass fields minus `hidden_fields`, followed by
    the derived properties named in `extra_fields`.
    """

    def get_fields(self):
        record = self.instance
        names = [field.name for field in dataclasses.fields(record) if field.name not in record.hidden_fields]
        return {name: ValueField() for name in (*names, *record.extra_fields)}
