from rest_framework import serializers

from aclab.models import RunConfig
from common.serializer import ConfigSerializer, EnumField
from dynamics.models import PulseSpec
from hamiltonians.models import ModelSpec
from hamiltonians.serializer import ModelSpecSerializer
from utils.enums import PulseRule, Tuning


class RunConfigSerializer(ConfigSerializer):
    """{model: {...}, window, points, pulse_rule, pulse_time, tunings, grid, ...} of one run."""

    model = ModelSpecSerializer()
    window = serializers.ListField(
        child=serializers.FloatField(), min_length=2, max_length=2, allow_null=True, default=None
    )
    points = serializers.IntegerField(min_value=3, allow_null=True, default=None)
    pulse_rule = EnumField(PulseRule, source="pulse.rule", allow_null=True, default=None)
    pulse_time = serializers.FloatField(source="pulse.time", allow_null=True, default=None)
    tunings = serializers.ListField(child=EnumField(Tuning), min_length=1, default=list(Tuning))
    grid = serializers.ListField(
        child=serializers.FloatField(), min_length=3, allow_null=True, default=None
    )
    closed_form = serializers.BooleanField(default=False)
    epsilon_t = serializers.FloatField(default=0.05)
    order = serializers.IntegerField(min_value=0, allow_null=True, default=None)
    output_dir = serializers.CharField(allow_null=True, default=None)
    prefix = serializers.CharField(allow_null=True, default=None)

    def validate_window(self, value):
        if value is None:
            return None
        low, high = value
        if not low < high:
            raise serializers.ValidationError(f"empty window [{low}, {high}]")
        return low, high

    def validate_pulse_time(self, value):
        if value is not None and value <= 0:
            raise serializers.ValidationError(f"must be positive, got {value}")
        return value

    def validate_tunings(self, value):
        return tuple(value)

    def validate_grid(self, value):
        if value is None:
            return None
        if min(value) <= 0:
            raise serializers.ValidationError("sweep values must be positive")
        return tuple(value)

    def validate_epsilon_t(self, value):
        if not 0 < value < 1:
            raise serializers.ValidationError(f"must lie in (0, 1), got {value}")
        return value

    def validate(self, attrs):
        pulse = attrs.pop("pulse")
        rule, time = pulse["rule"], pulse["time"]
        if time is not None and rule is None:
            rule = PulseRule.EXPLICIT
        if rule is PulseRule.EXPLICIT and time is None:
            raise serializers.ValidationError({"pulse_time": "explicit_time pulses need pulse_time"})
        attrs["pulse"] = None if rule is None else PulseSpec(rule, time if rule is PulseRule.EXPLICIT else None)
        return attrs

    def create(self, validated_data):
        model = ModelSpec(**validated_data.pop("model"))
        return RunConfig(model=model, **validated_data)
