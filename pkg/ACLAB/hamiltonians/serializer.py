from rest_framework import serializers

from aclab import settings
from common.serializer import ConfigSerializer, EnumField
from hamiltonians.models import ModelSpec
from utils.enums import GenericCoupling, ModelKind


class ModelSpecSerializer(ConfigSerializer):
    """JSON form {kind, eta, rabi, detuning, n_fock, transition: [na, nb]} of a ModelSpec.

    The generic model additionally reads {omega, xi, coupling, g}.
    """

    kind = EnumField(ModelKind)
    eta = serializers.FloatField(min_value=0.0, default=0.0)
    rabi = serializers.FloatField(default=1.0)
    detuning = serializers.FloatField(default=0.0)
    n_fock = serializers.IntegerField(min_value=2, default=settings.N_FOCK)
    transition = serializers.ListField(
        child=serializers.IntegerField(min_value=0), min_length=2, max_length=2, default=[0, 1]
    )
    omega = serializers.FloatField(default=1.0)
    xi = serializers.FloatField(allow_null=True, default=None)
    coupling = EnumField(GenericCoupling, default=GenericCoupling.NONE)
    g = serializers.FloatField(default=0.0)

    def validate_transition(self, value):
        return tuple(value)

    def validate_omega(self, value):
        if value <= 0:
            raise serializers.ValidationError(f"must be positive, got {value}")
        return value

    def validate(self, attrs):
        if attrs["kind"] is ModelKind.SS_GATE and attrs["detuning"] != 0:
            raise serializers.ValidationError(
                {"detuning": f"the SS gate requires zero detuning, got {attrs['detuning']}"}
            )
        if max(attrs["transition"]) >= attrs["n_fock"]:
            raise serializers.ValidationError(
                {"transition": f"transition {list(attrs['transition'])} lies outside N_fock={attrs['n_fock']}"}
            )
        return attrs

    def create(self, validated_data):
        return ModelSpec(**validated_data)
