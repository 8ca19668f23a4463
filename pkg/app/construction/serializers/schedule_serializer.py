"""
Serializers for parameter schedules, derived sequences and kappa intervals.
"""

from typing import Any, Dict

from rest_framework import serializers

from ...abstract.base_fields import BigIntegerStringField, EnumValueField, RationalField
from ...abstract.base_report_serializer import BaseReportSerializer
from ...services.errors import ScheduleValidationError
from ..models.schedule_model import ParameterSchedule, ScheduleKind


class ScheduleSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Serializer for ParameterSchedule.

    Geometric schedules need coefficient and base; prefix schedules need prefix.
    Validation yields the ParameterSchedule itself, also when nested.
    """

    kind = EnumValueField(ScheduleKind)
    coefficient = serializers.IntegerField(required=False, default=1)
    base = serializers.IntegerField(required=False, default=10)
    prefix = serializers.ListField(
        child=serializers.IntegerField(), required=False, default=list
    )

    def validate(self, attrs: Dict[str, Any]) -> ParameterSchedule:
        """
        Build the schedule, rejecting what the model refuses with the model's message.
        """
        try:
            return self._build(attrs)
        except ScheduleValidationError as exc:
            raise serializers.ValidationError(str(exc)) from exc

    def to_representation(self, instance: ParameterSchedule) -> Dict[str, Any]:
        if instance.kind is ScheduleKind.GEOMETRIC:
            return {
                "kind": instance.kind.value,
                "coefficient": instance.coefficient,
                "base": instance.base,
                "prefix": [],
            }
        return {
            "kind": instance.kind.value,
            "coefficient": 1,
            "base": 10,
            "prefix": list(instance.prefix),
        }

    @staticmethod
    def _build(attrs: Dict[str, Any]) -> ParameterSchedule:
        if attrs["kind"] is ScheduleKind.GEOMETRIC:
            return ParameterSchedule.geometric(attrs["coefficient"], attrs["base"])
        if not attrs.get("prefix"):
            raise ScheduleValidationError("A prefix schedule needs at least one value.")
        return ParameterSchedule.explicit(tuple(attrs["prefix"]))


class SequenceRowSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    One stage of the sequence table.
    """

    n = serializers.IntegerField()
    d = BigIntegerStringField()
    l = BigIntegerStringField()
    r = BigIntegerStringField()
    s = BigIntegerStringField()
    ratio = RationalField()


class DerivedSequencesSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Serializer for DerivedSequences as a table of rows.
    """

    schedule = ScheduleSerializer()
    cap = serializers.IntegerField()
    rows = serializers.SerializerMethodField()

    def get_rows(self, instance) -> list:
        rows = [
            {
                "n": n,
                "d": instance.d[n],
                "l": instance.l[n],
                "r": instance.r[n],
                "s": instance.s[n],
                "ratio": instance.ratio(n),
            }
            for n in range(instance.cap + 1)
        ]
        return SequenceRowSerializer(rows, many=True).data


class KappaIntervalSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Serializer for KappaInterval.
    """

    lo = RationalField()
    hi = RationalField()
    stage_used = serializers.IntegerField()
    tail_bound = RationalField(allow_null=True)
    certified = serializers.BooleanField()
    above_half = serializers.BooleanField(read_only=True)
    lo_decimal = serializers.SerializerMethodField()
    hi_decimal = serializers.SerializerMethodField()

    def get_lo_decimal(self, instance) -> str:
        return f"{float(instance.lo):.10f}"

    def get_hi_decimal(self, instance) -> str:
        return f"{float(instance.hi):.10f}"


class ValidationReportSerializer(BaseReportSerializer):  # pylint: disable=abstract-method
    """
    Serializer for ValidationReport.
    """

    schedule = ScheduleSerializer(read_only=True)
    cap = serializers.IntegerField(read_only=True)
