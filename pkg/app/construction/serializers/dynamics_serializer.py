"""
Serializers for intertwining, tower, Bott and density reports.
"""

from rest_framework import serializers

from ...abstract.base_fields import BigIntegerStringField, RationalField
from ...abstract.base_report_serializer import BaseReportSerializer


class IntertwineReportSerializer(BaseReportSerializer):  # pylint: disable=abstract-method
    """
    Serializer for IntertwineReport.
    """

    stage = serializers.IntegerField(read_only=True)
    slot_count = BigIntegerStringField(read_only=True)
    first_difference = BigIntegerStringField(read_only=True, allow_null=True)


class TowerReportSerializer(BaseReportSerializer):  # pylint: disable=abstract-method
    """
    Serializer for TowerReport.
    """

    stage = serializers.IntegerField(read_only=True)
    length = serializers.IntegerField(read_only=True)
    epsilon = RationalField(read_only=True)
    epsilon_achieved = RationalField(read_only=True)


class SpotCheckSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    stage = serializers.IntegerField(read_only=True)
    samples = serializers.IntegerField(read_only=True)
    deviation = serializers.FloatField(read_only=True, allow_null=True)
    note = serializers.CharField(read_only=True)


class UnitaryOrderSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    stage = serializers.IntegerField(read_only=True)
    order = BigIntegerStringField(read_only=True)
    automorphism_order = BigIntegerStringField(read_only=True)
    divides_half_period = serializers.BooleanField(read_only=True)
    periodic = serializers.BooleanField(read_only=True)
    passed = serializers.BooleanField(read_only=True)


class BottSummarySerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Serializer for BottSummary.
    """

    stage = serializers.IntegerField(read_only=True)
    line_count = BigIntegerStringField(read_only=True)
    distinct = serializers.BooleanField(read_only=True)
    trivial_rank = BigIntegerStringField(read_only=True)
    expected_lines = BigIntegerStringField(read_only=True)
    expected_trivial = BigIntegerStringField(read_only=True)
    uniform = serializers.BooleanField(read_only=True)
    matches = serializers.BooleanField(read_only=True)


class DensityReportSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Serializer for DensityReport.
    """

    target_stage = serializers.IntegerField(read_only=True)
    cutoffs = serializers.ListField(child=serializers.IntegerField(), read_only=True)
    estimates = serializers.ListField(child=serializers.FloatField(), read_only=True)
    evaluation_points = serializers.ListField(child=serializers.IntegerField(), read_only=True)
    samples = serializers.IntegerField(read_only=True)
    seed = serializers.IntegerField(read_only=True)
    monotone = serializers.BooleanField(read_only=True)
