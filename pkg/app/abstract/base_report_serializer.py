"""
Base serializer for verification reports.
"""

from rest_framework import serializers


class CheckLineSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Serializer for one check line.
    """

    name = serializers.CharField()
    passed = serializers.BooleanField()
    detail = serializers.CharField(allow_blank=True)
    stage = serializers.IntegerField(allow_null=True)
    gating = serializers.BooleanField()


class BaseReportSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Renders the verdict, the failing line names and every line of a report.
    """

    passed = serializers.BooleanField(read_only=True)
    failed_lines = serializers.ListField(child=serializers.CharField(), read_only=True)
    lines = CheckLineSerializer(many=True, read_only=True)
