"""
Serializers for the bodies the construction endpoints accept.
"""

from rest_framework import serializers

from .schedule_serializer import ScheduleSerializer


class SequencesRequestSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    A schedule and the last stage to derive.
    """

    schedule = ScheduleSerializer()
    cap = serializers.IntegerField(min_value=0, max_value=64)


class KappaRequestSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    A schedule and the stage whose partial product bounds kappa.
    """

    schedule = ScheduleSerializer()
    stage = serializers.IntegerField(min_value=0, max_value=64, default=6)


class DiagramRequestSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    A schedule and the diagram options.
    """

    schedule = ScheduleSerializer()
    depth = serializers.IntegerField(min_value=0, default=2)
    with_cross_evals = serializers.BooleanField(default=False)
    chain = serializers.BooleanField(default=False)
