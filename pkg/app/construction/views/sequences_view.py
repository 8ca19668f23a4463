"""
View for deriving and validating sequences.

This file contains the view class for the sequence table of a schedule.
"""

from typing import Any
from rest_framework.views import APIView
from rest_framework.response import Response
from rest_framework import status
from rest_framework.request import Request
from drf_spectacular.utils import extend_schema
from ...services.schedule_service import ScheduleService
from ..serializers.request_serializer import SequencesRequestSerializer
from ..serializers.schedule_serializer import (
    DerivedSequencesSerializer,
    ValidationReportSerializer,
)


class SequencesView(APIView):
    """
    View for deriving d, l, r and s using ScheduleService.
    """

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        """
        Initialize ScheduleService as an instance variable.
        """
        super().__init__(*args, **kwargs)
        self.schedule_service: ScheduleService = ScheduleService()

    @extend_schema(request=SequencesRequestSerializer, responses={200: DerivedSequencesSerializer})
    def post(self, request: Request) -> Response:
        """
        Validate a schedule and, when it passes, return its sequence table.
        """
        serializer = SequencesRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        schedule = serializer.validated_data["schedule"]
        cap = serializer.validated_data["cap"]

        validation = self.schedule_service.validate_schedule(schedule, cap)
        payload = {"validation": ValidationReportSerializer(validation).data, "sequences": None}
        if not validation.passed:
            return Response(payload, status=status.HTTP_422_UNPROCESSABLE_ENTITY)

        sequences = self.schedule_service.derive_sequences(schedule, cap)
        payload["sequences"] = DerivedSequencesSerializer(sequences).data
        return Response(payload, status=status.HTTP_200_OK)
