"""
View for replaying comparison certificates.
"""

from typing import Any
from rest_framework.views import APIView
from rest_framework.response import Response
from rest_framework import status
from rest_framework.request import Request
from drf_spectacular.utils import extend_schema
from ...services.comparison_service import ComparisonService
from ...services.schedule_service import ScheduleService
from ..serializers.certificate_serializer import (
    ReplayReportSerializer,
    ReplayRequestSerializer,
)


class ReplayView(APIView):
    """
    View for re-verifying a certificate using ComparisonService.
    """

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        """
        Initialize the services as instance variables.
        """
        super().__init__(*args, **kwargs)
        self.schedule_service: ScheduleService = ScheduleService()
        self.comparison_service: ComparisonService = ComparisonService()

    @extend_schema(request=ReplayRequestSerializer, responses={200: ReplayReportSerializer})
    def post(self, request: Request) -> Response:
        """
        Replay a certificate; a failed replay answers 422 with the full report.
        """
        serializer = ReplayRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        certificate = serializer.validated_data["certificate"]
        check_depth = serializer.validated_data.get("check_depth", certificate.check_depth)

        sequences = self.schedule_service.derive_sequences(
            certificate.schedule, certificate.n + check_depth
        )
        report = self.comparison_service.replay(certificate, sequences, check_depth)
        return Response(
            ReplayReportSerializer(report).data,
            status=status.HTTP_200_OK if report.passed else status.HTTP_422_UNPROCESSABLE_ENTITY,
        )
