"""
View for issuing comparison certificates.

This file contains the view class for certify.
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
    CertificateSerializer,
    CertifyRequestSerializer,
)


class CertificatesView(APIView):
    """
    View for certifying the failure of rho-comparison using ComparisonService.
    """

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        """
        Initialize the services as instance variables.
        """
        super().__init__(*args, **kwargs)
        self.schedule_service: ScheduleService = ScheduleService()
        self.comparison_service: ComparisonService = ComparisonService()

    @extend_schema(request=CertifyRequestSerializer, responses={201: CertificateSerializer})
    def post(self, request: Request) -> Response:
        """
        Issue a certificate for the given schedule and rho.
        """
        serializer = CertifyRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        data = serializer.validated_data

        kappa = self.schedule_service.kappa_interval(data["schedule"], data["kappa_stage"])
        sequences = self.schedule_service.derive_sequences(
            data["schedule"], self._stage_cap(data["kappa_stage"], data["check_depth"])
        )
        certificate = self.comparison_service.certify(
            data["rho"], sequences, kappa, data["check_depth"]
        )
        return Response(CertificateSerializer(certificate).data, status=status.HTTP_201_CREATED)

    @staticmethod
    def _stage_cap(kappa_stage: int, check_depth: int) -> int:
        # a stage n past the kappa stage is refused as beyond the cap
        return kappa_stage + check_depth
