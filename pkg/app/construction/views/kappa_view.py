"""
View for the kappa interval of a schedule.
"""

from typing import Any
from rest_framework.views import APIView
from rest_framework.response import Response
from rest_framework import status
from rest_framework.request import Request
from drf_spectacular.utils import extend_schema
from ...services.schedule_service import ScheduleService
from ..serializers.request_serializer import KappaRequestSerializer
from ..serializers.schedule_serializer import KappaIntervalSerializer


class KappaView(APIView):
    """
    View for certifying kappa bounds using ScheduleService.
    """

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        """
        Initialize ScheduleService as an instance variable.
        """
        super().__init__(*args, **kwargs)
        self.schedule_service: ScheduleService = ScheduleService()

    @extend_schema(request=KappaRequestSerializer, responses={200: KappaIntervalSerializer})
    def post(self, request: Request) -> Response:
        """
        Return the kappa interval from the partial product up to the given stage.
        """
        serializer = KappaRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        kappa = self.schedule_service.kappa_interval(
            serializer.validated_data["schedule"], serializer.validated_data["stage"]
        )
        return Response(KappaIntervalSerializer(kappa).data, status=status.HTTP_200_OK)
