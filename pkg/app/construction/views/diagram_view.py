"""
View for the DOT stage diagram.
"""

from typing import Any
from rest_framework.views import APIView
from rest_framework.response import Response
from rest_framework import status
from rest_framework.request import Request
from drf_spectacular.utils import extend_schema, OpenApiResponse
from ...services.diagram_service import DiagramService
from ...services.schedule_service import ScheduleService
from ..serializers.request_serializer import DiagramRequestSerializer


class DiagramView(APIView):
    """
    View for emitting the stage diagram using DiagramService.
    """

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        """
        Initialize the services as instance variables.
        """
        super().__init__(*args, **kwargs)
        self.schedule_service: ScheduleService = ScheduleService()
        self.diagram_service: DiagramService = DiagramService()

    @extend_schema(
        request=DiagramRequestSerializer,
        responses={200: OpenApiResponse(description="DOT source under the key 'dot'")},
    )
    def post(self, request: Request) -> Response:
        """
        Return the DOT source of the diagram down to the requested depth.
        """
        serializer = DiagramRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        data = serializer.validated_data
        sequences = self.schedule_service.derive_sequences(data["schedule"], data["depth"])
        dot = self.diagram_service.emit_dot(
            sequences, data["depth"], data["with_cross_evals"], chain=data["chain"]
        )
        return Response({"dot": dot}, status=status.HTTP_200_OK)
