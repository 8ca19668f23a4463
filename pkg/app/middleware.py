"""
Middleware to turn construction errors into JSON responses.
"""

from django.http import JsonResponse
from django.utils.deprecation import MiddlewareMixin
from app.services.errors import ConstructionError, GuardExceededError
from app.services.logger_service import LoggerService


class ConstructionErrorMiddleware(MiddlewareMixin):
    """
    Map ConstructionError raised by a view to a 400 response naming the error class.

    Guard refusals answer 413 since the request itself was well formed.
    """

    def __init__(self, get_response):
        """
        Initialize the middleware with the response handler and logger.
        """
        super().__init__(get_response)
        self.logger = LoggerService(name="ConstructionErrorMiddleware")
        self.logger.debug("ConstructionErrorMiddleware initialized")

    def process_exception(self, request, exception):
        """
        Handle construction errors; anything else goes to Django's default handling.
        """
        if not isinstance(exception, ConstructionError):
            return None
        self.logger.warning(f"{request.path}: {type(exception).__name__}: {exception}")
        status = 413 if isinstance(exception, GuardExceededError) else 400
        return JsonResponse(
            {"error": type(exception).__name__, "detail": str(exception)}, status=status
        )
