"""
A service class for configuring and using a logger.

Output goes through the handlers of settings.LOGGING; every service builds its own
LoggerService named after its module.
"""

import logging
import time
from contextlib import contextmanager
from typing import Iterator, List, Tuple

from django.conf import settings


class LoggerService:
    """
    A service class for configuring and using a logger.
    """

    def __init__(self, name: str) -> None:
        """
        Initializes the LoggerService at the CONSTRUCTION LOG_LEVEL setting.

        :param name: Logger name, normally the module ``__name__``.
        """
        self.logger = logging.getLogger(name)
        self.logger.setLevel(settings.CONSTRUCTION["LOG_LEVEL"])
        self.timings: List[Tuple[str, float]] = []

    def info(self, message: str) -> None:
        """
        Logs an info message.
        """
        self.logger.info(message)

    def warning(self, message: str) -> None:
        """
        Logs a warning message.
        """
        self.logger.warning(message)

    def error(self, message: str) -> None:
        """
        Logs an error message.
        """
        self.logger.error(message)

    def debug(self, message: str) -> None:
        """
        Logs a debug message.
        """
        self.logger.debug(message)

    @contextmanager
    def timed(self, step: str) -> Iterator[None]:
        """
        Log the wall-clock duration of a pipeline step and remember it.

        :param step: Name of the step being timed.
        """
        started = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - started
            self.timings.append((step, elapsed))
            self.logger.info("%s finished in %.3f s", step, elapsed)
