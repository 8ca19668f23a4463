"""
Exceptions raised by the construction services.

Every error is a ValueError so callers that only guard against bad input keep working.
"""

from typing import Optional, Sequence


class ConstructionError(ValueError):
    """
    Base class for every failure raised by the construction services.
    """


class ScheduleValidationError(ConstructionError):
    """
    A parameter schedule violates one of the construction conditions.
    """

    def __init__(self, message: str, stage: Optional[int] = None) -> None:
        super().__init__(message)
        self.stage = stage


class StageBeyondCapError(ConstructionError):
    """
    A stage was requested past the cap the sequences were derived to.
    """

    def __init__(self, stage: int, cap: int) -> None:
        super().__init__(f"Stage {stage} is beyond the derived cap {cap}.")
        self.stage = stage
        self.cap = cap


class StageMismatchError(ConstructionError):
    """
    Two maps or a class and a map do not meet at the same stage.
    """


class NotCertifiableError(ConstructionError):
    """
    The requested bound cannot be certified with the available data.
    """


class GuardExceededError(ConstructionError):
    """
    A size guard refused work that would blow up.
    """


class MalformedClassError(ConstructionError):
    """
    A projection class is internally inconsistent.
    """


class ConfigError(ConstructionError):
    """
    A run configuration could not be parsed or is inconsistent.
    """


class ReplayFailure(ConstructionError):
    """
    A certificate replay found failing lines.
    """

    def __init__(self, failed_lines: Sequence[str]) -> None:
        super().__init__("Replay failed on: " + ", ".join(failed_lines))
        self.failed_lines = list(failed_lines)
