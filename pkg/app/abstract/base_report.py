"""
Base classes for verification reports.

A report is an ordered list of named check lines. Lines marked advisory are shown
but never decide whether the report passed.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple


@dataclass(frozen=True)
class CheckLine:
    """
    One named exact check and its outcome.
    """

    name: str
    passed: bool
    detail: str = ""
    stage: Optional[int] = None
    gating: bool = True


class BaseReport:
    """
    Mixin for frozen report dataclasses that expose a ``lines`` tuple.
    """

    lines: Tuple[CheckLine, ...]

    @property
    def passed(self) -> bool:
        """
        True when every gating line passed.
        """
        return all(line.passed for line in self.lines if line.gating)

    @property
    def failed_lines(self) -> List[str]:
        """
        Names of the gating lines that failed, in report order.
        """
        return [line.name for line in self.lines if line.gating and not line.passed]

    def first_failure(self) -> Optional[CheckLine]:
        """
        The first failing gating line, if any.
        """
        for line in self.lines:
            if line.gating and not line.passed:
                return line
        return None

    def line(self, name: str) -> CheckLine:
        """
        Look up a line by name.

        :raises KeyError: If no line has that name.
        """
        for line in self.lines:
            if line.name == name:
                return line
        raise KeyError(name)
