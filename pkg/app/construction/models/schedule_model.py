"""
Parameter schedules and the integer sequences derived from them.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

from ...abstract.base_report import BaseReport, CheckLine
from ...services.errors import ScheduleValidationError, StageBeyondCapError


class ScheduleKind(str, Enum):
    """
    The two supported ways of giving d(n).
    """

    GEOMETRIC = "geometric"
    PREFIX = "prefix"


@dataclass(frozen=True)
class ParameterSchedule:
    """
    The sequence d(n), with d(0) = 1.

    Geometric schedules use d(n) = coefficient * base**n for n >= 1; prefix schedules
    list d(1), ..., d(N) explicitly.
    """

    kind: ScheduleKind
    coefficient: int = 1
    base: int = 10
    prefix: Tuple[int, ...] = ()

    @classmethod
    def geometric(cls, coefficient: int, base: int) -> "ParameterSchedule":
        """
        Build a closed-form schedule d(n) = coefficient * base**n.

        :raises ScheduleValidationError: If coefficient < 1 or base < 3.
        """
        if coefficient < 1:
            raise ScheduleValidationError("Geometric coefficient must be at least 1.")
        if base < 3:
            raise ScheduleValidationError(
                "Geometric base must be at least 3 for the tail sum to converge."
            )
        return cls(kind=ScheduleKind.GEOMETRIC, coefficient=coefficient, base=base)

    @classmethod
    def explicit(cls, prefix: Tuple[int, ...]) -> "ParameterSchedule":
        """
        Build a schedule from the explicit values d(1), ..., d(N).

        :raises ScheduleValidationError: If some value is not a positive integer.
        """
        values = tuple(int(value) for value in prefix)
        for stage, value in enumerate(values, start=1):
            if value < 1:
                raise ScheduleValidationError(
                    f"d({stage}) = {value} is not a positive integer.", stage=stage
                )
        return cls(kind=ScheduleKind.PREFIX, prefix=values)

    @property
    def max_stage(self) -> Optional[int]:
        """
        Last stage with a known d(n); None for closed-form schedules.
        """
        if self.kind is ScheduleKind.PREFIX:
            return len(self.prefix)
        return None

    def d(self, n: int) -> int:
        """
        Return d(n).

        :raises StageBeyondCapError: If n lies past an explicit prefix.
        """
        if n == 0:
            return 1
        if self.kind is ScheduleKind.GEOMETRIC:
            return self.coefficient * self.base**n
        if n > len(self.prefix):
            raise StageBeyondCapError(n, len(self.prefix))
        return self.prefix[n - 1]

    def tail_sum(self, stage: int) -> Fraction:
        """
        Exact value of the sum over j > stage of 2**(j-1) / d(j) for geometric schedules.

        The terms form a geometric series with ratio 2/base.
        """
        if self.kind is not ScheduleKind.GEOMETRIC:
            raise ScheduleValidationError("Tail sums are only known in closed form.")
        ratio = Fraction(2, self.base)
        return (
            Fraction(1, 2 * self.coefficient) * ratio ** (stage + 1) / (1 - ratio)
        )

    def describe(self) -> str:
        """
        Short human-readable form used in transcripts.
        """
        if self.kind is ScheduleKind.GEOMETRIC:
            if self.coefficient == 1:
                return f"d(n) = {self.base}^n"
            return f"d(n) = {self.coefficient}*{self.base}^n"
        return "d = (" + ", ".join(str(value) for value in self.prefix) + ")"


@dataclass(frozen=True)
class DerivedSequences:
    """
    d, l, r and s tabulated for stages 0..cap.
    """

    schedule: ParameterSchedule
    cap: int
    d: Tuple[int, ...]
    l: Tuple[int, ...]
    r: Tuple[int, ...]
    s: Tuple[int, ...]

    def ratio(self, n: int) -> Fraction:
        """
        s(n)/r(n) as an exact rational.
        """
        self.require(n)
        return Fraction(self.s[n], self.r[n])

    @property
    def ratios(self) -> Tuple[Fraction, ...]:
        """
        Every ratio up to the cap.
        """
        return tuple(Fraction(s, r) for s, r in zip(self.s, self.r))

    def require(self, n: int) -> None:
        """
        Ensure stage n was derived.

        :raises StageBeyondCapError: If n is past the cap.
        """
        if n < 0 or n > self.cap:
            raise StageBeyondCapError(n, self.cap)


@dataclass(frozen=True)
class KappaInterval:
    """
    Two-sided bound on kappa = inf_n s(n)/r(n).

    Prefix schedules carry only the prefix infimum (lo = hi) and are flagged as not
    certified; tail_bound is then None.
    """

    lo: Fraction
    hi: Fraction
    stage_used: int
    tail_bound: Optional[Fraction]
    certified: bool

    @property
    def above_half(self) -> bool:
        """
        Whether the lower end exceeds one half.
        """
        return self.lo > Fraction(1, 2)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


@dataclass(frozen=True)
class ValidationReport(BaseReport):
    """
    Pass/fail for every schedule condition, with the first failing stage.
    """

    schedule: ParameterSchedule
    cap: int
    lines: Tuple[CheckLine, ...]
