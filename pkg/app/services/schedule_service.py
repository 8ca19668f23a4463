"""
Service for parameter schedules.

Derives l, r and s from d, validates the construction conditions and certifies an
interval around kappa.
"""

from typing import Any, Dict, List

from ..abstract.base_report import CheckLine
from ..construction.models.schedule_model import (
    DerivedSequences,
    KappaInterval,
    ParameterSchedule,
    ScheduleKind,
    ValidationReport,
)
from .errors import ConstructionError, NotCertifiableError, ScheduleValidationError
from .logger_service import LoggerService


class ScheduleService:
    """
    Service class for schedule-related operations.
    """

    def __init__(self) -> None:
        self.logger_service: LoggerService = LoggerService(__name__)

    def derive_sequences(
        self, schedule: ParameterSchedule, cap: int
    ) -> DerivedSequences:
        """
        Tabulate d, l, r and s for stages 0..cap.

        :param schedule: The parameter schedule.
        :param cap: Last stage to derive.
        :return: The derived sequences.
        :raises ScheduleValidationError: If cap is negative or d(n) <= 2**(n-1) somewhere.
        """
        if cap < 0:
            raise ScheduleValidationError(f"Stage cap must be non-negative, got {cap}.")

        d_values: List[int] = [1]
        l_values: List[int] = [1]
        r_values: List[int] = [1]
        s_values: List[int] = [1]
        for n in range(1, cap + 1):
            d_n = schedule.d(n)
            if d_n <= 2 ** (n - 1):
                raise ScheduleValidationError(
                    f"d({n}) = {d_n} must exceed 2^{n - 1} = {2 ** (n - 1)}.", stage=n
                )
            l_n = d_n + 2 ** (n - 1)
            d_values.append(d_n)
            l_values.append(l_n)
            r_values.append(r_values[-1] * l_n)
            s_values.append(s_values[-1] * d_n)

        sequences = DerivedSequences(
            schedule=schedule,
            cap=cap,
            d=tuple(d_values),
            l=tuple(l_values),
            r=tuple(r_values),
            s=tuple(s_values),
        )
        stage = self._first_non_decreasing_stage(sequences)
        if stage is not None:
            raise ConstructionError(f"s(n)/r(n) fails to decrease at stage {stage}.")
        self.logger_service.debug(
            f"Derived sequences for {schedule.describe()} up to stage {cap}."
        )
        return sequences

    def validate_schedule(self, schedule: ParameterSchedule, cap: int) -> ValidationReport:
        """
        Check every schedule condition up to cap without raising.

        :param schedule: The parameter schedule.
        :param cap: Last stage to check.
        :return: A report with one line per condition.
        """
        lines: List[CheckLine] = [
            CheckLine(
                name="d0_is_one",
                passed=schedule.d(0) == 1,
                detail="d(0) = 1",
                stage=0,
            )
        ]

        covered = cap if schedule.max_stage is None else min(cap, schedule.max_stage)
        if covered < cap:
            lines.append(
                CheckLine(
                    name="prefix_covers_cap",
                    passed=False,
                    detail=f"explicit prefix ends at stage {covered}, cap is {cap}",
                    stage=covered + 1,
                )
            )
        else:
            lines.append(CheckLine(name="prefix_covers_cap", passed=True))

        growth_failure = next(
            (n for n in range(1, covered + 1) if schedule.d(n) <= 2 ** (n - 1)), None
        )
        lines.append(
            CheckLine(
                name="growth",
                passed=growth_failure is None,
                detail=(
                    "d(n) > 2^(n-1) for every stage"
                    if growth_failure is None
                    else f"d({growth_failure}) = {schedule.d(growth_failure)} "
                    f"is not greater than {2 ** (growth_failure - 1)}"
                ),
                stage=growth_failure,
            )
        )

        if growth_failure is not None:
            lines.append(
                CheckLine(
                    name="ratio_strictly_decreasing",
                    passed=False,
                    detail="not evaluated: growth condition failed",
                    stage=growth_failure,
                )
            )
            return ValidationReport(schedule=schedule, cap=cap, lines=tuple(lines))

        sequences = self.derive_sequences(schedule, covered)
        decreasing_failure = self._first_non_decreasing_stage(sequences)
        lines.append(
            CheckLine(
                name="ratio_strictly_decreasing",
                passed=decreasing_failure is None,
                detail="s(n+1)/r(n+1) < s(n)/r(n)",
                stage=decreasing_failure,
            )
        )

        dominance_failure = next(
            (
                n
                for n in range(1, covered + 1)
                if not sequences.s[n] > sequences.r[n] - sequences.s[n]
            ),
            None,
        )
        lines.append(
            CheckLine(
                name="rank_dominance",
                passed=dominance_failure is None,
                detail="s(n) > r(n) - s(n)",
                stage=dominance_failure,
                gating=False,
            )
        )
        report = ValidationReport(schedule=schedule, cap=cap, lines=tuple(lines))
        if not report.passed:
            self.logger_service.warning(
                f"Schedule {schedule.describe()} failed: {report.failed_lines}"
            )
        return report

    def kappa_interval(
        self, schedule: ParameterSchedule, stage_used: int
    ) -> KappaInterval:
        """
        Certify an interval around kappa from the partial product up to stage_used.

        Uses prod (1 + x_j)^-1 >= 1 - sum x_j with x_j = 2**(j-1)/d(j), so
        hi = s/r at stage_used and lo = hi * (1 - tail).

        :raises NotCertifiableError: If the tail bound is at least 1.
        """
        if schedule.kind is ScheduleKind.PREFIX:
            last = len(schedule.prefix)
            sequences = self.derive_sequences(schedule, last)
            infimum = sequences.ratio(last)
            self.logger_service.info(
                f"Prefix schedule: kappa not certified, prefix infimum {float(infimum):.6f}."
            )
            return KappaInterval(
                lo=infimum, hi=infimum, stage_used=last, tail_bound=None, certified=False
            )

        sequences = self.derive_sequences(schedule, stage_used)
        tail = schedule.tail_sum(stage_used)
        if tail >= 1:
            raise NotCertifiableError(
                f"Tail bound {tail} at stage {stage_used} is not below 1; "
                "raise the kappa stage."
            )
        hi = sequences.ratio(stage_used)
        lo = hi * (1 - tail)
        self.logger_service.debug(
            f"kappa in [{float(lo):.8f}, {float(hi):.8f}] from stage {stage_used}."
        )
        return KappaInterval(
            lo=lo, hi=hi, stage_used=stage_used, tail_bound=tail, certified=True
        )

    def ratio_table(self, sequences: DerivedSequences) -> List[Dict[str, Any]]:
        """
        Rows for the human transcript: one per stage with a decimal ratio.
        """
        return [
            {
                "n": n,
                "d": sequences.d[n],
                "l": sequences.l[n],
                "r": sequences.r[n],
                "s": sequences.s[n],
                "ratio": f"{float(sequences.ratio(n)):.10f}",
            }
            for n in range(sequences.cap + 1)
        ]

    @staticmethod
    def _first_non_decreasing_stage(sequences: DerivedSequences):
        ratios = sequences.ratios
        for n in range(1, len(ratios)):
            if not ratios[n] < ratios[n - 1]:
                return n
        return None
