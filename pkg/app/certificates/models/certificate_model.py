"""
The comparison certificate and the result of replaying it.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

from ...abstract.base_report import BaseReport, CheckLine
from ...construction.models.schedule_model import ParameterSchedule
from .cohomology_model import ObstructionCertificate


class Relation(str, Enum):
    LESS = "<"
    LESS_EQUAL = "<="


@dataclass(frozen=True)
class InequalityLine:
    """
    One exact comparison, lhs < rhs or lhs <= rhs, as written in the transcript.
    """

    name: str
    lhs: Fraction
    relation: Relation
    rhs: Fraction

    def holds(self) -> bool:
        if self.relation is Relation.LESS:
            return self.lhs < self.rhs
        return self.lhs <= self.rhs

    def render(self) -> str:
        return f"{self.name}: {self.lhs} {self.relation.value} {self.rhs}"


@dataclass(frozen=True)
class StageObstruction:
    """
    The rank-side witness at stage m: Gamma_{m,n}(e) has rank M r(m) / r(n) < 2 s(m),
    so L^(x s(m)) does not fit into it.
    """

    m: int
    rank: int
    obstruction: ObstructionCertificate


@dataclass(frozen=True)
class ComparisonCertificate:
    """
    Witness pair (b_m, Gamma_{m,n}(e)) against rho-comparison.

    The trace side is M/r(n) - 1 > rho; the rank side is M/r(n) < 2 kappa_lo, which
    bounds the rank of Gamma_{m,n}(e) below 2 s(m) for every m at once.
    """

    schedule: ParameterSchedule
    rho: Fraction
    kappa_lo: Fraction
    kappa_stage: int
    n: int
    M: int
    r_n: int
    check_depth: int
    inequalities: Tuple[InequalityLine, ...]
    obstructions: Tuple[StageObstruction, ...]
    universal_argument: str
    digest: str = ""

    @property
    def trace_ratio(self) -> Fraction:
        return Fraction(self.M, self.r_n)


@dataclass(frozen=True)
class ReplayReport(BaseReport):
    """
    Every transcript line recomputed from the certificate's fields.
    """

    n: int
    check_depth: int
    lines: Tuple[CheckLine, ...]
    digest: Optional[str] = None
