"""
Run configuration and the aggregated run report.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from ...certificates.models.certificate_model import ComparisonCertificate, ReplayReport
from .density_model import DensityReport
from .dynamics_model import IntertwineReport, TowerReport
from .schedule_model import (
    DerivedSequences,
    KappaInterval,
    ParameterSchedule,
    ValidationReport,
)
from .system_model import BottSummary


@dataclass(frozen=True)
class DensitySettings:
    target_stage: int = 0
    cutoff: int = 0
    samples: int = 0
    workers: Optional[int] = None


@dataclass(frozen=True)
class OutputPaths:
    """
    Where run writes its files; None skips that file.
    """

    report: Optional[str] = None
    transcript: Optional[str] = None
    dot: Optional[str] = None


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a pipeline run needs. Every referenced stage is at most stage_cap.
    """

    schedule: ParameterSchedule
    stage_cap: int
    kappa_stage: int
    rho: Fraction
    check_depth: int
    seed: int
    density: DensitySettings = field(default_factory=DensitySettings)
    spot_check_samples: int = 20
    dot_depth: int = 2
    with_cross_evals: bool = False
    outputs: OutputPaths = field(default_factory=OutputPaths)
    name: str = ""


@dataclass(frozen=True)
class SpotCheck:
    """
    Numerical intertwining diagnostic at one stage; deviation is None when the
    dense guard refused the stage.
    """

    stage: int
    samples: int
    deviation: Optional[float]
    note: str = ""


@dataclass(frozen=True)
class UnitaryOrder:
    """
    order(u_n) must divide 2^(n-1) and alpha_n must have period exactly 2^n.
    """

    stage: int
    order: int
    automorphism_order: int

    @property
    def divides_half_period(self) -> bool:
        return (2 ** max(self.stage - 1, 0)) % self.order == 0

    @property
    def periodic(self) -> bool:
        return self.automorphism_order == 2**self.stage

    @property
    def passed(self) -> bool:
        return self.divides_half_period and self.periodic


@dataclass(frozen=True)
class RunReport:
    """
    Every verdict of a run, each traceable to the report of the step that made it.

    Wall-clock timings are kept out so that equal inputs give equal reports.
    """

    config: RunConfig
    validation: ValidationReport
    sequences: Optional[DerivedSequences] = None
    kappa: Optional[KappaInterval] = None
    intertwine: Tuple[IntertwineReport, ...] = ()
    spot_checks: Tuple[SpotCheck, ...] = ()
    towers: Tuple[TowerReport, ...] = ()
    unitary_orders: Tuple[UnitaryOrder, ...] = ()
    bott: Tuple[BottSummary, ...] = ()
    certificate: Optional[ComparisonCertificate] = None
    replay: Optional[ReplayReport] = None
    density: Optional[DensityReport] = None
    notes: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        """
        True when every exact check passed; diagnostics do not count.
        """
        return (
            self.validation.passed
            and self.sequences is not None
            and all(report.passed for report in self.intertwine)
            and all(report.passed for report in self.towers)
            and all(order.passed for order in self.unitary_orders)
            and all(summary.matches for summary in self.bott)
            and (self.replay is None or self.replay.passed)
        )

    @property
    def exit_status(self) -> int:
        return 0 if self.passed else 1
