"""
Service for the radius-of-comparison certificate.

certify picks the smallest stage n and rank M that witness the failure of
rho-comparison; replay recomputes every line of such a certificate from its fields
with exact arithmetic, pushing the witness classes through the system again.
"""

from dataclasses import replace
from fractions import Fraction
from math import floor
from typing import List, Optional, Tuple

from django.conf import settings

from ..abstract.base_report import CheckLine
from ..certificates.models.certificate_model import (
    ComparisonCertificate,
    InequalityLine,
    Relation,
    ReplayReport,
    StageObstruction,
)
from ..certificates.serializers.certificate_serializer import CertificateSerializer
from ..construction.models.schedule_model import DerivedSequences, KappaInterval
from ..construction.models.system_model import ProjectionClass
from .cohomology_service import CohomologyService
from .errors import ConstructionError, NotCertifiableError, StageMismatchError
from .logger_service import LoggerService
from .schedule_service import ScheduleService
from .system_service import SystemService
from .utils import digest


class ComparisonService:
    """
    Service class for certifying and replaying comparison failures.
    """

    def __init__(self) -> None:
        self.logger_service: LoggerService = LoggerService(__name__)
        self.schedule_service: ScheduleService = ScheduleService()
        self.system_service: SystemService = SystemService()
        self.cohomology_service: CohomologyService = CohomologyService()
        self.default_depth: int = settings.CONSTRUCTION["DEFAULT_CHECK_DEPTH"]

    def certify(
        self,
        rho: Fraction,
        sequences: DerivedSequences,
        kappa: KappaInterval,
        check_depth: Optional[int] = None,
    ) -> ComparisonCertificate:
        """
        Build the witness that C fails rho-comparison.

        n is the least stage with 1/r(n) < 2 kappa_lo - 1 - rho and M the least integer
        with rho + 1 < M/r(n); M/r(n) < 2 kappa_lo then holds because the window is
        wider than 1/r(n).

        :param rho: The comparison constant, exact.
        :param sequences: Derived to at least n + check_depth.
        :param kappa: A certified kappa interval.
        :param check_depth: Stages after n to record obstructions for.
        :return: The signed certificate.
        :raises NotCertifiableError: If rho is negative, kappa is not certified or
            rho >= 2 kappa_lo - 1.
        """
        check_depth = self.default_depth if check_depth is None else check_depth
        if rho < 0:
            raise NotCertifiableError(
                f"rho = {rho} is negative; comparison constants start at 0."
            )
        if not kappa.certified:
            raise NotCertifiableError(
                "kappa is only known on an explicit prefix; certification needs a "
                "certified lower bound."
            )
        threshold = 2 * kappa.lo - 1
        if rho >= threshold:
            raise NotCertifiableError(
                f"rho = {rho} is not below 2*kappa_lo - 1 = {float(threshold):.8f}; "
                "raise the kappa stage for a sharper bound."
            )

        n = next(
            (
                stage
                for stage in range(sequences.cap + 1)
                if Fraction(1, sequences.r[stage]) < threshold - rho
            ),
            None,
        )
        if n is None:
            raise NotCertifiableError(
                f"No stage up to {sequences.cap} has 1/r(n) < 2*kappa_lo - 1 - rho; "
                "raise the stage cap."
            )
        r_n = sequences.r[n]
        M = floor((rho + 1) * r_n) + 1  # pylint: disable=invalid-name
        if not Fraction(M, r_n) < 2 * kappa.lo:
            raise ConstructionError(
                f"No integer M with {rho + 1} < M/{r_n} < {2 * kappa.lo}."
            )
        sequences.require(n + check_depth)

        certificate = ComparisonCertificate(
            schedule=sequences.schedule,
            rho=rho,
            kappa_lo=kappa.lo,
            kappa_stage=kappa.stage_used,
            n=n,
            M=M,
            r_n=r_n,
            check_depth=check_depth,
            inequalities=self.inequalities(rho, kappa.lo, M, r_n),
            obstructions=tuple(
                self._stage_obstruction(sequences, n, M, m)
                for m in range(n + 1, n + check_depth + 1)
            ),
            universal_argument=self._universal_argument(n, M, r_n),
        )
        certificate = replace(certificate, digest=self.digest_of(certificate))
        self.logger_service.info(
            f"Certified rho = {rho}: n = {n}, M = {M}, gap {Fraction(M, r_n) - 1}."
        )
        return certificate

    def replay(
        self,
        certificate: ComparisonCertificate,
        sequences: DerivedSequences,
        check_depth: Optional[int] = None,
    ) -> ReplayReport:
        """
        Recompute every line of a certificate.

        Nothing stored in the certificate is trusted: ranks, traces, obstructions and
        inequalities are recomputed from schedule, rho, kappa stage, n and M, then
        compared with what the certificate claims.

        :param sequences: Derived to at least n + check_depth.
        :return: One line per check; never raises on a failed check.
        """
        check_depth = certificate.check_depth if check_depth is None else check_depth
        n, M = certificate.n, certificate.M  # pylint: disable=invalid-name
        sequences.require(n + check_depth)
        r_n = sequences.r[n]
        lines: List[CheckLine] = [
            CheckLine(
                name="digest",
                passed=self.digest_of(certificate) == certificate.digest,
                detail=f"sha256 {certificate.digest[:16]}",
            ),
            CheckLine(
                name="schedule",
                passed=certificate.schedule == sequences.schedule,
                detail=sequences.schedule.describe(),
            ),
            CheckLine(
                name="stage_rank",
                passed=certificate.r_n == r_n,
                detail=f"r({n}) = {r_n}",
                stage=n,
            ),
        ]

        kappa_lo = self._recompute_kappa_lo(certificate)
        lines.append(
            CheckLine(
                name="kappa_lower_bound",
                passed=kappa_lo is not None and kappa_lo == certificate.kappa_lo,
                detail=f"recomputed at stage {certificate.kappa_stage}",
            )
        )
        kappa_lo = certificate.kappa_lo if kappa_lo is None else kappa_lo

        expected = self.inequalities(certificate.rho, kappa_lo, M, r_n)
        lines.append(
            CheckLine(
                name="transcript",
                passed=expected == certificate.inequalities,
                detail="stored inequalities match the recomputed ones",
            )
        )
        lines.extend(
            CheckLine(name=line.name, passed=line.holds(), detail=line.render(), stage=n)
            for line in expected
        )

        stored = {record.m: record for record in certificate.obstructions}
        recorded = range(n + 1, n + certificate.check_depth + 1)
        lines.extend(
            (
                CheckLine(
                    name="obstruction_stages",
                    passed=[record.m for record in certificate.obstructions] == list(recorded),
                    detail=f"one record for each m in {n + 1}..{n + certificate.check_depth}",
                    stage=n,
                ),
                CheckLine(
                    name="universal_argument",
                    passed=certificate.universal_argument
                    == self._universal_argument(n, M, r_n),
                    detail="stored argument matches the recomputed one",
                    stage=n,
                ),
                CheckLine(
                    name="witness_rank",
                    passed=M >= 1,
                    detail=f"M = {M} >= 1",
                    stage=n,
                ),
            )
        )
        ratio = Fraction(M, r_n)
        if M >= 1:
            trivial = ProjectionClass.trivial(n, M)
            for m in range(n + 1, n + check_depth + 1):
                lines.extend(
                    self._replay_stage(certificate, sequences, trivial, ratio, m, stored)
                )

        checked = range(n, n + check_depth + 1)
        lines.append(
            CheckLine(
                name="universal",
                passed=ratio < 2 * kappa_lo
                and all(kappa_lo <= sequences.ratio(m) for m in checked),
                detail=f"M/r(n) = {ratio} < 2*kappa_lo and kappa_lo <= s(m)/r(m)",
                stage=n,
            )
        )
        lines.append(
            CheckLine(
                name="minimal_stage",
                passed=n == 0
                or not Fraction(1, sequences.r[n - 1]) < 2 * kappa_lo - 1 - certificate.rho,
                detail="no earlier stage satisfies the stage inequality",
                stage=n,
                gating=False,
            )
        )

        report = ReplayReport(
            n=n, check_depth=check_depth, lines=tuple(lines), digest=certificate.digest
        )
        if report.passed:
            self.logger_service.info(f"Replay passed with check depth {check_depth}.")
        else:
            self.logger_service.error(f"Replay failed: {report.failed_lines}")
        return report

    def trace_gap(
        self,
        certificate: ComparisonCertificate,
        m: int,
        sequences: Optional[DerivedSequences] = None,
    ) -> Fraction:
        """
        d_tau(Gamma_{m,n}(e)) - d_tau(b_m) = M/r(n) - 1.

        With sequences, both traces are recomputed from the pushed classes.

        :raises StageMismatchError: If m < n.
        """
        if m < certificate.n:
            raise StageMismatchError(
                f"Trace gap needs m >= n = {certificate.n}, got m = {m}."
            )
        gap = certificate.trace_ratio - 1
        if sequences is None:
            return gap
        pushed = self.system_service.push_class(
            ProjectionClass.trivial(certificate.n, certificate.M),
            self.system_service.connecting_map_between(sequences, certificate.n, m),
            sequences,
        )
        bott = self.system_service.bott_class_at(sequences, m)
        recomputed = self.system_service.trace_of_class(
            pushed, sequences
        ) - self.system_service.trace_of_class(bott, sequences)
        if recomputed != gap:
            self.logger_service.error(f"Trace gap at m = {m} is {recomputed}, expected {gap}.")
        return recomputed

    def digest_of(self, certificate: ComparisonCertificate) -> str:
        return digest(CertificateSerializer.body(certificate))

    def inequalities(
        self, rho: Fraction, kappa_lo: Fraction, M: int, r_n: int  # pylint: disable=invalid-name
    ) -> Tuple[InequalityLine, ...]:
        ratio = Fraction(M, r_n)
        return (
            InequalityLine("rho_nonnegative", Fraction(0), Relation.LESS_EQUAL, rho),
            InequalityLine(
                "stage_choice", Fraction(1, r_n), Relation.LESS, 2 * kappa_lo - 1 - rho
            ),
            InequalityLine("trace_lower", rho + 1, Relation.LESS, ratio),
            InequalityLine("trace_upper", ratio, Relation.LESS, 2 * kappa_lo),
        )

    @staticmethod
    def _universal_argument(n: int, M: int, r_n: int) -> str:  # pylint: disable=invalid-name
        return (
            f"M/r(n) = {M}/{r_n} < 2*kappa_lo <= 2*s(m)/r(m) for every m >= {n}, "
            "so rank M*r(m)/r(n) < 2*s(m) at every later stage"
        )

    def _stage_obstruction(
        self, sequences: DerivedSequences, n: int, M: int, m: int  # pylint: disable=invalid-name
    ) -> StageObstruction:
        rank, remainder = divmod(M * sequences.r[m], sequences.r[n])
        if remainder:
            raise ConstructionError(f"r({n}) does not divide M*r({m}).")
        return StageObstruction(
            m=m,
            rank=rank,
            obstruction=self.cohomology_service.embeds_in_trivial(sequences.s[m], rank),
        )

    def _recompute_kappa_lo(self, certificate: ComparisonCertificate) -> Optional[Fraction]:
        try:
            kappa = self.schedule_service.kappa_interval(
                certificate.schedule, certificate.kappa_stage
            )
        except ConstructionError as exc:
            self.logger_service.warning(f"kappa could not be recomputed: {exc}")
            return None
        return kappa.lo if kappa.certified else None

    def _replay_stage(
        self,
        certificate: ComparisonCertificate,
        sequences: DerivedSequences,
        trivial: ProjectionClass,
        ratio: Fraction,
        m: int,
        stored: dict,
    ) -> List[CheckLine]:
        n, M = certificate.n, certificate.M  # pylint: disable=invalid-name
        pushed = self.system_service.push_class(
            trivial, self.system_service.connecting_map_between(sequences, n, m), sequences
        )
        pushed_trace = self.system_service.trace_of_class(pushed, sequences)
        bott = self.system_service.bott_decomposition(sequences, m)
        bott_trace = self.system_service.trace_of_class(
            self.system_service.bott_class_at(sequences, m), sequences
        )
        rank, remainder = divmod(M * sequences.r[m], sequences.r[n])
        obstruction = self.cohomology_service.embeds_in_trivial(sequences.s[m], rank)
        record = stored.get(m)
        return [
            CheckLine(
                name=f"trace_trivial_m{m}",
                passed=pushed_trace == ratio and pushed.base_rank == rank,
                detail=f"tau(Gamma_{{{m},{n}}}(e)) = {pushed_trace}",
                stage=m,
            ),
            CheckLine(
                name=f"bott_m{m}",
                passed=bott.matches and bott_trace == 1,
                detail=f"{bott.line_count} distinct lines plus trivial rank {bott.trivial_rank}",
                stage=m,
            ),
            CheckLine(
                name=f"trace_gap_m{m}",
                passed=pushed_trace - bott_trace > certificate.rho,
                detail=f"{pushed_trace - bott_trace} > {certificate.rho}",
                stage=m,
            ),
            CheckLine(
                name=f"rank_m{m}",
                passed=remainder == 0 and rank < 2 * sequences.s[m],
                detail=f"{M}*r({m})/r({n}) = {rank} < 2*s({m})",
                stage=m,
            ),
            CheckLine(
                name=f"obstruction_m{m}",
                passed=obstruction.obstructed
                and (record is None or (record.rank == rank and record.obstruction == obstruction)),
                detail=obstruction.explanation(),
                stage=m,
            ),
        ]
