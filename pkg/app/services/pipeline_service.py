"""
Service for whole pipeline runs.

Loads a run configuration, executes validate, derive, kappa, intertwine, towers,
Bott push, certify, replay and density in that order, and writes the JSON report,
the human transcript and the DOT diagram.
"""

import json
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from django.conf import settings
from rest_framework.exceptions import ValidationError

from ..construction.models.density_model import PointScheme
from ..construction.models.run_model import RunConfig, RunReport, SpotCheck, UnitaryOrder
from ..construction.serializers.run_serializer import RunConfigSerializer, RunReportSerializer
from .comparison_service import ComparisonService
from .density_service import DensityService
from .diagram_service import DiagramService
from .dynamics_service import DynamicsService
from .errors import ConfigError, ConstructionError, GuardExceededError, NotCertifiableError
from .logger_service import LoggerService
from .schedule_service import ScheduleService
from .system_service import SystemService
from .utils import canonical_json

CONFIG_DIR = Path(__file__).resolve().parent.parent / "construction" / "configs"


class PipelineService:
    """
    Service class for configuring, running and reporting a pipeline run.
    """

    def __init__(self) -> None:
        self.logger_service: LoggerService = LoggerService(__name__)
        self.schedule_service: ScheduleService = ScheduleService()
        self.system_service: SystemService = SystemService()
        self.dynamics_service: DynamicsService = DynamicsService()
        self.comparison_service: ComparisonService = ComparisonService()
        self.density_service: DensityService = DensityService()
        self.diagram_service: DiagramService = DiagramService()
        self.max_intertwine_stage: int = settings.CONSTRUCTION["INTERTWINE_MAX_STAGE"]
        self.dense_guard: int = settings.CONSTRUCTION["DENSE_MATRIX_GUARD"]

    def bundled_configs(self) -> List[str]:
        return sorted(path.stem for path in CONFIG_DIR.glob("*.json"))

    def load_config(
        self, name_or_path: str, overrides: Optional[Dict[str, Any]] = None
    ) -> RunConfig:
        """
        Read a run configuration from a bundled name or a JSON file path.

        :param name_or_path: e.g. "paper-10n" or "./my-run.json".
        :param overrides: Fields replacing the file's values; nested dicts are merged.
        :raises ConfigError: If the file is missing, unreadable or invalid.
        """
        path = Path(name_or_path)
        if not path.suffix and (CONFIG_DIR / f"{name_or_path}.json").exists():
            path = CONFIG_DIR / f"{name_or_path}.json"
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError as exc:
            raise ConfigError(
                f"No config {name_or_path!r}; bundled configs: {', '.join(self.bundled_configs())}."
            ) from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path} is not valid JSON: {exc}") from exc
        data.setdefault("name", path.stem)
        for key, value in (overrides or {}).items():
            if isinstance(value, dict) and isinstance(data.get(key), dict):
                data[key] = {**data[key], **value}
            else:
                data[key] = value
        return self.parse_config(data)

    def parse_config(self, data: Dict[str, Any]) -> RunConfig:
        """
        Validate a configuration mapping.

        :raises ConfigError: With the serializer's field errors.
        """
        serializer = RunConfigSerializer(data=data)
        try:
            serializer.is_valid(raise_exception=True)
        except ValidationError as exc:
            raise ConfigError(f"Invalid run config: {json.dumps(exc.detail)}") from exc
        return serializer.validated_data

    def run(self, config: RunConfig) -> RunReport:
        """
        Execute the whole pipeline.

        Guard refusals in the numerical diagnostics are recorded as notes; they never
        fail the run.
        """
        self.logger_service.timings.clear()
        notes: List[str] = []
        with self.logger_service.timed("validate"):
            validation = self.schedule_service.validate_schedule(config.schedule, config.stage_cap)
        report = RunReport(config=config, validation=validation)
        if not validation.passed:
            self.logger_service.error(f"Validation failed: {validation.failed_lines}")
            return report

        with self.logger_service.timed("derive"):
            sequences = self.schedule_service.derive_sequences(config.schedule, config.stage_cap)
        report = replace(report, sequences=sequences)

        kappa = None
        with self.logger_service.timed("kappa"):
            try:
                kappa = self.schedule_service.kappa_interval(config.schedule, config.kappa_stage)
            except NotCertifiableError as exc:
                notes.append(f"kappa: {exc}")
        if kappa is not None and not kappa.certified:
            notes.append("kappa: explicit prefix, interval is not certified")

        with self.logger_service.timed("intertwine"):
            intertwine, spot_checks = self.intertwine_stages(config, sequences)
        with self.logger_service.timed("towers"):
            towers, orders = self.tower_stages(config, sequences)
        with self.logger_service.timed("bott"):
            bott = self.bott_stages(config, sequences)
        report = replace(
            report,
            kappa=kappa,
            intertwine=intertwine,
            spot_checks=spot_checks,
            towers=towers,
            unitary_orders=orders,
            bott=bott,
        )

        with self.logger_service.timed("certify"):
            certificate, replay, note = self._certify(config, sequences, kappa)
        if note:
            notes.append(note)
        report = replace(report, certificate=certificate, replay=replay)

        density = None
        if config.density.samples:
            with self.logger_service.timed("density"):
                try:
                    density = self.density_service.density_diagnostic(
                        PointScheme(seed=config.seed),
                        sequences,
                        config.density.target_stage,
                        config.density.cutoff,
                        config.density.samples,
                        config.seed,
                        workers=config.density.workers,
                    )
                except GuardExceededError as exc:
                    notes.append(f"density: {exc}")
        report = replace(report, density=density, notes=tuple(notes))
        self.logger_service.info(
            f"Run {config.name or config.schedule.describe()} finished with exit status "
            f"{report.exit_status}."
        )
        return report

    def render_report(self, report: RunReport) -> str:
        return canonical_json(RunReportSerializer(report).data)

    def render_transcript(self, report: RunReport) -> str:
        """
        Human-readable account of the run, including the step timings.
        """
        config = report.config
        lines = [
            f"run {config.name or '-'}: {config.schedule.describe()}, stage cap {config.stage_cap}",
            "",
            "validation",
        ]
        lines.extend(_render_lines(report.validation.lines))
        if report.sequences is not None:
            lines.append("")
            lines.append("sequences")
            for row in self.schedule_service.ratio_table(report.sequences):
                lines.append(
                    f"  n={row['n']}  d={row['d']}  l={row['l']}  r={row['r']}  "
                    f"s={row['s']}  s/r={row['ratio']}"
                )
        if report.kappa is not None:
            lines.append("")
            lines.append(
                f"kappa in [{float(report.kappa.lo):.10f}, {float(report.kappa.hi):.10f}] "
                f"from stage {report.kappa.stage_used}"
                + ("" if report.kappa.certified else " (not certified)")
            )
        for intertwine in report.intertwine:
            lines.append("")
            lines.append(f"intertwine stage {intertwine.stage}")
            lines.extend(_render_lines(intertwine.lines))
        for spot in report.spot_checks:
            value = "refused" if spot.deviation is None else f"{spot.deviation:.3e}"
            lines.append(f"  spot check stage {spot.stage}: {value} {spot.note}".rstrip())
        if report.towers:
            lines.append("")
            lines.append("towers")
            for tower in report.towers:
                status = "ok" if tower.passed else "FAIL " + ", ".join(tower.failed_lines)
                lines.append(f"  stage {tower.stage}: length {tower.length}, {status}")
            for order in report.unitary_orders:
                lines.append(
                    f"  order(u_{order.stage}) = {order.order}, "
                    f"order(alpha_{order.stage}) = {order.automorphism_order}"
                    + ("" if order.passed else " FAIL")
                )
        if report.bott:
            lines.append("")
            lines.append("bott")
            for summary in report.bott:
                lines.append(
                    f"  m={summary.stage}: {summary.line_count} lines, trivial rank "
                    f"{summary.trivial_rank}, {'ok' if summary.matches else 'FAIL'}"
                )
        if report.certificate is not None:
            certificate = report.certificate
            lines.append("")
            lines.append(
                f"certificate rho={certificate.rho} n={certificate.n} M={certificate.M}"
            )
            lines.extend(f"  {line.render()}" for line in certificate.inequalities)
            lines.append(f"  {certificate.universal_argument}")
            lines.append(f"  digest {certificate.digest}")
        if report.replay is not None:
            lines.append("")
            lines.append("replay")
            lines.extend(_render_lines(report.replay.lines))
        if report.density is not None:
            lines.append("")
            lines.append(f"density at stage {report.density.target_stage}")
            for cutoff, estimate, points in zip(
                report.density.cutoffs, report.density.estimates, report.density.evaluation_points
            ):
                lines.append(f"  cutoff {cutoff}: {estimate:.6f} rad over {points} points")
        if report.notes:
            lines.append("")
            lines.append("notes")
            lines.extend(f"  {note}" for note in report.notes)
        lines.append("")
        lines.append("timings")
        lines.extend(
            f"  {step}: {elapsed:.3f} s" for step, elapsed in self.logger_service.timings
        )
        lines.append("")
        lines.append(f"exit status {report.exit_status}")
        return "\n".join(lines) + "\n"

    def write_outputs(self, report: RunReport) -> Dict[str, str]:
        """
        Write report, transcript and DOT file where the config asks for them.

        :return: Written file paths by kind.
        """
        config = report.config
        written: Dict[str, str] = {}
        outputs = {
            "report": (config.outputs.report, lambda: self.render_report(report)),
            "transcript": (config.outputs.transcript, lambda: self.render_transcript(report)),
            "dot": (config.outputs.dot, lambda: self._dot(report)),
        }
        for kind, (target, render) in outputs.items():
            if not target:
                continue
            content = render()
            if content is None:
                continue
            path = Path(settings.CONSTRUCTION["REPORT_DIR"]) / target
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(content, encoding="utf-8")
            written[kind] = str(path)
            self.logger_service.debug(f"Wrote {kind} to {path}.")
        return written

    def _dot(self, report: RunReport) -> Optional[str]:
        if report.sequences is None:
            return None
        return self.diagram_service.emit_dot(
            report.sequences,
            min(report.config.dot_depth, settings.CONSTRUCTION["DOT_DEPTH_GUARD"]),
            report.config.with_cross_evals,
        )

    def intertwine_stages(self, config: RunConfig, sequences) -> Tuple[tuple, tuple]:
        reports = []
        spot_checks = []
        for n in range(min(config.stage_cap - 1, self.max_intertwine_stage) + 1):
            reports.append(self.dynamics_service.verify_intertwine(sequences, n))
            if not config.spot_check_samples:
                continue
            if sequences.r[n + 1] > self.dense_guard:
                spot_checks.append(
                    SpotCheck(
                        stage=n,
                        samples=0,
                        deviation=None,
                        note=f"r({n + 1}) over the dense guard",
                    )
                )
                continue
            deviation = self.dynamics_service.spot_check_intertwine(
                sequences, n, config.seed, config.spot_check_samples
            )
            spot_checks.append(
                SpotCheck(stage=n, samples=config.spot_check_samples, deviation=deviation)
            )
        return tuple(reports), tuple(spot_checks)

    def bott_stages(self, config: RunConfig, sequences) -> tuple:
        return tuple(
            self.system_service.bott_decomposition(sequences, m)
            for m in range(min(config.stage_cap, self.max_intertwine_stage + 1) + 1)
        )

    def tower_stages(self, config: RunConfig, sequences) -> Tuple[tuple, tuple]:
        towers = []
        orders = []
        for n in range(1, config.stage_cap + 1):
            automorphism = self.dynamics_service.build_automorphism(sequences, n)
            tower = self.dynamics_service.rokhlin_tower(sequences, n)
            towers.append(self.dynamics_service.verify_tower(tower, automorphism))
            orders.append(
                UnitaryOrder(
                    stage=n,
                    order=self.dynamics_service.order_of_unitary(automorphism.unitary),
                    automorphism_order=self.dynamics_service.automorphism_order(automorphism),
                )
            )
        return tuple(towers), tuple(orders)

    def _certify(self, config: RunConfig, sequences, kappa):
        if kappa is None:
            return None, None, "certify: skipped, no kappa interval"
        if not kappa.certified:
            return None, None, "certify: skipped, kappa is not certified"
        if not kappa.above_half:
            return None, None, "certify: skipped, kappa_lo is not above 1/2"
        try:
            certificate = self.comparison_service.certify(
                config.rho, sequences, kappa, config.check_depth
            )
        except ConstructionError as exc:
            self.logger_service.warning(f"Certification skipped: {exc}")
            return None, None, f"certify: skipped, {exc}"
        replay = self.comparison_service.replay(certificate, sequences, config.check_depth)
        return certificate, replay, None


def _render_lines(lines) -> List[str]:
    rendered = []
    for line in lines:
        mark = "ok  " if line.passed else ("FAIL" if line.gating else "warn")
        stage = "" if line.stage is None else f" [stage {line.stage}]"
        rendered.append(f"  {mark} {line.name}{stage}: {line.detail}".rstrip(": "))
    return rendered
