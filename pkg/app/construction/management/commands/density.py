"""
Estimate how densely the point evaluations fill the spectrum of a stage.
"""

from typing import Any, Dict

from django.core.management.base import CommandParser

from ....abstract.base_command import BaseConstructionCommand
from ....services.density_service import DensityService
from ...models.density_model import PointScheme
from ...models.run_model import RunConfig
from ...serializers.dynamics_serializer import DensityReportSerializer


class Command(BaseConstructionCommand):
    help = "Covering-radius diagnostic of the evaluation points; never a failing check."

    def add_arguments(self, parser: CommandParser) -> None:
        super().add_arguments(parser)
        parser.add_argument("--target-stage", type=int, dest="target_stage")
        parser.add_argument("--cutoff", type=int)
        parser.add_argument("--samples", type=int)
        parser.add_argument("--workers", type=int)

    def overrides(self, options: Dict[str, Any]) -> Dict[str, Any]:
        overrides = super().overrides(options)
        density = {
            key: options[key]
            for key in ("target_stage", "cutoff", "samples", "workers")
            if options.get(key) is not None
        }
        if density:
            overrides["density"] = density
        return overrides

    def perform(self, config: RunConfig, options: Dict[str, Any]) -> tuple:
        sequences = self.pipeline_service.schedule_service.derive_sequences(
            config.schedule, config.stage_cap
        )
        report = DensityService().density_diagnostic(
            PointScheme(seed=config.seed),
            sequences,
            config.density.target_stage,
            config.density.cutoff,
            config.density.samples or 1,
            config.seed,
            workers=config.density.workers,
        )
        return DensityReportSerializer(report).data, True
