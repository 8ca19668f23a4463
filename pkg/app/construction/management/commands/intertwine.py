"""
Verify that the odometer automorphisms intertwine with the connecting maps.
"""

from typing import Any, Dict

from django.core.management.base import CommandParser

from ....abstract.base_command import BaseConstructionCommand
from ...models.run_model import RunConfig
from ...serializers.dynamics_serializer import IntertwineReportSerializer, SpotCheckSerializer


class Command(BaseConstructionCommand):
    help = "Symbolic intertwining check per stage, with numerical spot checks as diagnostics."

    def add_arguments(self, parser: CommandParser) -> None:
        super().add_arguments(parser)
        parser.add_argument("--spot-check-samples", type=int, dest="spot_check_samples")

    def overrides(self, options: Dict[str, Any]) -> Dict[str, Any]:
        overrides = super().overrides(options)
        if options.get("spot_check_samples") is not None:
            overrides["spot_check_samples"] = options["spot_check_samples"]
        return overrides

    def perform(self, config: RunConfig, options: Dict[str, Any]) -> tuple:
        sequences = self.pipeline_service.schedule_service.derive_sequences(
            config.schedule, config.stage_cap
        )
        reports, spot_checks = self.pipeline_service.intertwine_stages(config, sequences)
        payload = {
            "intertwine": IntertwineReportSerializer(reports, many=True).data,
            "spot_checks": SpotCheckSerializer(spot_checks, many=True).data,
        }
        return payload, all(report.passed for report in reports)
