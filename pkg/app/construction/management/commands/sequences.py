"""
Print the derived sequences d, l, r, s up to the stage cap.
"""

from typing import Any, Dict

from django.core.management.base import CommandParser

from ....abstract.base_command import BaseConstructionCommand
from ....services.schedule_service import ScheduleService
from ...models.run_model import RunConfig
from ...serializers.schedule_serializer import DerivedSequencesSerializer


class Command(BaseConstructionCommand):
    help = "Derive the exact sequences of a schedule."

    def add_arguments(self, parser: CommandParser) -> None:
        super().add_arguments(parser)
        parser.add_argument(
            "--table", action="store_true", help="Print a decimal ratio table instead of JSON."
        )

    def perform(self, config: RunConfig, options: Dict[str, Any]) -> tuple:
        schedule_service = ScheduleService()
        sequences = schedule_service.derive_sequences(config.schedule, config.stage_cap)
        if not options.get("table"):
            return DerivedSequencesSerializer(sequences).data, True
        rows = [
            f"{row['n']:>3}  d={row['d']}  l={row['l']}  r={row['r']}  s={row['s']}  "
            f"s/r={row['ratio']}"
            for row in schedule_service.ratio_table(sequences)
        ]
        return "\n".join(rows) + "\n", True
