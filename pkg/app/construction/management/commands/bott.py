"""
Push the Bott projections forward and check their line-bundle decomposition.
"""

from typing import Any, Dict

from ....abstract.base_command import BaseConstructionCommand
from ...models.run_model import RunConfig
from ...serializers.dynamics_serializer import BottSummarySerializer


class Command(BaseConstructionCommand):
    help = "Bott decomposition b_m = s(m) distinct lines plus a trivial summand."

    def perform(self, config: RunConfig, options: Dict[str, Any]) -> tuple:
        sequences = self.pipeline_service.schedule_service.derive_sequences(
            config.schedule, config.stage_cap
        )
        summaries = self.pipeline_service.bott_stages(config, sequences)
        return (
            BottSummarySerializer(summaries, many=True).data,
            all(summary.matches for summary in summaries),
        )
