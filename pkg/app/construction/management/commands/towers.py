"""
Build and check the Rokhlin towers and the unitary orders for stages 1..cap.
"""

from typing import Any, Dict

from ....abstract.base_command import BaseConstructionCommand
from ...models.run_model import RunConfig
from ...serializers.dynamics_serializer import TowerReportSerializer, UnitaryOrderSerializer


class Command(BaseConstructionCommand):
    help = "Check the exact Rokhlin towers of the odometer automorphisms."

    def perform(self, config: RunConfig, options: Dict[str, Any]) -> tuple:
        sequences = self.pipeline_service.schedule_service.derive_sequences(
            config.schedule, config.stage_cap
        )
        towers, orders = self.pipeline_service.tower_stages(config, sequences)
        payload = {
            "towers": TowerReportSerializer(towers, many=True).data,
            "unitary_orders": UnitaryOrderSerializer(orders, many=True).data,
        }
        passed = all(tower.passed for tower in towers) and all(
            order.passed for order in orders
        )
        return payload, passed
