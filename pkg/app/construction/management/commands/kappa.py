"""
Print the rigorous interval for kappa = lim s(n)/r(n).
"""

from typing import Any, Dict

from ....abstract.base_command import BaseConstructionCommand
from ....services.schedule_service import ScheduleService
from ...models.run_model import RunConfig
from ...serializers.schedule_serializer import KappaIntervalSerializer


class Command(BaseConstructionCommand):
    help = "Bound kappa from the config's kappa_stage; exits 1 if the interval is not certified."

    def perform(self, config: RunConfig, options: Dict[str, Any]) -> tuple:
        kappa = ScheduleService().kappa_interval(config.schedule, config.kappa_stage)
        return KappaIntervalSerializer(kappa).data, kappa.certified
