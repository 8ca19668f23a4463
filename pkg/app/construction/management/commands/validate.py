"""
Check a schedule against the construction conditions up to the stage cap.
"""

from typing import Any, Dict

from ....abstract.base_command import BaseConstructionCommand
from ....services.schedule_service import ScheduleService
from ...models.run_model import RunConfig
from ...serializers.schedule_serializer import ValidationReportSerializer


class Command(BaseConstructionCommand):
    help = "Validate the schedule of a run config; exits 1 on a violated condition."

    def perform(self, config: RunConfig, options: Dict[str, Any]) -> tuple:
        report = ScheduleService().validate_schedule(config.schedule, config.stage_cap)
        return ValidationReportSerializer(report).data, report.passed
