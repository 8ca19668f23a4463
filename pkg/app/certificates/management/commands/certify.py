"""
Issue the certificate that the limit algebra fails rho-comparison.
"""

from typing import Any, Dict

from ....abstract.base_command import BaseConstructionCommand
from ....construction.models.run_model import RunConfig
from ....services.comparison_service import ComparisonService
from ...serializers.certificate_serializer import CertificateSerializer


class Command(BaseConstructionCommand):
    help = (
        "Certify the failure of rho-comparison for the config's schedule and rho; "
        "exits 1 when no certificate exists at these stages."
    )

    def perform(self, config: RunConfig, options: Dict[str, Any]) -> tuple:
        schedule_service = self.pipeline_service.schedule_service
        kappa = schedule_service.kappa_interval(config.schedule, config.kappa_stage)
        sequences = schedule_service.derive_sequences(config.schedule, config.stage_cap)
        certificate = ComparisonService().certify(config.rho, sequences, kappa, config.check_depth)
        return CertificateSerializer(certificate).data, True
