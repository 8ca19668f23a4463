"""
Re-verify a certificate file from its own contents.
"""

import json
from pathlib import Path
from typing import Any

from django.core.management.base import BaseCommand, CommandError, CommandParser
from rest_framework.exceptions import ValidationError

from ....abstract.base_command import CHECK_FAILED, CONFIG_INVALID
from ....services.comparison_service import ComparisonService
from ....services.errors import ConstructionError, ReplayFailure
from ....services.schedule_service import ScheduleService
from ....services.utils import canonical_json
from ...serializers.certificate_serializer import (
    CertificateSerializer,
    ReplayReportSerializer,
)


class Command(BaseCommand):
    help = "Replay a certificate JSON file; exits 1 when any line fails, 2 when unreadable."

    def add_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("certificate", help="Path to a certificate JSON file.")
        parser.add_argument(
            "--check-depth",
            type=int,
            dest="check_depth",
            help="Stages after n to re-check; defaults to the certificate's own depth.",
        )

    def handle(self, *args: Any, **options: Any) -> None:
        path = Path(options["certificate"])
        try:
            serializer = CertificateSerializer(data=json.loads(path.read_text(encoding="utf-8")))
            serializer.is_valid(raise_exception=True)
        except (OSError, json.JSONDecodeError) as exc:
            raise CommandError(f"Cannot read {path}: {exc}", returncode=CONFIG_INVALID) from exc
        except ValidationError as exc:
            raise CommandError(
                f"{path} is not a certificate: {json.dumps(exc.detail)}",
                returncode=CONFIG_INVALID,
            ) from exc
        certificate = serializer.validated_data
        check_depth = options.get("check_depth")
        if check_depth is None:
            check_depth = certificate.check_depth

        try:
            sequences = ScheduleService().derive_sequences(
                certificate.schedule, certificate.n + check_depth
            )
            report = ComparisonService().replay(certificate, sequences, check_depth)
            self.stdout.write(canonical_json(ReplayReportSerializer(report).data), ending="")
            if not report.passed:
                raise ReplayFailure(report.failed_lines)
        except ConstructionError as exc:
            raise CommandError(str(exc), returncode=CHECK_FAILED) from exc
