"""
Run the whole pipeline and write the report, transcript and diagram.
"""

from typing import Any, Dict

from django.core.management.base import CommandError, CommandParser

from ....abstract.base_command import CHECK_FAILED, BaseConstructionCommand
from ....services.errors import ConstructionError


class Command(BaseConstructionCommand):
    help = (
        "validate, derive, kappa, intertwine, towers, bott, certify, replay and density "
        "in one go; exits 1 when an exact check fails."
    )

    def add_arguments(self, parser: CommandParser) -> None:
        super().add_arguments(parser)
        parser.add_argument("--samples", type=int, help="Density samples; 0 skips density.")
        parser.add_argument(
            "--json", action="store_true", help="Print the JSON report instead of the transcript."
        )
        parser.add_argument(
            "--no-write", action="store_true", dest="no_write", help="Do not write output files."
        )

    def overrides(self, options: Dict[str, Any]) -> Dict[str, Any]:
        overrides = super().overrides(options)
        if options.get("samples") is not None:
            overrides["density"] = {"samples": options["samples"]}
        return overrides

    def handle(self, *args: Any, **options: Any) -> None:
        config = self.load(options)
        try:
            report = self.pipeline_service.run(config)
        except ConstructionError as exc:
            raise CommandError(str(exc), returncode=CHECK_FAILED) from exc
        if not options.get("no_write"):
            for kind, path in self.pipeline_service.write_outputs(report).items():
                self.stderr.write(f"Wrote {kind} to {path}")
        if options.get("json"):
            self.emit(self.pipeline_service.render_report(report), options.get("output"))
        else:
            self.emit(self.pipeline_service.render_transcript(report), options.get("output"))
        if report.exit_status:
            raise CommandError(
                "Run failed; see the transcript for the failing checks.",
                returncode=report.exit_status,
            )

