"""
Base class for the construction management commands.

Every command reads a run configuration (bundled name or JSON path), lets flags
override its fields, and maps failures onto the exit codes 0 pass, 1 check failure
and 2 config error.
"""

from pathlib import Path
from typing import Any, Dict, Optional

from django.core.management.base import BaseCommand, CommandError, CommandParser

from ..construction.models.run_model import RunConfig
from ..services.errors import ConfigError, ConstructionError
from ..services.pipeline_service import PipelineService
from ..services.utils import canonical_json

CHECK_FAILED = 1
CONFIG_INVALID = 2


class BaseConstructionCommand(BaseCommand):
    """
    Shared flag handling, config loading and output for the construction commands.

    Subclasses implement ``perform`` and return the JSON-ready payload together with
    the verdict; a failed verdict exits with status 1.
    """

    default_config = "paper-10n"

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        super().__init__(*args, **kwargs)
        self.pipeline_service: PipelineService = PipelineService()

    def add_arguments(self, parser: CommandParser) -> None:
        parser.add_argument(
            "--config",
            default=self.default_config,
            help="Bundled config name or path to a JSON run config.",
        )
        parser.add_argument("--stage-cap", type=int, dest="stage_cap")
        parser.add_argument("--kappa-stage", type=int, dest="kappa_stage")
        parser.add_argument("--rho", help='Rational string such as "1/2".')
        parser.add_argument("--check-depth", type=int, dest="check_depth")
        parser.add_argument("--seed", type=int)
        parser.add_argument("--output", help="Write the JSON here instead of stdout.")

    def handle(self, *args: Any, **options: Any) -> None:
        config = self.load(options)
        try:
            payload, passed = self.perform(config, options)
        except ConfigError as exc:
            raise CommandError(str(exc), returncode=CONFIG_INVALID) from exc
        except ConstructionError as exc:
            raise CommandError(str(exc), returncode=CHECK_FAILED) from exc
        self.emit(payload, options.get("output"))
        if not passed:
            raise CommandError(f"{self.check_name()} failed.", returncode=CHECK_FAILED)

    def perform(self, config: RunConfig, options: Dict[str, Any]) -> tuple:
        raise NotImplementedError

    def check_name(self) -> str:
        return self.__module__.rsplit(".", 1)[-1]

    def overrides(self, options: Dict[str, Any]) -> Dict[str, Any]:
        """
        Map the command-line flags onto RunConfig fields.
        """
        keys = ("stage_cap", "kappa_stage", "rho", "check_depth", "seed")
        return {key: options[key] for key in keys if options.get(key) is not None}

    def load(self, options: Dict[str, Any]) -> RunConfig:
        try:
            return self.pipeline_service.load_config(options["config"], self.overrides(options))
        except ConfigError as exc:
            raise CommandError(str(exc), returncode=CONFIG_INVALID) from exc

    def emit(self, payload: Any, output: Optional[str]) -> None:
        """
        Write the payload; dicts and lists as canonical JSON, strings verbatim.
        """
        text = payload if isinstance(payload, str) else canonical_json(payload)
        if output:
            path = Path(output)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
            self.stderr.write(f"Wrote {path}")
        else:
            self.stdout.write(text, ending="" if text.endswith("\n") else "\n")
