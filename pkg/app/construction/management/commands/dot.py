"""
Emit the stage diagram as Graphviz DOT.
"""

from typing import Any, Dict

from django.core.management.base import CommandParser

from ....abstract.base_command import BaseConstructionCommand
from ....services.diagram_service import DiagramService
from ...models.run_model import RunConfig


class Command(BaseConstructionCommand):
    help = "Write the DOT diagram of the first stages."

    def add_arguments(self, parser: CommandParser) -> None:
        super().add_arguments(parser)
        parser.add_argument("--depth", type=int, dest="dot_depth")
        parser.add_argument("--with-cross-evals", action="store_true", dest="with_cross_evals")
        parser.add_argument(
            "--chain", action="store_true", help="Draw the single-node chain instead of the tree."
        )

    def overrides(self, options: Dict[str, Any]) -> Dict[str, Any]:
        overrides = super().overrides(options)
        if options.get("dot_depth") is not None:
            overrides["dot_depth"] = options["dot_depth"]
        if options.get("with_cross_evals"):
            overrides["with_cross_evals"] = True
        return overrides

    def perform(self, config: RunConfig, options: Dict[str, Any]) -> tuple:
        sequences = self.pipeline_service.schedule_service.derive_sequences(
            config.schedule, config.dot_depth
        )
        dot = DiagramService().emit_dot(
            sequences, config.dot_depth, config.with_cross_evals, chain=options.get("chain", False)
        )
        return dot, True
