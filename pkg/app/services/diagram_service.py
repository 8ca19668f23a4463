"""
Service for the stage diagram.

Emits Graphviz DOT text for the first few stages: one node per element of Z_{2^n} at
rank n, double edges for the blocks of coordinate projections and dotted edges for
the point evaluations.
"""

from typing import List

from django.conf import settings

from ..construction.models.schedule_model import DerivedSequences
from .errors import GuardExceededError
from .logger_service import LoggerService

COORDINATE_EDGE = 'color="black:invis:black", label="{count}"'
EVALUATION_EDGE = 'style=dotted, label="x{stage}"'


class DiagramService:
    """
    Service class for DOT emission.
    """

    def __init__(self) -> None:
        self.logger_service: LoggerService = LoggerService(__name__)
        self.depth_guard: int = settings.CONSTRUCTION["DOT_DEPTH_GUARD"]

    def emit_dot(
        self,
        sequences: DerivedSequences,
        depth: int,
        with_cross_evals: bool = False,
        chain: bool = False,
    ) -> str:
        """
        Build the diagram of stages 0..depth.

        :param with_cross_evals: Draw the evaluations at (x_n, j) into every node of the
            next rank, not only into the children of j.
        :param chain: Collapse each rank to a single node C_n.
        :raises GuardExceededError: If depth is over the guard.
        """
        if depth < 0:
            raise ValueError(f"Depth must be non-negative, got {depth}.")
        if depth > self.depth_guard:
            raise GuardExceededError(
                f"Depth {depth} is over the diagram guard {self.depth_guard}."
            )
        sequences.require(depth)

        lines: List[str] = ["digraph stages {", "\trankdir=TB;", "\tnode [shape=circle];"]
        if chain:
            lines.extend(self._chain(sequences, depth))
        else:
            lines.extend(self._tree(sequences, depth, with_cross_evals))
        lines.append("}")
        self.logger_service.debug(
            f"Emitted diagram to depth {depth} (cross evaluations: {with_cross_evals})."
        )
        return "\n".join(lines) + "\n"

    def _chain(self, sequences: DerivedSequences, depth: int) -> List[str]:
        lines = [f'\t"C{n}" [label="C{n}", shape=box];' for n in range(depth + 1)]
        for n in range(depth):
            lines.append(
                f'\t"C{n}" -> "C{n + 1}" ['
                + COORDINATE_EDGE.format(count=sequences.d[n + 1])
                + "];"
            )
            lines.append(
                f'\t"C{n}" -> "C{n + 1}" [' + EVALUATION_EDGE.format(stage=n) + "];"
            )
        return lines

    def _tree(
        self, sequences: DerivedSequences, depth: int, with_cross_evals: bool
    ) -> List[str]:
        lines: List[str] = []
        for n in range(depth + 1):
            lines.append("\t{")
            lines.append("\t\trank = same;")
            for k in range(2**n):
                lines.append(f'\t\t"{_node(n, k)}" [label="{_label(n, k)}"];')
            lines.append("\t}")

        for n in range(depth):
            for k in range(2**n):
                # children of k are k and k + 2^n
                for child in (k, k + 2**n):
                    lines.append(
                        f'\t"{_node(n, k)}" -> "{_node(n + 1, child)}" ['
                        + COORDINATE_EDGE.format(count=sequences.d[n + 1])
                        + "];"
                    )
                targets = range(2 ** (n + 1)) if with_cross_evals else (k, k + 2**n)
                for target in targets:
                    lines.append(
                        f'\t"{_node(n, k)}" -> "{_node(n + 1, target)}" ['
                        + EVALUATION_EDGE.format(stage=n)
                        + "];"
                    )
        return lines


def _node(n: int, k: int) -> str:
    return f"n{n}_{k}"


def _label(n: int, k: int) -> str:
    """
    k in binary, least significant digit first; the root is labelled by the empty word.
    """
    if n == 0:
        return "&epsilon;"
    return "".join(str((k >> bit) & 1) for bit in range(n))
