"""
Service for the inductive system.

Builds the connecting maps Gamma_{n+1,n} in the layout of the construction, composes
them, and propagates formal projection classes through them.
"""

from fractions import Fraction
from typing import Dict, List, Tuple

from django.conf import settings

from ..construction.models.schedule_model import DerivedSequences
from ..construction.models.system_model import (
    BottSummary,
    ComponentBundle,
    ConnectingMap,
    CoordBlockRun,
    CoordProj,
    LevelMap,
    LineRun,
    PointEval,
    ProjectionClass,
    StageAlgebra,
)
from .errors import GuardExceededError, MalformedClassError, StageMismatchError
from .logger_service import LoggerService


class SystemService:
    """
    Service class for stage algebras, connecting maps and projection classes.
    """

    def __init__(self) -> None:
        self.logger_service: LoggerService = LoggerService(__name__)
        self.path_guard: int = settings.CONSTRUCTION["PATH_ENUMERATION_GUARD"]
        self.run_guard: int = settings.CONSTRUCTION["LINE_RUN_GUARD"]

    def stage_algebra(self, sequences: DerivedSequences, n: int) -> StageAlgebra:
        sequences.require(n)
        return StageAlgebra(sequences=sequences, n=n)

    def level_map(self, sequences: DerivedSequences, n: int) -> LevelMap:
        """
        The slots of Gamma_{n+1,n}: CoordProj 1..d(n+1), then PointEval (x_n, j)
        for j = 0..2^n - 1.
        """
        sequences.require(n + 1)
        segments = (CoordBlockRun(1, sequences.d[n + 1]),) + tuple(
            PointEval(stage=n, group_element=j) for j in range(2**n)
        )
        return LevelMap(from_stage=n, segments=segments)

    def connecting_map(self, sequences: DerivedSequences, n: int) -> ConnectingMap:
        """
        Gamma_{n+1,n} as a single-level connecting map.

        :raises StageBeyondCapError: If n + 1 is past the derived cap.
        """
        return ConnectingMap(
            from_stage=n, to_stage=n + 1, levels=(self.level_map(sequences, n),)
        )

    def connecting_map_between(
        self, sequences: DerivedSequences, n: int, m: int
    ) -> ConnectingMap:
        """
        Gamma_{m,n} = Gamma_{m,m-1} o ... o Gamma_{n+1,n}; the identity when m = n.
        """
        if m < n:
            raise StageMismatchError(f"Cannot map stage {n} down to stage {m}.")
        sequences.require(m)
        composite = ConnectingMap.identity(n)
        for stage in range(n, m):
            composite = self.compose(composite, self.connecting_map(sequences, stage))
        return composite

    def compose(self, first: ConnectingMap, second: ConnectingMap) -> ConnectingMap:
        """
        Compose first (n -> p) with second (p -> m) into a map n -> m.

        :raises StageMismatchError: If first does not end where second starts.
        """
        if first.to_stage != second.from_stage:
            raise StageMismatchError(
                f"Cannot compose a map into stage {first.to_stage} "
                f"with a map out of stage {second.from_stage}."
            )
        if first.is_identity:
            return second
        if second.is_identity:
            return first
        return ConnectingMap(
            from_stage=first.from_stage,
            to_stage=second.to_stage,
            levels=first.levels + second.levels,
        )

    def push_class(
        self,
        projection: ProjectionClass,
        connecting: ConnectingMap,
        sequences: DerivedSequences,
    ) -> ProjectionClass:
        """
        Propagate a projection class through a connecting map one level at a time.

        CoordProj slots re-index Line atoms into their coordinate block and read the
        source at the quotient component; PointEval slots become Trivial atoms of the
        rank the source has at the evaluation component.
        """
        if projection.stage != connecting.from_stage:
            raise StageMismatchError(
                f"Class lives over stage {projection.stage}, "
                f"map starts at stage {connecting.from_stage}."
            )
        sequences.require(connecting.to_stage)
        for level in connecting.levels:
            projection = self._push_level(projection, level, sequences)
        return projection

    def push_class_along_paths(
        self,
        projection: ProjectionClass,
        connecting: ConnectingMap,
        sequences: DerivedSequences,
    ) -> ProjectionClass:
        """
        Propagate a class by evaluating every composite path separately.

        Independent of push_class; the two agree when composition is functorial.
        """
        if projection.stage != connecting.from_stage:
            raise StageMismatchError(
                f"Class lives over stage {projection.stage}, "
                f"map starts at stage {connecting.from_stage}."
            )
        sequences.require(connecting.to_stage)
        n, m = connecting.from_stage, connecting.to_stage
        paths = list(connecting.paths(self.path_guard))

        components: List[ComponentBundle] = []
        for target in range(2**m):
            runs: List[LineRun] = []
            trivial = 0
            for path in paths:
                constant, offset, component = False, 0, target
                for stage, slot in zip(range(m - 1, n - 1, -1), reversed(path)):
                    if isinstance(slot, CoordProj):
                        if not constant:
                            offset += (slot.block - 1) * sequences.s[stage]
                        component %= 2**stage
                    else:
                        constant, component = True, slot.group_element
                source = projection.component(component)
                if constant:
                    trivial += source.rank
                else:
                    trivial += source.trivial_rank
                    runs.extend(
                        LineRun(run.start + offset, run.stop + offset, run.multiplicity)
                        for run in source.line_runs
                    )
            components.append(ComponentBundle.build(runs, trivial))
        return ProjectionClass(stage=m, components=tuple(components))

    def trace_of_class(
        self, projection: ProjectionClass, sequences: DerivedSequences
    ) -> Fraction:
        """
        tau(p) = rank / r(stage), the same for every trace since ranks agree across
        components; for projections this is also d_tau(p).

        :raises MalformedClassError: If component ranks differ.
        """
        sequences.require(projection.stage)
        return Fraction(projection.base_rank, sequences.r[projection.stage])

    def bott_class_at(self, sequences: DerivedSequences, m: int) -> ProjectionClass:
        """
        b_m = Gamma_{m,0}(b).
        """
        return self.push_class(
            ProjectionClass.bott(), self.connecting_map_between(sequences, 0, m), sequences
        )

    def bott_decomposition(self, sequences: DerivedSequences, m: int) -> BottSummary:
        """
        Compare b_m with s(m) distinct Line atoms plus a trivial summand of rank
        r(m) - s(m) on every component.
        """
        bott = self.bott_class_at(sequences, m)
        first = bott.components[0]
        summary = BottSummary(
            stage=m,
            line_count=first.line_count,
            distinct=all(bundle.distinct_lines for bundle in bott.components),
            trivial_rank=first.trivial_rank,
            expected_lines=sequences.s[m],
            expected_trivial=sequences.r[m] - sequences.s[m],
            uniform=bott.is_uniform,
        )
        if not summary.matches:
            self.logger_service.error(f"Bott decomposition mismatch at stage {m}: {summary}")
        return summary

    def _push_level(
        self, projection: ProjectionClass, level: LevelMap, sequences: DerivedSequences
    ) -> ProjectionClass:
        n = level.from_stage
        if projection.stage != n:
            raise StageMismatchError(
                f"Level starts at stage {n}, class lives over stage {projection.stage}."
            )
        sphere_count = sequences.s[n]
        for bundle in projection.components:
            if bundle.line_runs and bundle.line_runs[-1].stop > sphere_count:
                raise MalformedClassError(
                    f"Line coordinate {bundle.line_runs[-1].stop} is outside "
                    f"(S^2)^{sphere_count}."
                )

        evaluated_rank = 0
        for segment in level.point_evals:
            if segment.stage != n:
                raise StageMismatchError(
                    f"Point evaluation at x_{segment.stage} in a level out of stage {n}."
                )
            evaluated_rank += projection.component(segment.group_element).rank

        images: Dict[int, ComponentBundle] = {}
        for source_element in range(2**n):
            source = projection.components[source_element]
            runs: List[LineRun] = []
            trivial = evaluated_rank
            for segment in level.segments:
                if isinstance(segment, CoordBlockRun):
                    trivial += len(segment) * source.trivial_rank
                    runs.extend(self._shift_runs(source.line_runs, segment, sphere_count))
            images[source_element] = ComponentBundle.build(runs, trivial)

        # component k of stage n+1 reads component k mod 2^n through CoordProj
        components: Tuple[ComponentBundle, ...] = tuple(
            images[k % 2**n] for k in range(2 ** (n + 1))
        )
        return ProjectionClass(stage=n + 1, components=components)

    def _shift_runs(
        self, runs: Tuple[LineRun, ...], segment: CoordBlockRun, sphere_count: int
    ) -> List[LineRun]:
        if not runs:
            return []
        if len(runs) == 1 and runs[0].start == 1 and runs[0].stop == sphere_count:
            full = runs[0]
            return [
                LineRun(
                    (segment.first - 1) * sphere_count + 1,
                    segment.last * sphere_count,
                    full.multiplicity,
                )
            ]
        if len(segment) * len(runs) > self.run_guard:
            raise GuardExceededError(
                f"Copying {len(runs)} line runs into {len(segment)} blocks "
                f"exceeds the guard {self.run_guard}."
            )
        return [
            LineRun(
                run.start + (block - 1) * sphere_count,
                run.stop + (block - 1) * sphere_count,
                run.multiplicity,
            )
            for block in range(segment.first, segment.last + 1)
            for run in runs
        ]
