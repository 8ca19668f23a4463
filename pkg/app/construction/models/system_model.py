"""
The inductive system: stage algebras, eigenvalue maps, connecting maps and formal
projection classes.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import prod
from typing import Dict, Iterable, Iterator, List, Tuple, Union

from ...services.errors import GuardExceededError, MalformedClassError
from .schedule_model import DerivedSequences


@dataclass(frozen=True)
class StageAlgebra:
    """
    C_n = C(X_n x Z_{2^n}, M_{r(n)}) with X_n = (S^2)^{s(n)}.

    Sizes are read from the derived sequences, never stored separately.
    """

    sequences: DerivedSequences = field(repr=False)
    n: int

    @property
    def matrix_size(self) -> int:
        return self.sequences.r[self.n]

    @property
    def sphere_count(self) -> int:
        return self.sequences.s[self.n]

    @property
    def group_order(self) -> int:
        return 2**self.n

    @property
    def base_space(self) -> str:
        return f"(S^2)^{self.sphere_count}"


@dataclass(frozen=True)
class CoordProj:
    """
    (x, k) -> (P_block(x), k mod 2^n).
    """

    block: int


@dataclass(frozen=True)
class PointEval:
    """
    (x, k) -> (x_stage, group_element).
    """

    stage: int
    group_element: int


EigenvalueMap = Union[CoordProj, PointEval]


@dataclass(frozen=True)
class CoordBlockRun:
    """
    Consecutive CoordProj slots for blocks first..last.
    """

    first: int
    last: int

    def __len__(self) -> int:
        return self.last - self.first + 1


Segment = Union[CoordBlockRun, PointEval]


def _segment_length(segment: Segment) -> int:
    return len(segment) if isinstance(segment, CoordBlockRun) else 1


@dataclass(frozen=True)
class LevelMap(Sequence):
    """
    The ordered slots of Gamma_{n+1,n}, stored as runs.

    Indexing yields single EigenvalueMaps (0-based), so a level behaves like the full
    slot list even when d(n+1) is far too large to materialize.
    """

    from_stage: int
    segments: Tuple[Segment, ...]

    @classmethod
    def from_slots(cls, from_stage: int, slots: Iterable[EigenvalueMap]) -> "LevelMap":
        """
        Compress an explicit slot list.
        """
        segments: List[Segment] = []
        for slot in slots:
            if isinstance(slot, CoordProj):
                previous = segments[-1] if segments else None
                if isinstance(previous, CoordBlockRun) and previous.last + 1 == slot.block:
                    segments[-1] = CoordBlockRun(previous.first, slot.block)
                else:
                    segments.append(CoordBlockRun(slot.block, slot.block))
            else:
                segments.append(slot)
        return cls(from_stage=from_stage, segments=tuple(segments))

    @property
    def to_stage(self) -> int:
        return self.from_stage + 1

    @cached_property
    def _offsets(self) -> Tuple[int, ...]:
        offsets = [0]
        for segment in self.segments:
            offsets.append(offsets[-1] + _segment_length(segment))
        return tuple(offsets)

    def __len__(self) -> int:
        return self._offsets[-1]

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(len(self)))]
        if index < 0:
            index += len(self)
        if not 0 <= index < len(self):
            raise IndexError(index)
        low, high = 0, len(self.segments) - 1
        while low < high:
            middle = (low + high + 1) // 2
            if self._offsets[middle] <= index:
                low = middle
            else:
                high = middle - 1
        segment = self.segments[low]
        if isinstance(segment, CoordBlockRun):
            return CoordProj(segment.first + index - self._offsets[low])
        return segment

    def __iter__(self) -> Iterator[EigenvalueMap]:
        for segment in self.segments:
            if isinstance(segment, CoordBlockRun):
                for block in range(segment.first, segment.last + 1):
                    yield CoordProj(block)
            else:
                yield segment

    def segments_between(self, start: int, stop: int) -> Tuple[Segment, ...]:
        """
        The runs covering slots start..stop-1 (0-based), split at the edges.
        """
        pieces: List[Segment] = []
        for segment, offset in zip(self.segments, self._offsets):
            length = _segment_length(segment)
            low, high = max(start, offset), min(stop, offset + length)
            if low >= high:
                continue
            if isinstance(segment, CoordBlockRun):
                pieces.append(
                    CoordBlockRun(segment.first + low - offset, segment.first + high - 1 - offset)
                )
            else:
                pieces.append(segment)
        return tuple(pieces)

    @property
    def coord_block_count(self) -> int:
        return sum(len(s) for s in self.segments if isinstance(s, CoordBlockRun))

    @property
    def point_evals(self) -> Tuple[PointEval, ...]:
        return tuple(s for s in self.segments if isinstance(s, PointEval))


@dataclass(frozen=True)
class ConnectingMap:
    """
    Gamma_{to, from} as the chain of single-level maps it is composed of.

    A path picks one slot per level, outermost level (from_stage + 1) first, which is
    the order of the tensor factors M_{l(from+1)} x ... x M_{l(to)}.
    """

    from_stage: int
    to_stage: int
    levels: Tuple[LevelMap, ...]

    @classmethod
    def identity(cls, stage: int) -> "ConnectingMap":
        return cls(from_stage=stage, to_stage=stage, levels=())

    @property
    def path_count(self) -> int:
        return prod(len(level) for level in self.levels)

    @property
    def is_identity(self) -> bool:
        return not self.levels

    def paths(self, guard: int) -> Iterator[Tuple[EigenvalueMap, ...]]:
        """
        Enumerate composite paths in diagonal order.

        :raises GuardExceededError: If there are more than guard paths.
        """
        if self.path_count > guard:
            raise GuardExceededError(
                f"Gamma_{{{self.to_stage},{self.from_stage}}} has {self.path_count} paths, "
                f"more than the enumeration guard {guard}."
            )
        return product(*self.levels)


@dataclass(frozen=True)
class Line:
    """
    Pullback of the tautological line bundle along one S^2 coordinate.
    """

    coordinate: int


@dataclass(frozen=True)
class Trivial:
    rank: int


BundleAtom = Union[Line, Trivial]


@dataclass(frozen=True)
class LineRun:
    """
    Line atoms for coordinates start..stop, each repeated multiplicity times.
    """

    start: int
    stop: int
    multiplicity: int = 1

    @property
    def count(self) -> int:
        return (self.stop - self.start + 1) * self.multiplicity


def canonical_runs(runs: Iterable[LineRun]) -> Tuple[LineRun, ...]:
    """
    Normalize overlapping or touching runs into disjoint runs of constant multiplicity.
    """
    deltas: Dict[int, int] = {}
    for run in runs:
        if run.multiplicity <= 0 or run.stop < run.start:
            continue
        deltas[run.start] = deltas.get(run.start, 0) + run.multiplicity
        deltas[run.stop + 1] = deltas.get(run.stop + 1, 0) - run.multiplicity
    merged: List[LineRun] = []
    level = 0
    positions = sorted(deltas)
    for position, following in zip(positions, positions[1:]):
        level += deltas[position]
        if level == 0:
            continue
        previous = merged[-1] if merged else None
        if previous and previous.stop + 1 == position and previous.multiplicity == level:
            merged[-1] = LineRun(previous.start, following - 1, level)
        else:
            merged.append(LineRun(position, following - 1, level))
    return tuple(merged)


@dataclass(frozen=True)
class ComponentBundle:
    """
    The bundle a projection class restricts to on one component X_n x {k}:
    Line atoms (as runs) plus a trivial summand.
    """

    line_runs: Tuple[LineRun, ...] = ()
    trivial_rank: int = 0

    @classmethod
    def build(cls, runs: Iterable[LineRun], trivial_rank: int) -> "ComponentBundle":
        return cls(line_runs=canonical_runs(runs), trivial_rank=trivial_rank)

    @property
    def line_count(self) -> int:
        return sum(run.count for run in self.line_runs)

    @property
    def rank(self) -> int:
        return self.line_count + self.trivial_rank

    @property
    def distinct_lines(self) -> bool:
        return all(run.multiplicity == 1 for run in self.line_runs)

    def atoms(self, guard: int = 100_000) -> List[BundleAtom]:
        """
        Expand into individual atoms; the trivial part is a single Trivial atom.
        """
        if self.line_count > guard:
            raise GuardExceededError(f"{self.line_count} line atoms exceed the guard {guard}.")
        expanded: List[BundleAtom] = [
            Line(coordinate)
            for run in self.line_runs
            for coordinate in range(run.start, run.stop + 1)
            for _ in range(run.multiplicity)
        ]
        if self.trivial_rank:
            expanded.append(Trivial(self.trivial_rank))
        return expanded

    def __add__(self, other: "ComponentBundle") -> "ComponentBundle":
        return ComponentBundle.build(
            self.line_runs + other.line_runs, self.trivial_rank + other.trivial_rank
        )


@dataclass(frozen=True)
class ProjectionClass:
    """
    Formal K-class of a projection over a stage, one bundle per element of Z_{2^stage}.
    """

    stage: int
    components: Tuple[ComponentBundle, ...]

    def __post_init__(self) -> None:
        if len(self.components) != 2**self.stage:
            raise MalformedClassError(
                f"Stage {self.stage} needs {2 ** self.stage} components, "
                f"got {len(self.components)}."
            )

    @classmethod
    def bott(cls) -> "ProjectionClass":
        """
        The Bott projection b at stage 0: one Line atom on the single S^2 coordinate.
        """
        return cls(stage=0, components=(ComponentBundle((LineRun(1, 1),), 0),))

    @classmethod
    def trivial(cls, stage: int, rank: int) -> "ProjectionClass":
        return cls(stage=stage, components=(ComponentBundle((), rank),) * 2**stage)

    @classmethod
    def zero(cls, stage: int) -> "ProjectionClass":
        return cls.trivial(stage, 0)

    def component(self, group_element: int) -> ComponentBundle:
        return self.components[group_element % 2**self.stage]

    @property
    def base_rank(self) -> int:
        """
        The common rank of every component.

        :raises MalformedClassError: If components disagree.
        """
        ranks = {bundle.rank for bundle in self.components}
        if len(ranks) != 1:
            raise MalformedClassError(f"Component ranks differ: {sorted(ranks)}.")
        return ranks.pop()

    @property
    def is_uniform(self) -> bool:
        return len(set(self.components)) == 1

    def direct_sum(self, other: "ProjectionClass") -> "ProjectionClass":
        if self.stage != other.stage:
            raise MalformedClassError("Direct sums need classes over the same stage.")
        return ProjectionClass(
            stage=self.stage,
            components=tuple(a + b for a, b in zip(self.components, other.components)),
        )

    __add__ = direct_sum


@dataclass(frozen=True)
class BottSummary:
    """
    Decomposition of b_m on every component.
    """

    stage: int
    line_count: int
    distinct: bool
    trivial_rank: int
    expected_lines: int
    expected_trivial: int
    uniform: bool

    @property
    def matches(self) -> bool:
        return (
            self.uniform
            and self.distinct
            and self.line_count == self.expected_lines
            and self.trivial_rank == self.expected_trivial
        )
