"""
Service for the odometer dynamics.

Builds u_n and alpha_n, checks alpha_{n+1} o Gamma_{n+1,n} = Gamma_{n+1,n} o alpha_n
both symbolically (on ordered slot lists) and numerically (on sampled matrix-valued
functions), and verifies Rokhlin towers exactly.
"""

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from django.conf import settings

from ..abstract.base_report import CheckLine
from ..construction.models.density_model import PointScheme
from ..construction.models.dynamics_model import (
    CentralProjection,
    IntertwineReport,
    LevelPermutation,
    OdometerAutomorphism,
    PermutationUnitary,
    RokhlinTower,
    SlotRun,
    TowerReport,
)
from ..construction.models.schedule_model import DerivedSequences
from ..construction.models.system_model import (
    CoordBlockRun,
    CoordProj,
    EigenvalueMap,
    LevelMap,
    PointEval,
    Segment,
)
from .errors import GuardExceededError
from .logger_service import LoggerService
from .system_service import SystemService


class DynamicsService:
    """
    Service class for automorphisms, intertwining and Rokhlin towers.
    """

    def __init__(self) -> None:
        self.logger_service: LoggerService = LoggerService(__name__)
        self.system_service: SystemService = SystemService()
        self.dense_guard: int = settings.CONSTRUCTION["DENSE_MATRIX_GUARD"]

    def build_automorphism(
        self, sequences: DerivedSequences, n: int
    ) -> OdometerAutomorphism:
        """
        alpha_n with u_n = v_1 x ... x v_n.

        :raises StageBeyondCapError: If n is past the derived cap.
        """
        sequences.require(n)
        factors = tuple(
            LevelPermutation(level=j, fixed=sequences.d[j], cycle_length=2 ** (j - 1))
            for j in range(1, n + 1)
        )
        return OdometerAutomorphism(
            stage=n, unitary=PermutationUnitary(stage=n, factors=factors)
        )

    def order_of_unitary(self, unitary: PermutationUnitary) -> int:
        """
        lcm of the factor orders; checked to divide 2^(stage-1).
        """
        order = unitary.order
        bound = 2 ** max(unitary.stage - 1, 0)
        if bound % order:
            self.logger_service.error(
                f"order(u_{unitary.stage}) = {order} does not divide {bound}."
            )
        return order

    def automorphism_order(self, automorphism: OdometerAutomorphism) -> int:
        """
        lcm(order(u_n), 2^n); equal to 2^n, so alpha_n is periodic with period 2^n.
        """
        self.order_of_unitary(automorphism.unitary)
        return automorphism.order

    def verify_intertwine(
        self,
        sequences: DerivedSequences,
        n: int,
        level: Optional[LevelMap] = None,
    ) -> IntertwineReport:
        """
        Compare the slots of alpha_{n+1} o Gamma_{n+1,n} with those of Gamma_{n+1,n} o alpha_n.

        Left: conjugating by v_{n+1} moves slot v(i) to position i and the shift on
        Z_{2^(n+1)} adds one to every quotient reading. Right: alpha_n adds one to the
        group element every slot reads. Coordinate-projection slots must stay put and
        the point evaluations must rotate by exactly one step.

        :param level: Slots to test; defaults to the construction's Gamma_{n+1,n}.
        """
        expected = self.system_service.level_map(sequences, n)
        level = expected if level is None else level
        upper = self.build_automorphism(sequences, n + 1)
        lower = self.build_automorphism(sequences, n)
        twist = upper.unitary.factors[-1]

        layout_difference = _first_difference(
            _slot_runs(expected.segments), _slot_runs(level.segments)
        )
        lines: List[CheckLine] = [
            CheckLine(
                name="layout",
                passed=layout_difference is None,
                detail=(
                    f"d({n + 1}) coordinate projections then {2 ** n} point evaluations"
                    if layout_difference is None
                    else f"slot {layout_difference} deviates from the construction"
                ),
                stage=n,
            ),
            CheckLine(
                name="unitary_factorization",
                passed=upper.unitary.factors[:-1] == lower.unitary.factors
                and twist.size == sequences.l[n + 1]
                and twist.fixes_prefix(sequences.d[n + 1]),
                detail=f"u_{n + 1} = u_{n} x v_{n + 1}, v_{n + 1} fixes the first d({n + 1}) slots",
                stage=n,
            ),
        ]

        if len(level) != twist.size:
            difference: Optional[int] = min(len(level), twist.size) + 1
        else:
            left = self._left_readings(
                level, twist, _quotient_reading(n, upper.shift, shift_upstairs=True)
            )
            right = self._right_readings(
                level, lower, _quotient_reading(n, lower.shift, shift_upstairs=False)
            )
            difference = _first_difference(left, right)
        lines.append(
            CheckLine(
                name="slots",
                passed=difference is None,
                detail=(
                    f"all {len(level)} slots agree"
                    if difference is None
                    else f"first differing slot {difference}"
                ),
                stage=n,
            )
        )
        report = IntertwineReport(
            stage=n, slot_count=len(level), lines=tuple(lines), first_difference=difference
        )
        if not report.passed:
            self.logger_service.error(
                f"Intertwining fails at stage {n}: {report.failed_lines}"
            )
        return report

    def spot_check_intertwine(
        self,
        sequences: DerivedSequences,
        n: int,
        seed: int,
        sample_count: int,
        level: Optional[LevelMap] = None,
        exact: bool = False,
    ) -> float:
        """
        Largest operator-norm gap between both sides of the intertwining identity on
        random matrix-valued functions f and random points (x, k).

        f(y, k) = A_k + sum_c (w_c . y_c) B_c over the S^2 coordinates y_c of y.
        Both sides only permute entries, so a correct map gives exactly 0.

        :param exact: Use rational entries and object arrays instead of floats.
        :raises GuardExceededError: If r(n+1) is over the dense-matrix guard.
        """
        sequences.require(n + 1)
        if sequences.r[n + 1] > self.dense_guard:
            raise GuardExceededError(
                f"r({n + 1}) = {sequences.r[n + 1]} is over the dense guard "
                f"{self.dense_guard}; use verify_intertwine instead."
            )
        level = self.system_service.level_map(sequences, n) if level is None else level
        upper = self.build_automorphism(sequences, n + 1)
        lower = self.build_automorphism(sequences, n)
        upper_perm = upper.unitary.flat_permutation(self.dense_guard)
        lower_perm = lower.unitary.flat_permutation(self.dense_guard)
        point = PointScheme(seed=seed).point(sequences, n)

        deviation = 0.0
        for child in np.random.SeedSequence(seed).spawn(sample_count):
            rng = np.random.default_rng(child)
            function = _SampledFunction(rng, sequences, n, exact)
            x = _random_sphere_tuple(rng, sequences.s[n + 1])
            k = int(rng.integers(2 ** (n + 1)))

            left = _assemble(
                [function(*_evaluate(slot, x, k + 1, point, sequences, n)) for slot in level]
            )
            left = left[np.ix_(upper_perm, upper_perm)]

            right_blocks = []
            for slot in level:
                y, j = _evaluate(slot, x, k, point, sequences, n)
                right_blocks.append(
                    function(y, j + 1)[np.ix_(lower_perm, lower_perm)]
                )
            right = _assemble(right_blocks)

            difference = left - right
            if not np.any(difference != 0):
                continue
            dense = difference.astype(float) if exact else difference
            deviation = max(deviation, float(np.linalg.norm(dense, 2)))
        self.logger_service.debug(
            f"Spot check at stage {n}: {sample_count} samples, deviation {deviation}."
        )
        return deviation

    def rokhlin_tower(self, sequences: DerivedSequences, n: int) -> RokhlinTower:
        """
        The 2^n indicators of the group coordinate, p_i = indicator of -i mod 2^n,
        so that alpha(p_i) = p_{i+1}.
        """
        sequences.require(n)
        order = 2**n
        return RokhlinTower(
            stage=n,
            projections=tuple(
                CentralProjection(stage=n, group_element=(-i) % order)
                for i in range(order)
            ),
        )

    def verify_tower(
        self,
        tower: RokhlinTower,
        automorphism: OdometerAutomorphism,
        epsilon: Fraction = Fraction(0),
        min_length: int = 1,
    ) -> TowerReport:
        """
        Check sum p_i = 1, alpha(p_i) = p_{i+1 mod length} and centrality exactly.

        The projections are scalar on each component, so they commute with every
        element of C_n; any epsilon and finite set are satisfied with error 0.
        """
        order = 2**tower.stage
        elements = sorted(p.group_element for p in tower.projections)
        # the indicators sum to 1 exactly when every group element is hit once
        partition = elements == list(range(order))
        shifted_index = next(
            (
                i
                for i, projection in enumerate(tower.projections)
                if automorphism.apply_to_indicator(projection)
                != tower.projections[(i + 1) % tower.length]
            ),
            None,
        )
        central = all(
            p.stage == tower.stage and 0 <= p.group_element < order for p in tower.projections
        )
        lines = (
            CheckLine(
                name="partition_of_unity",
                passed=partition,
                detail="each group element covered by exactly one projection",
                stage=tower.stage,
            ),
            CheckLine(
                name="cyclic_shift",
                passed=shifted_index is None and automorphism.stage == tower.stage,
                detail=(
                    "alpha(p_i) = p_(i+1 mod length)"
                    if shifted_index is None
                    else f"alpha(p_{shifted_index}) differs from p_{shifted_index + 1}"
                ),
                stage=tower.stage,
            ),
            CheckLine(
                name="central",
                passed=central,
                detail="every projection is a scalar multiple of the unit on each component",
                stage=tower.stage,
            ),
            CheckLine(
                name="length",
                passed=tower.length >= min_length,
                detail=f"length {tower.length} >= {min_length}",
                stage=tower.stage,
            ),
        )
        report = TowerReport(
            stage=tower.stage,
            length=tower.length,
            epsilon=epsilon,
            epsilon_achieved=Fraction(0),
            lines=lines,
        )
        if not report.passed:
            self.logger_service.error(f"Tower at stage {tower.stage} fails: {report.failed_lines}")
        return report

    def tower_stage_for_length(self, length: int) -> int:
        """
        Least n with 2^n >= length.
        """
        return max(length - 1, 0).bit_length()

    def swap_slots(self, level: LevelMap, first: int, second: int) -> LevelMap:
        """
        Copy of a level with two slots (0-based) exchanged.
        """
        slots = self._explicit_slots(level)
        slots[first], slots[second] = slots[second], slots[first]
        return LevelMap.from_slots(level.from_stage, slots)

    def replace_slot(self, level: LevelMap, index: int, slot: EigenvalueMap) -> LevelMap:
        """
        Copy of a level with one slot (0-based) replaced.
        """
        slots = self._explicit_slots(level)
        slots[index] = slot
        return LevelMap.from_slots(level.from_stage, slots)

    def _explicit_slots(self, level: LevelMap) -> List[EigenvalueMap]:
        if len(level) > self.dense_guard:
            raise GuardExceededError(
                f"Level with {len(level)} slots is too large to edit slot by slot."
            )
        return list(level)

    def _left_readings(
        self, level: LevelMap, twist: LevelPermutation, quotient: Tuple[int, ...]
    ) -> List[SlotRun]:
        # positions fixed by v_{n+1} keep their own slot
        fixed = min(twist.fixed, len(level))
        readings = _slot_runs(level.segments_between(0, fixed), quotient)
        for position in range(fixed + 1, twist.size + 1):
            source = level[twist(position) - 1]
            readings.extend(_slot_runs([source], quotient))
        return readings

    def _right_readings(
        self, level: LevelMap, lower: OdometerAutomorphism, quotient: Tuple[int, ...]
    ) -> List[SlotRun]:
        readings = _slot_runs(level.segments, quotient)
        shifted: List[SlotRun] = []
        for run in readings:
            if run.key[0] == "point":
                _, stage, element = run.key
                shifted.append(
                    SlotRun(
                        key=("point", stage, (element + lower.shift) % lower.group_order),
                        start=0,
                    )
                )
            else:
                shifted.append(run)
        return shifted


def _slot_runs(
    segments: Iterable[Segment], quotient: Optional[Tuple[int, ...]] = None
) -> List[SlotRun]:
    """
    Describe what each slot reads. A coordinate slot reads block j at the component
    quotient[k] for each k; a point slot reads the fixed point (x_stage, element).
    """
    runs: List[SlotRun] = []
    for segment in segments:
        if isinstance(segment, (CoordBlockRun, CoordProj)):
            first = segment.first if isinstance(segment, CoordBlockRun) else segment.block
            length = len(segment) if isinstance(segment, CoordBlockRun) else 1
            runs.append(SlotRun(key=("coordinate", quotient), start=first, length=length))
        else:
            runs.append(SlotRun(key=("point", segment.stage, segment.group_element), start=0))
    return runs


def _quotient_reading(n: int, shift: int, shift_upstairs: bool) -> Tuple[int, ...]:
    """
    The component of Z_{2^n} a coordinate slot reads, for each k in Z_{2^(n+1)}:
    pi(k + shift) when the shift acts before the quotient, pi(k) + shift when after.
    """
    order = 2**n
    if shift_upstairs:
        return tuple((k + shift) % order for k in range(2 * order))
    return tuple((k % order + shift) % order for k in range(2 * order))


def _first_difference(left: Sequence[SlotRun], right: Sequence[SlotRun]) -> Optional[int]:
    """
    1-based index of the first slot where two run lists disagree, or None.
    """
    i = j = 0
    left_offset = right_offset = 0
    position = 1
    while i < len(left) and j < len(right):
        a, b = left[i], right[j]
        if a.key != b.key or a.start + left_offset != b.start + right_offset:
            return position
        step = min(a.length - left_offset, b.length - right_offset)
        position += step
        left_offset += step
        right_offset += step
        if left_offset == a.length:
            i, left_offset = i + 1, 0
        if right_offset == b.length:
            j, right_offset = j + 1, 0
    if i < len(left) or j < len(right):
        return position
    return None


class _SampledFunction:
    """
    A random element f of C_n, evaluated at (y, k) with y in (S^2)^{s(n)}.
    """

    def __init__(
        self, rng: np.random.Generator, sequences: DerivedSequences, n: int, exact: bool
    ) -> None:
        size, spheres, order = sequences.r[n], sequences.s[n], 2**n
        if exact:
            self.constant = _rational_array(rng, (order, size, size))
            self.weights = _rational_array(rng, (spheres, 3))
            self.slopes = _rational_array(rng, (spheres, size, size))
        else:
            self.constant = rng.normal(size=(order, size, size)) + 1j * rng.normal(
                size=(order, size, size)
            )
            self.weights = rng.normal(size=(spheres, 3))
            self.slopes = rng.normal(size=(spheres, size, size)) + 1j * rng.normal(
                size=(spheres, size, size)
            )
        self.exact = exact
        self.order = order

    def __call__(self, y: np.ndarray, k: int) -> np.ndarray:
        if self.exact:
            y = np.vectorize(Fraction, otypes=[object])(y)
        value = self.constant[k % self.order].copy()
        for c in range(len(self.weights)):
            value = value + np.dot(self.weights[c], y[c]) * self.slopes[c]
        return value


def _rational_array(rng: np.random.Generator, shape: Tuple[int, ...]) -> np.ndarray:
    numerators = rng.integers(-9, 10, size=shape)
    denominators = rng.integers(1, 10, size=shape)
    values = [Fraction(int(p), int(q)) for p, q in zip(numerators.ravel(), denominators.ravel())]
    return np.array(values, dtype=object).reshape(shape)


def _random_sphere_tuple(rng: np.random.Generator, count: int) -> np.ndarray:
    vectors = rng.normal(size=(count, 3))
    return vectors / np.linalg.norm(vectors, axis=1, keepdims=True)


def _evaluate(
    slot: EigenvalueMap,
    x: np.ndarray,
    k: int,
    point: np.ndarray,
    sequences: DerivedSequences,
    n: int,
) -> Tuple[np.ndarray, int]:
    """
    S_{n,slot}(x, k) as (point of X_n, element of Z_{2^n}).
    """
    if isinstance(slot, CoordProj):
        spheres = sequences.s[n]
        start = (slot.block - 1) * spheres
        return x[start : start + spheres], k % 2**n
    if isinstance(slot, PointEval):
        return point, slot.group_element
    raise TypeError(f"Unknown eigenvalue map {slot!r}")


def _assemble(blocks: List[np.ndarray]) -> np.ndarray:
    """
    sum_i F_i x e_ii in M_r x M_l, flattened with the M_r index most significant.
    """
    count, size = len(blocks), blocks[0].shape[0]
    stacked = np.stack(blocks)
    dense = np.zeros((size, count, size, count), dtype=stacked.dtype)
    slots = np.arange(count)
    dense[:, slots, :, slots] = stacked
    return dense.reshape(size * count, size * count)
