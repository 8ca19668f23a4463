"""
Odometer automorphisms alpha_n, the permutation unitaries behind them, and Rokhlin towers.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod
from typing import Optional, Tuple

import numpy as np

from ...abstract.base_report import BaseReport, CheckLine
from ...services.errors import GuardExceededError


@dataclass(frozen=True)
class LevelPermutation:
    """
    v_n on {1..l(n)}: identity on the first d(n) indices, then the cycle
    d(n)+j -> d(n)+j+1 on the last 2^(n-1), with the last index sent to d(n)+1.

    As a matrix, v_n = sum_i e_{i, v_n(i)}.
    """

    level: int
    fixed: int
    cycle_length: int

    @property
    def size(self) -> int:
        return self.fixed + self.cycle_length

    @property
    def order(self) -> int:
        return self.cycle_length

    def __call__(self, index: int) -> int:
        if not 1 <= index <= self.size:
            raise IndexError(index)
        if index <= self.fixed:
            return index
        position = index - self.fixed
        return self.fixed + position % self.cycle_length + 1

    def fixes_prefix(self, stop: int) -> bool:
        """
        Whether every index in 1..stop is fixed.
        """
        return stop <= self.fixed

    def as_array(self) -> np.ndarray:
        """
        0-based image array, for dense work on small levels.
        """
        cycle = np.roll(np.arange(self.fixed, self.size), -1)
        return np.concatenate([np.arange(self.fixed), cycle]).astype(np.int64)


@dataclass(frozen=True)
class PermutationUnitary:
    """
    u_n = v_1 x v_2 x ... x v_n acting on index tuples of M_{l(1)} x ... x M_{l(n)}.

    Kept factored; the flat permutation is only built below a size guard.
    """

    stage: int
    factors: Tuple[LevelPermutation, ...]

    @property
    def size(self) -> int:
        return prod(factor.size for factor in self.factors)

    @property
    def order(self) -> int:
        return lcm(*(factor.order for factor in self.factors)) if self.factors else 1

    def __call__(self, indices: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(factor(index) for factor, index in zip(self.factors, indices))

    def flat_permutation(self, guard: int) -> np.ndarray:
        """
        0-based image of every flat index, first tensor factor most significant.

        :raises GuardExceededError: If the matrix size is over guard.
        """
        if self.size > guard:
            raise GuardExceededError(
                f"u_{self.stage} has size {self.size}, over the dense guard {guard}."
            )
        flat = np.zeros(1, dtype=np.int64)
        for factor in self.factors:
            flat = (flat[:, None] * factor.size + factor.as_array()[None, :]).ravel()
        return flat


@dataclass(frozen=True)
class CentralProjection:
    """
    p(x, j) = 1 when j equals group_element, else 0, as a scalar times 1_{M_r(n)}.
    """

    stage: int
    group_element: int


@dataclass(frozen=True)
class OdometerAutomorphism:
    """
    alpha_n(f)(x, k) = u_n f(x, k + 1) u_n^*.
    """

    stage: int
    unitary: PermutationUnitary
    shift: int = 1

    @property
    def group_order(self) -> int:
        return 2**self.stage

    @property
    def order(self) -> int:
        """
        alpha_n^m(f)(x, k) = u^m f(x, k + m) u^-m, so the order is lcm(order(u), 2^n).
        """
        return lcm(self.unitary.order, self.group_order)

    def apply_to_indicator(self, projection: CentralProjection) -> CentralProjection:
        """
        alpha(p)(x, j) = u p(x, j + 1) u^* = p(x, j + 1): the indicator moves back by one.
        Scalar blocks are fixed by the conjugation.
        """
        return CentralProjection(
            stage=projection.stage,
            group_element=(projection.group_element - self.shift) % self.group_order,
        )


@dataclass(frozen=True)
class RokhlinTower:
    """
    Indicators of the group coordinate, listed along the orbit of alpha.
    """

    stage: int
    projections: Tuple[CentralProjection, ...]

    @property
    def length(self) -> int:
        return len(self.projections)


@dataclass(frozen=True)
class SlotRun:
    """
    length consecutive slots reading key at running index start, start+1, ...

    Single slots have length 1; only coordinate-projection runs are longer.
    """

    key: Tuple
    start: int
    length: int = 1


@dataclass(frozen=True)
class IntertwineReport(BaseReport):
    """
    Slot-by-slot comparison of alpha_{n+1} o Gamma and Gamma o alpha_n.
    """

    stage: int
    slot_count: int
    lines: Tuple[CheckLine, ...]
    first_difference: Optional[int] = None


@dataclass(frozen=True)
class TowerReport(BaseReport):
    """
    Exact verification of a Rokhlin tower; epsilon_achieved is always 0 when it passes.
    """

    stage: int
    length: int
    epsilon: Fraction
    epsilon_achieved: Fraction
    lines: Tuple[CheckLine, ...]
