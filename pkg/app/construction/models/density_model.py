"""
Points x_m for the point evaluations and the covering-radius report built on them.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ...services.errors import GuardExceededError
from .schedule_model import DerivedSequences

# plastic number, the 2-dimensional analogue of the golden ratio
PLASTIC_NUMBER = 1.32471795724474602596


@dataclass(frozen=True)
class PointScheme:
    """
    R2 low-discrepancy sequence on the unit square, lifted to S^2 by the
    area-preserving map z = 1 - 2u, phi = 2 pi v.

    x_m takes the s(m) consecutive points starting after the s(0) + ... + s(m-1)
    points used by the earlier stages, so different stages never share points.
    """

    seed: int = 0

    @property
    def alpha(self) -> np.ndarray:
        return np.array([1 / PLASTIC_NUMBER, 1 / PLASTIC_NUMBER**2])

    @property
    def offset(self) -> np.ndarray:
        return np.random.default_rng(self.seed).random(2)

    def stream(self, start: int, count: int) -> np.ndarray:
        """
        Points start..start+count-1 of the sequence as a (count, 3) array of unit vectors.
        """
        indices = np.arange(count, dtype=np.float64) + float(start + 1)
        square = (self.offset[None, :] + indices[:, None] * self.alpha[None, :]) % 1.0
        z = 1.0 - 2.0 * square[:, 0]
        phi = 2.0 * np.pi * square[:, 1]
        radius = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
        vectors = np.stack([radius * np.cos(phi), radius * np.sin(phi), z], axis=1)
        return vectors / np.linalg.norm(vectors, axis=1, keepdims=True)

    def start_of(self, sequences: DerivedSequences, m: int) -> int:
        return sum(sequences.s[:m])

    def point(self, sequences: DerivedSequences, m: int, guard: int = 2_000_000) -> np.ndarray:
        """
        x_m in (S^2)^{s(m)} as an (s(m), 3) array.

        :raises GuardExceededError: If s(m) is over guard.
        """
        sequences.require(m)
        if sequences.s[m] > guard:
            raise GuardExceededError(
                f"x_{m} has {sequences.s[m]} sphere coordinates, over the guard {guard}."
            )
        return self.stream(self.start_of(sequences, m), sequences.s[m])


@dataclass(frozen=True)
class DensityReport:
    """
    Estimated covering radius of the evaluation set in X_n, one value per cutoff.

    Diagnostic only; it never decides a run's exit status.
    """

    target_stage: int
    cutoffs: Tuple[int, ...]
    estimates: Tuple[float, ...]
    evaluation_points: Tuple[int, ...]
    samples: int
    seed: int

    @property
    def final_estimate(self) -> float:
        return self.estimates[-1]

    @property
    def monotone(self) -> bool:
        return all(b <= a for a, b in zip(self.estimates, self.estimates[1:]))
