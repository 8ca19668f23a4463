"""
Service for the density diagnostic.

Estimates how well the composed coordinate projections of the points x_m cover X_n.
The estimate is Monte-Carlo and never part of an exact verdict.
"""

from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import List, Optional

import numpy as np
from django.conf import settings

from ..construction.models.density_model import DensityReport, PointScheme
from ..construction.models.schedule_model import DerivedSequences
from .errors import GuardExceededError
from .logger_service import LoggerService

SAMPLE_CHUNK = 256
ENTRY_BUDGET = 2**21


class DensityService:
    """
    Service class for covering-radius estimates.
    """

    def __init__(self) -> None:
        self.logger_service: LoggerService = LoggerService(__name__)
        self.space_guard: int = settings.CONSTRUCTION["DENSITY_SPACE_GUARD"]
        self.point_guard: int = settings.CONSTRUCTION["DENSITY_POINT_GUARD"]

    def density_diagnostic(
        self,
        scheme: PointScheme,
        sequences: DerivedSequences,
        target_stage: int,
        cutoff: int,
        samples: int,
        seed: int,
        workers: Optional[int] = None,
    ) -> DensityReport:
        """
        Covering radius of the evaluation set in X_n for every cutoff n..cutoff.

        The evaluation set for a cutoff M is every s(n)-block of x_m for n < m <= M;
        these are the points P o ... o P(x_m). Distances on (S^2)^{s(n)} are the largest
        great-circle angle over the factors. An empty set reports pi.

        :param workers: Threads for the sample chunks; results do not depend on it.
        :raises GuardExceededError: If s(n) or the number of evaluation points is too large.
        """
        n = target_stage
        sequences.require(n)
        cutoff = max(cutoff, n)
        sequences.require(cutoff)
        spheres = sequences.s[n]
        if spheres > self.space_guard:
            raise GuardExceededError(
                f"s({n}) = {spheres} is over the density guard {self.space_guard}; "
                "pick a smaller target stage."
            )
        blocks_per_stage = [sequences.s[m] // spheres for m in range(n + 1, cutoff + 1)]
        total = sum(blocks_per_stage) * spheres
        if total > self.point_guard:
            self.logger_service.warning(f"Refusing density diagnostic with {total} points.")
            raise GuardExceededError(
                f"Cutoff {cutoff} needs {total} evaluation points, "
                f"over the guard {self.point_guard}."
            )

        children = np.random.SeedSequence(seed).spawn(-(-samples // SAMPLE_CHUNK))
        sizes = [
            min(SAMPLE_CHUNK, samples - index * SAMPLE_CHUNK) for index in range(len(children))
        ]
        batches = [
            _random_points(np.random.default_rng(child), size, spheres)
            for child, size in zip(children, sizes)
        ]

        distances = [np.full(size, np.pi) for size in sizes]
        estimates: List[float] = [float(np.pi) if samples else 0.0]
        counts: List[int] = [0]
        for m, count in zip(range(n + 1, cutoff + 1), blocks_per_stage):
            blocks = scheme.point(sequences, m, self.point_guard).reshape(count, spheres, 3)
            if workers and workers > 1:
                with ThreadPoolExecutor(max_workers=workers) as pool:
                    distances = list(
                        pool.map(partial(_nearest, blocks), batches, distances)
                    )
            else:
                distances = [
                    _nearest(blocks, batch, current) for batch, current in zip(batches, distances)
                ]
            estimates.append(float(max(d.max() for d in distances)) if samples else 0.0)
            counts.append(counts[-1] + count)
            self.logger_service.debug(
                f"Density at stage {n}, cutoff {m}: {estimates[-1]:.6f} rad from {counts[-1]} points."
            )

        return DensityReport(
            target_stage=n,
            cutoffs=tuple(range(n, cutoff + 1)),
            estimates=tuple(estimates),
            evaluation_points=tuple(counts),
            samples=samples,
            seed=seed,
        )


def _random_points(rng: np.random.Generator, count: int, spheres: int) -> np.ndarray:
    vectors = rng.normal(size=(count, spheres, 3))
    return vectors / np.linalg.norm(vectors, axis=2, keepdims=True)


def _nearest(blocks: np.ndarray, batch: np.ndarray, current: np.ndarray) -> np.ndarray:
    """
    Running minimum over blocks of the product distance to each sample.
    """
    nearest = current.copy()
    step = max(1, ENTRY_BUDGET // (batch.shape[0] * batch.shape[1]))
    for start in range(0, len(blocks), step):
        chunk = blocks[start : start + step]
        cosines = np.clip(np.einsum("skc,bkc->sbk", batch, chunk), -1.0, 1.0)
        distance = np.arccos(cosines).max(axis=2).min(axis=1)
        nearest = np.minimum(nearest, distance)
    return nearest
