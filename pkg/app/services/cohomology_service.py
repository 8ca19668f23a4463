"""
Service for the Chern-class obstruction.

Expands total Chern classes of external sums of line bundles over (S^2)^k and decides
whether L^(x k) embeds in a trivial bundle of a given rank. The closed-form test and
the brute-force expansion are kept separate so each can check the other.
"""

from math import comb
from typing import Sequence

from django.conf import settings

from ..certificates.models.cohomology_model import (
    CohomologyElement,
    EmbeddingVerdict,
    ObstructionCertificate,
)
from .errors import GuardExceededError
from .logger_service import LoggerService


class CohomologyService:
    """
    Service class for cohomology computations over products of 2-spheres.
    """

    def __init__(self) -> None:
        self.logger_service: LoggerService = LoggerService(__name__)
        self.brute_force_cap: int = settings.CONSTRUCTION["BRUTE_FORCE_CAP"]

    def total_chern_external_sum(
        self, k: int, signs: Sequence[int]
    ) -> CohomologyElement:
        """
        Expand prod_i (1 + sign_i x_i).

        :param k: Number of sphere factors.
        :param signs: One of +1/-1 per factor.
        :return: The expanded total Chern class.
        :raises GuardExceededError: If k is over the brute-force cap.
        """
        if k < 0:
            raise ValueError(f"Number of sphere factors must be non-negative, got {k}.")
        if len(signs) != k:
            raise ValueError(f"Expected {k} signs, got {len(signs)}.")
        if any(sign not in (1, -1) for sign in signs):
            raise ValueError("Signs must be +1 or -1.")
        if k > self.brute_force_cap:
            self.logger_service.warning(f"Refusing brute-force expansion for k = {k}.")
            raise GuardExceededError(
                f"k = {k} exceeds the brute-force cap {self.brute_force_cap} "
                f"(2^{k} monomials); use chern_inverse_coeff for closed-form coefficients."
            )

        total = CohomologyElement.one(k)
        for index, sign in enumerate(signs, start=1):
            total = total * (CohomologyElement.one(k) + CohomologyElement.generator(k, index, sign))
        return total

    def chern_inverse_coeff(self, k: int, j: int) -> int:
        """
        Degree-j part of prod_i (1 - x_i), summed over monomials: (-1)^j C(k, j).

        Each single monomial of degree j carries (-1)^j. Degrees past k have no
        square-free monomial and give 0.
        """
        if j < 0 or k < 0:
            raise ValueError("Degree and number of factors must be non-negative.")
        if j > k:
            self.logger_service.debug(f"Degree {j} exceeds k = {k}; coefficient is 0.")
            return 0
        return (-1) ** (j % 2) * comb(k, j)

    def embeds_in_trivial(self, k: int, r: int) -> ObstructionCertificate:
        """
        Decide whether L^(x k) embeds in the trivial rank-r bundle over (S^2)^k.

        Obstructed exactly when r < 2k: a complement E with L^(x k) + E trivial has
        c(E) = prod (1 - x_i), whose degree-k term is nonzero, while a rank r - k
        bundle has no Chern classes above degree r - k.
        """
        if k < 1:
            raise ValueError(f"Need at least one sphere factor, got k = {k}.")
        if r < 0:
            raise ValueError(f"Rank must be non-negative, got {r}.")
        if r < 2 * k:
            return ObstructionCertificate(
                k=k,
                r=r,
                verdict=EmbeddingVerdict.OBSTRUCTED,
                witness_degree=k,
                coefficient=-1 if k % 2 else 1,
            )
        return ObstructionCertificate(
            k=k, r=r, verdict=EmbeddingVerdict.EMBEDDABLE, witness_degree=0, coefficient=0
        )

    def embeds_by_expansion(self, k: int, r: int) -> EmbeddingVerdict:
        """
        Same decision as embeds_in_trivial, read off the expanded inverse class.

        Obstructed if prod (1 - x_i) has a nonzero term above the complement's rank.
        """
        inverse = self.total_chern_external_sum(k, [-1] * k)
        budget = r - k
        for degree in range(max(budget + 1, 0), k + 1):
            if inverse.degree_part(degree):
                return EmbeddingVerdict.OBSTRUCTED
        return EmbeddingVerdict.EMBEDDABLE
