"""
Elements of H*((S^2)^k) = Z[x_1..x_k]/(x_i^2) and the non-embedding certificate.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, Tuple


@dataclass(frozen=True)
class CohomologyElement:
    """
    A finite integer combination of square-free monomials.

    A monomial is a bit pattern of width k: bit i-1 set means x_i divides it, so
    x_i^2 = 0 is built into the representation. Zero coefficients are never stored.
    """

    k: int
    terms: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned = {mask: coeff for mask, coeff in self.terms.items() if coeff != 0}
        object.__setattr__(self, "terms", cleaned)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CohomologyElement):
            return NotImplemented
        return self.k == other.k and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.k, frozenset(self.terms.items())))

    @classmethod
    def one(cls, k: int) -> "CohomologyElement":
        return cls(k, {0: 1})

    @classmethod
    def generator(cls, k: int, index: int, coefficient: int = 1) -> "CohomologyElement":
        """
        coefficient * x_index, with index counted from 1.
        """
        return cls(k, {1 << (index - 1): coefficient})

    def coefficient(self, monomial: Tuple[int, ...]) -> int:
        """
        Coefficient of the monomial given as a tuple of generator indices.
        """
        mask = 0
        for index in monomial:
            mask |= 1 << (index - 1)
        return self.terms.get(mask, 0)

    def degree_part(self, degree: int) -> Dict[int, int]:
        """
        The monomials of one degree with their coefficients.
        """
        return {
            mask: coeff
            for mask, coeff in self.terms.items()
            if bin(mask).count("1") == degree
        }

    def monomials(self) -> Iterator[Tuple[Tuple[int, ...], int]]:
        """
        Yield (sorted generator indices, coefficient) in a stable order.
        """
        for mask in sorted(self.terms, key=lambda m: (bin(m).count("1"), m)):
            yield tuple(i + 1 for i in range(self.k) if mask >> i & 1), self.terms[mask]

    def __add__(self, other: "CohomologyElement") -> "CohomologyElement":
        if self.k != other.k:
            raise ValueError("Cannot add elements over different numbers of spheres.")
        terms = dict(self.terms)
        for mask, coeff in other.terms.items():
            terms[mask] = terms.get(mask, 0) + coeff
        return CohomologyElement(self.k, terms)

    def __mul__(self, other: "CohomologyElement") -> "CohomologyElement":
        """
        Product in the square-free ring: monomials sharing a generator vanish.

        For each left monomial only the submasks of its complement are visited.
        """
        if self.k != other.k:
            raise ValueError("Cannot multiply elements over different numbers of spheres.")
        full = (1 << self.k) - 1
        terms: Dict[int, int] = {}
        for left, left_coeff in self.terms.items():
            complement = full & ~left
            if len(other.terms) <= 1 << bin(complement).count("1"):
                for right, right_coeff in other.terms.items():
                    if left & right == 0:
                        key = left | right
                        terms[key] = terms.get(key, 0) + left_coeff * right_coeff
                continue
            sub = complement
            while True:
                right_coeff = other.terms.get(sub)
                if right_coeff is not None:
                    key = left | sub
                    terms[key] = terms.get(key, 0) + left_coeff * right_coeff
                if sub == 0:
                    break
                sub = (sub - 1) & complement
        return CohomologyElement(self.k, terms)


class EmbeddingVerdict(str, Enum):
    """
    Outcome of the non-embedding test.
    """

    EMBEDDABLE = "embeddable"
    OBSTRUCTED = "obstructed"


@dataclass(frozen=True)
class ObstructionCertificate:
    """
    Whether L^(x k) over (S^2)^k can sit inside a trivial bundle of rank r.

    When obstructed, a complement would have rank r - k (the budget) but its total
    Chern class is prod (1 - x_i), whose top term (-1)^k x_1...x_k lives in degree
    k > r - k.
    """

    k: int
    r: int
    verdict: EmbeddingVerdict
    witness_degree: int
    coefficient: int

    @property
    def obstructed(self) -> bool:
        return self.verdict is EmbeddingVerdict.OBSTRUCTED

    @property
    def complement_rank(self) -> int:
        return self.r - self.k

    def explanation(self) -> str:
        """
        One-line human-readable reason for the verdict.
        """
        if not self.obstructed:
            return f"rank {self.r} >= 2*{self.k}: no Chern obstruction"
        return (
            f"a complement would have rank {self.complement_rank} but c_{self.witness_degree}"
            f" = {self.coefficient:+d} x_1...x_k != 0"
        )
