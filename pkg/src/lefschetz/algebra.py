"""Monomial complete intersections k[x_1..x_n]/(x_1^d_1, ..., x_n^d_n).

An algebra is described by its generator degrees (sorted descending, each at
least 2) and the prime characteristic of the ground field. Graded pieces are
spanned by the monomials x^a with a_i < d_i; within a degree they are listed in
graded reverse-lexicographic order, largest first, so for three variables in
degree 2 the order is x1^2, x1*x2, x2^2, x1*x3, x2*x3, x3^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import prod
from typing import Iterator, Sequence

from .errors import (
    DegreeOutOfRange,
    EmptyAlgebra,
    HilbertOverflow,
    NonPrimeCharacteristic,
    NotABasisElement,
)

WORD_MAX = 2**63 - 1


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class MonomialCI:
    """Generator degrees d_1 >= ... >= d_n >= 2 over a field of characteristic p.

    ``dropped`` records how many degree-1 generators :func:`normalize` removed;
    it does not take part in equality.
    """

    degrees: tuple[int, ...]
    p: int
    dropped: int = field(default=0, compare=False)

    def __post_init__(self):
        degrees = tuple(int(d) for d in self.degrees)
        object.__setattr__(self, "degrees", degrees)
        if not degrees:
            raise EmptyAlgebra("no generator of degree >= 2")
        if any(d < 2 for d in degrees):
            raise ValueError(f"degrees must be >= 2, got {degrees}")
        if any(a < b for a, b in zip(degrees, degrees[1:])):
            raise ValueError(f"degrees must be sorted descending, got {degrees}")
        if not is_prime(self.p):
            raise NonPrimeCharacteristic(f"{self.p} is not prime")

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def t(self) -> int:
        return socle_degree(self)

    @property
    def dimension(self) -> int:
        return prod(self.degrees)

    def __str__(self) -> str:
        return f"({','.join(map(str, self.degrees))}; p={self.p})"


def normalize(raw_degrees: Sequence[int], p: int) -> MonomialCI:
    """Drop degree-1 generators and sort the rest descending.

    >>> normalize([3, 9, 12], 5).degrees
    (12, 9, 3)
    """
    raw = [int(d) for d in raw_degrees]
    if not raw:
        raise ValueError("at least one degree is required")
    if any(d < 1 for d in raw):
        raise ValueError(f"degrees must be positive, got {raw}")
    if p < 2 or not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    kept = sorted((d for d in raw if d > 1), reverse=True)
    if not kept:
        raise EmptyAlgebra(f"every generator in {raw} has degree 1")
    return MonomialCI(tuple(kept), p, dropped=len(raw) - len(kept))


def socle_degree(ci: MonomialCI) -> int:
    return sum(d - 1 for d in ci.degrees)


@dataclass(frozen=True)
class HilbertFunction:
    values: tuple[int, ...]

    @property
    def socle_degree(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    @property
    def peak(self) -> int:
        return max(self.values)


def _truncated_geometric_product(degrees: Sequence[int]) -> list[int]:
    # coefficients of prod (1 + t + ... + t^(d-1)), one sliding-window pass per factor
    coeffs = [1]
    for d in degrees:
        out = [0] * (len(coeffs) + d - 1)
        window = 0
        for i in range(len(out)):
            if i < len(coeffs):
                window += coeffs[i]
            if i - d >= 0:
                window -= coeffs[i - d]
            out[i] = window
        coeffs = out
    return coeffs


@lru_cache(maxsize=4096)
def _hilbert_values(degrees: tuple[int, ...]) -> tuple[int, ...]:
    values = _truncated_geometric_product(degrees)
    for i, v in enumerate(values):
        if v > WORD_MAX:
            raise HilbertOverflow(f"H({i}) = {v} does not fit a 64-bit word")
    return tuple(values)


def hilbert_function(ci: MonomialCI) -> HilbertFunction:
    """Graded dimensions H(0..t); they do not depend on the characteristic."""
    return HilbertFunction(_hilbert_values(ci.degrees))


class _Ranker:
    """Counting tables for ranking/unranking basis monomials of one algebra.

    ``prefix[j][s]`` is the number of exponent vectors on the first ``j``
    variables with total degree ``s``.
    """

    def __init__(self, degrees: tuple[int, ...]):
        self.degrees = degrees
        self.prefix = [
            _truncated_geometric_product(degrees[:j]) for j in range(len(degrees) + 1)
        ]

    def count(self, j: int, s: int) -> int:
        row = self.prefix[j]
        return row[s] if 0 <= s < len(row) else 0

    def rank(self, alpha: Sequence[int]) -> int:
        rem = sum(alpha)
        pos = 0
        for j in range(len(alpha) - 1, 0, -1):
            a = alpha[j]
            for v in range(a):
                pos += self.count(j, rem - v)
            rem -= a
        return pos

    def iter_degree(self, i: int) -> Iterator[tuple[int, ...]]:
        n = len(self.degrees)
        alpha = [0] * n

        def rec(j: int, rem: int):
            if j == 0:
                if rem < self.degrees[0]:
                    alpha[0] = rem
                    yield tuple(alpha)
                return
            for v in range(min(self.degrees[j] - 1, rem) + 1):
                if self.count(j, rem - v) == 0:
                    continue
                alpha[j] = v
                yield from rec(j - 1, rem - v)
            alpha[j] = 0

        yield from rec(n - 1, i)


@lru_cache(maxsize=1024)
def _ranker(degrees: tuple[int, ...]) -> _Ranker:
    return _Ranker(degrees)


def iter_basis(ci: MonomialCI, i: int) -> Iterator[tuple[int, ...]]:
    """Stream the degree-``i`` basis in the canonical order."""
    if not 0 <= i <= ci.t:
        raise DegreeOutOfRange(f"degree {i} outside [0, {ci.t}]")
    return _ranker(ci.degrees).iter_degree(i)


def monomial_basis(ci: MonomialCI, i: int) -> list[tuple[int, ...]]:
    return list(iter_basis(ci, i))


def is_basis_element(ci: MonomialCI, alpha: Sequence[int]) -> bool:
    return len(alpha) == ci.n and all(0 <= a < d for a, d in zip(alpha, ci.degrees))


def basis_index(ci: MonomialCI, alpha: Sequence[int]) -> int:
    """Position of ``alpha`` in ``monomial_basis(ci, sum(alpha))``."""
    alpha = tuple(alpha)
    if not is_basis_element(ci, alpha):
        raise NotABasisElement(f"{alpha} is not a basis monomial of {ci}")
    return _ranker(ci.degrees).rank(alpha)
