"""Base-p digit arithmetic: remainder splits, multinomials mod p, prime powers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import PartsMismatch


@dataclass(frozen=True)
class PAdicSplit:
    """``d = N*p + r`` with ``0 < r <= p``.

    The remainder is never 0: a multiple of p splits as ``(d/p - 1, p)``.
    """

    N: int
    r: int


def split_mod_p(d: int, p: int) -> PAdicSplit:
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    N, r = divmod(d, p)
    if r == 0:
        N, r = N - 1, p
    return PAdicSplit(N, r)


def digits(x: int, p: int) -> list[int]:
    """Base-p digits of ``x``, least significant first."""
    out = []
    while x:
        x, r = divmod(x, p)
        out.append(r)
    return out


@lru_cache(maxsize=None)
def _factorials_mod(p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    fact = [1] * p
    for i in range(1, p):
        fact[i] = fact[i - 1] * i % p
    inv = tuple(pow(f, p - 2, p) for f in fact)
    return tuple(fact), inv


def _check_parts(top: int, parts: Sequence[int]) -> None:
    if top < 0 or any(q < 0 for q in parts):
        raise ValueError("multinomial arguments must be non-negative")
    if sum(parts) != top:
        raise PartsMismatch(f"parts {list(parts)} do not sum to {top}")


def multinomial_mod_p(top: int, parts: Sequence[int], p: int) -> int:
    """Multinomial coefficient ``top! / prod(part!)`` reduced mod p.

    Uses the digit-wise generalisation of Lucas' theorem: the residue is the
    product of the digit multinomials, and vanishes as soon as the digits of
    the parts overflow the corresponding digit of ``top``.
    """
    _check_parts(top, parts)
    return _multinomial_mod_p(top, tuple(parts), p)


@lru_cache(maxsize=1 << 16)
def _multinomial_mod_p(top: int, parts: tuple[int, ...], p: int) -> int:
    fact, inv = _factorials_mod(p)
    rest = [q for q in parts if q]
    result = 1
    while top:
        top, t_digit = divmod(top, p)
        digit_sum = 0
        term = fact[t_digit]
        for k, q in enumerate(rest):
            rest[k], q_digit = divmod(q, p)
            digit_sum += q_digit
            term = term * inv[q_digit] % p
        if digit_sum != t_digit:
            return 0
        result = result * term % p
    return result


def carries(parts: Sequence[int], p: int) -> int:
    """Number of carries when adding ``parts`` in base p.

    By Kummer's theorem this is the p-adic valuation of the multinomial
    coefficient with these parts.
    """
    ds = [digits(q, p) for q in parts]
    width = max((len(x) for x in ds), default=0)
    carry = total = 0
    pos = 0
    while pos < width or carry:
        column = carry + sum(x[pos] for x in ds if pos < len(x))
        carry = column // p
        total += carry
        pos += 1
    return total


def multinomial_divisible_by_p(top: int, parts: Sequence[int], p: int) -> bool:
    _check_parts(top, parts)
    return carries(parts, p) > 0


def exists_prime_power_in_open_interval(
    p: int, lo: Fraction | int, hi: Fraction | int
) -> int | None:
    """Least ``e >= 1`` with ``lo < p**e < hi``, or None.

    Bounds are exact rationals; no floating point is involved.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if hi <= 0:
        return None
    e, q = 1, p
    while q < hi:
        if q > lo:
            return e
        e += 1
        q *= p
    return None
