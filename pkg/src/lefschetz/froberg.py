"""Truncated Hilbert series and the link between the WLP and Fröberg's series."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, NamedTuple, Sequence

from .algebra import MonomialCI
from .oracle import quotient_series


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients up to (excluding) the first one that is <= 0."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        if any(c < 1 for c in self.coefficients):
            raise ValueError("truncated series only stores positive coefficients")

    def as_list(self) -> list[int]:
        return list(self.coefficients)


def truncate_product(
    base: Sequence[int] | Callable[[int], int],
    form_degrees: Sequence[int],
    length: int | None = None,
) -> TruncatedSeries:
    """``[base(t) * prod(1 - t^d)]``, cut at the first non-positive coefficient.

    ``base`` is a finite coefficient list (zero beyond its end) or a function
    giving the i-th coefficient; for a function, ``length`` bounds the number
    of coefficients examined and defaults to ``sum(form_degrees) + 1``.
    """
    if callable(base):
        if length is None:
            length = sum(form_degrees) + 1
        coeffs = [base(i) for i in range(length)]
    else:
        coeffs = list(base)
        if length is not None:
            coeffs = (coeffs + [0] * length)[:length]
    for d in form_degrees:
        # multiply by (1 - t^d) in place, high degrees first
        for i in range(len(coeffs) - 1, d - 1, -1):
            coeffs[i] -= coeffs[i - d]
    out = []
    for c in coeffs:
        if c <= 0:
            break
        out.append(c)
    return TruncatedSeries(tuple(out))


def polynomial_ring_series(nvars: int) -> Callable[[int], int]:
    return lambda i: comb(i + nvars - 1, nvars - 1)


def froberg_series(nvars: int, form_degrees: Sequence[int]) -> TruncatedSeries:
    """``[prod(1 - t^d_i) / (1 - t)^nvars]``; independent of the characteristic."""
    if nvars < 1 or any(d < 1 for d in form_degrees):
        raise ValueError("need nvars >= 1 and positive degrees")
    if len(form_degrees) < nvars:
        raise ValueError("fewer forms than variables: the series does not terminate")
    return truncate_product(polynomial_ring_series(nvars), form_degrees)


class FrobergCheck(NamedTuple):
    equal: bool
    computed: TruncatedSeries
    conjectured: TruncatedSeries


def check_froberg_n_plus_1(ci: MonomialCI, extra_degree: int) -> FrobergCheck:
    """Compare ``A / (s^e)`` with the series conjectured for the n + 1 forms.

    They agree exactly when the algebra with generator degrees
    ``ci.degrees + (e,)`` has the WLP.
    """
    computed = TruncatedSeries(tuple(quotient_series(ci, extra_degree)))
    conjectured = froberg_series(ci.n, list(ci.degrees) + [extra_degree])
    return FrobergCheck(computed == conjectured, computed, conjectured)
