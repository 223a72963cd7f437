"""Brute-force decisions by exact rank computation over F_p.

Every map here is multiplication by a power of s = x_1 + ... + x_n written in
the monomial basis. Because the algebras are Gorenstein, multiplication by a
form of degree m has maximal rank everywhere as soon as it is injective in
every degree i <= (t - m)/2, so only those degrees are checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .algebra import (
    MonomialCI,
    _ranker,
    hilbert_function,
    is_basis_element,
    iter_basis,
)
from .errors import DegreeOutOfRange, DimensionCap, NotABasisElement
from .linalg import SparseMatrixModP, rank_mod_p
from .numtheory import multinomial_mod_p

DIMENSION_CAP = 500_000


def _check_cap(ci: MonomialCI, degrees: Sequence[int], cap: int) -> None:
    hf = hilbert_function(ci)
    for i in degrees:
        if hf[i] > cap:
            raise DimensionCap(i, hf[i], cap)


def _bounded_compositions(total: int, bounds: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All ``beta`` with ``sum(beta) == total`` and ``0 <= beta[j] <= bounds[j]``."""
    n = len(bounds)
    suffix = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        suffix[j] = suffix[j + 1] + bounds[j]
    beta = [0] * n

    def rec(j: int, rem: int):
        if j == n - 1:
            if rem <= bounds[j]:
                beta[j] = rem
                yield tuple(beta)
            return
        lo = max(0, rem - suffix[j + 1])
        for v in range(lo, min(bounds[j], rem) + 1):
            beta[j] = v
            yield from rec(j + 1, rem - v)

    if total <= suffix[0]:
        yield from rec(0, total)


def multiplication_matrix(
    ci: MonomialCI, m: int, i: int, cap: int = DIMENSION_CAP
) -> SparseMatrixModP:
    """Matrix of ``f -> s^m f`` from degree ``i`` to degree ``i + m``.

    Rows follow the basis of degree ``i + m``, columns the basis of degree ``i``.
    The entry at (gamma, alpha) is the multinomial ``m; gamma - alpha`` mod p.
    ``m = 0`` gives the identity.
    """
    if m < 0 or i < 0 or i + m > ci.t:
        raise DegreeOutOfRange(f"map A_{i} -> A_{i + m} outside [0, {ci.t}]")
    _check_cap(ci, (i, i + m), cap)
    hf = hilbert_function(ci)
    ranker = _ranker(ci.degrees)
    p = ci.p
    columns = []
    for alpha in iter_basis(ci, i):
        bounds = [d - 1 - a for d, a in zip(ci.degrees, alpha)]
        col = []
        for beta in _bounded_compositions(m, bounds):
            c = multinomial_mod_p(m, beta, p)
            if c:
                gamma = tuple(a + b for a, b in zip(alpha, beta))
                col.append((ranker.rank(gamma), c))
        col.sort()
        columns.append(tuple(col))
    return SparseMatrixModP(hf[i + m], hf[i], p, tuple(columns))


@dataclass(frozen=True)
class DegreeCheck:
    degree: int
    dim_source: int
    dim_target: int
    rank: int
    required: int

    @property
    def ok(self) -> bool:
        return self.rank == self.required


@dataclass(frozen=True)
class RankReport:
    """Per-degree ranks of multiplication by ``s^m``."""

    m: int
    checks: tuple[DegreeCheck, ...]
    first_failure: int | None
    holds: bool
    fast: bool = False

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "holds": self.holds,
            "first_failure": self.first_failure,
            "checks": [
                {
                    "degree": c.degree,
                    "dim_source": c.dim_source,
                    "dim_target": c.dim_target,
                    "rank": c.rank,
                    "required": c.required,
                }
                for c in self.checks
            ],
        }


def _check_degree(ci: MonomialCI, m: int, i: int, cap: int) -> DegreeCheck:
    hf = hilbert_function(ci)
    mat = multiplication_matrix(ci, m, i, cap)
    return DegreeCheck(i, hf[i], hf[i + m], rank_mod_p(mat), min(hf[i], hf[i + m]))


def has_maximal_rank_power(
    ci: MonomialCI, m: int, *, fast: bool = False, cap: int = DIMENSION_CAP
) -> RankReport:
    """Decide whether ``s^m`` has maximal rank in every degree.

    Checks injectivity for ``0 <= i <= (t - m) // 2``. With ``fast=True`` only
    the top degree of that range is checked: in a Gorenstein algebra a kernel
    element in degree i - 1 times any variable lands in the kernel in degree i,
    so injectivity propagates downwards.
    """
    if m < 1:
        raise ValueError("m must be positive")
    t = ci.t
    if m > t:
        return RankReport(m, (), None, True, fast)
    top = (t - m) // 2
    _check_cap(ci, (top, top + m), cap)  # largest pieces; fail before any work
    degrees = [top] if fast else range(top + 1)
    checks = tuple(_check_degree(ci, m, i, cap) for i in degrees)
    failing = [c.degree for c in checks if not c.ok]
    first = failing[0] if failing else None
    return RankReport(m, checks, first, first is None, fast)


def max_rank_all_degrees(ci: MonomialCI, m: int, cap: int = DIMENSION_CAP) -> bool:
    """Maximal rank of ``s^m`` checked in every degree, without the duality shortcut."""
    for i in range(0, ci.t - m + 1):
        c = _check_degree(ci, m, i, cap)
        if not c.ok:
            return False
    return True


def verify_wlp(ci: MonomialCI, *, fast: bool = False, cap: int = DIMENSION_CAP) -> bool:
    """WLP over any field of characteristic p; s is a Lefschetz element iff one exists."""
    return has_maximal_rank_power(ci, 1, fast=fast, cap=cap).holds


@dataclass(frozen=True)
class SlpCheck:
    """Outcome of scanning ``s^m`` for ``m = 1..t``.

    For two or fewer variables the answer only concerns s itself
    (``s_only`` is set), not the algebra's intrinsic SLP.
    """

    holds: bool
    failing_power: int | None
    s_only: bool
    reports: tuple[RankReport, ...] = field(default=())

    def __iter__(self):
        return iter((self.holds, self.failing_power))


def verify_slp(
    ci: MonomialCI, *, full_report: bool = False, fast: bool = False, cap: int = DIMENSION_CAP
) -> SlpCheck:
    reports = []
    failing = None
    for m in range(1, ci.t + 1):
        rep = has_maximal_rank_power(ci, m, fast=fast, cap=cap)
        if full_report:
            reports.append(rep)
        if not rep.holds:
            failing = m
            break
    return SlpCheck(failing is None, failing, ci.n <= 2, tuple(reports))


def quotient_series(ci: MonomialCI, e: int, cap: int = DIMENSION_CAP) -> list[int]:
    """Hilbert function of ``A / (s^e)``, trailing zeros removed."""
    if e < 1:
        raise ValueError("e must be positive")
    hf = hilbert_function(ci)
    out = []
    for i in range(ci.t + 1):
        if i < e:
            out.append(hf[i])
        else:
            out.append(hf[i] - rank_mod_p(multiplication_matrix(ci, e, i - e, cap)))
    while out and out[-1] == 0:
        out.pop()
    return out


def witness_is_zero(
    ci: MonomialCI, coeffs: Sequence[int], m: int, alpha: Sequence[int]
) -> bool:
    """True iff ``(c_1 x_1 + ... + c_n x_n)^m * x^alpha`` vanishes in A."""
    alpha = tuple(alpha)
    if not is_basis_element(ci, alpha):
        raise NotABasisElement(f"{alpha} is not a basis monomial of {ci}")
    p = ci.p
    if len(coeffs) != ci.n or any(c % p == 0 for c in coeffs):
        raise ValueError("need n coefficients, all nonzero mod p")
    bounds = [d - 1 - a for d, a in zip(ci.degrees, alpha)]
    for beta in _bounded_compositions(m, bounds):
        c = multinomial_mod_p(m, beta, p)
        if not c:
            continue
        for cj, b in zip(coeffs, beta):
            c = c * pow(cj, b, p) % p
        if c:
            return False
    return True
