"""Closed-form decision rules for the strong and weak Lefschetz properties.

Rule identifiers name the result that fired, e.g. ``SLP:T3.8(2)`` or
``WLP:T4.7→P4.9``; they are part of the stable output format.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import MonomialCI, is_basis_element, normalize
from .errors import InvalidLambda
from .numtheory import (
    exists_prime_power_in_open_interval,
    multinomial_divisible_by_p,
    split_mod_p,
)


class Status(str, Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Certificate:
    """``ell^power * witness = 0`` for every linear form ell, with the witness
    a nonzero monomial of degree at most ``(t - power) / 2``.

    ``lam`` holds 1-based positions in the descending degree tuple.
    """

    lam: tuple[int, ...]
    m: int
    witness: tuple[int, ...]
    power: int

    def to_dict(self) -> dict:
        return {
            "lambda": list(self.lam),
            "m": self.m,
            "power": self.power,
            "witness": list(self.witness),
        }


@dataclass(frozen=True)
class OracleFailure:
    """First failing power and degree found by the rank oracle."""

    power: int
    degree: int

    def to_dict(self) -> dict:
        return {"power": self.power, "degree": self.degree}


@dataclass(frozen=True)
class Verdict:
    status: Status
    rule: str = "none"
    certificate: Certificate | OracleFailure | None = None

    def __post_init__(self):
        if self.status is Status.UNKNOWN and self.rule != "none":
            raise ValueError("Unknown verdicts carry no rule")

    @property
    def holds(self) -> bool | None:
        if self.status is Status.UNKNOWN:
            return None
        return self.status is Status.HOLDS


UNKNOWN = Verdict(Status.UNKNOWN)


# --- strong Lefschetz property -------------------------------------------


def zero_divisor_power(ci: MonomialCI, lam: Sequence[int]) -> tuple[int, tuple[int, ...], bool]:
    """``(m, witness, trivial)`` with ``ell^(m p) * witness = 0`` for every ell.

    ``m = sum(N_i) - |lam| + 1`` and the witness is ``prod_{i in lam} x_i^r_i``.
    ``trivial`` is set when the witness is already zero in the algebra
    (some i in lam has ``d_i = r_i``).
    """
    idx = tuple(lam)
    if len(set(idx)) != len(idx) or any(not 1 <= i <= ci.n for i in idx):
        raise InvalidLambda(f"{list(idx)} is not a set of positions in 1..{ci.n}")
    splits = [split_mod_p(d, ci.p) for d in ci.degrees]
    m = sum(s.N for s in splits) - len(idx) + 1
    witness = [0] * ci.n
    for i in idx:
        witness[i - 1] = splits[i - 1].r
    witness = tuple(witness)
    return m, witness, not is_basis_element(ci, witness)


def slp_failure_certificate(ci: MonomialCI) -> Certificate | None:
    """Certificate with the smallest power ``m p``.

    Index sets are tried from largest to smallest (a larger set lowers m),
    lexicographically within one size.
    """
    p, t, n = ci.p, ci.t, ci.n
    splits = [split_mod_p(d, p) for d in ci.degrees]
    eligible = [i + 1 for i, s in enumerate(splits) if s.N > 0]
    total_n = sum(s.N for s in splits)
    for size in range(len(eligible), -1, -1):
        for lam in itertools.combinations(eligible, size):
            m = total_n - size + 1
            r_in = sum(splits[i - 1].r for i in lam)
            r_out = sum(s.r for k, s in enumerate(splits) if k + 1 not in lam)
            ok = 2 * r_in <= t - m * p
            assert ok == (r_in <= r_out - n + (size - 1) * p)
            if ok:
                _, witness, _ = zero_divisor_power(ci, lam)
                return Certificate(lam, m, witness, m * p)
    return None


def _slp_sufficient(ci: MonomialCI) -> str | None:
    p, t, d = ci.p, ci.t, ci.degrees
    if t < p:
        return "SLP:T3.8(1)"
    rest = sum(x - 1 for x in d[1:])
    r1 = split_mod_p(d[0], p).r
    if d[0] > p and all(x <= p for x in d[1:]) and rest <= min(r1, p - r1):
        return "SLP:T3.8(2)"
    return None


def _slp_necessary_clause(ci: MonomialCI) -> int | None:
    """First clause of the SLP obstruction list that applies."""
    p, t, d = ci.p, ci.t, ci.degrees
    rest = sum(x - 1 for x in d[1:])
    r1 = split_mod_p(d[0], p).r
    if p == 2:
        return 1
    if d[0] > p and d[1] <= p and rest > r1:
        return 2
    if d[0] > p and d[1] <= p and r1 + rest > p:
        return 3
    if d[0] <= p and t >= p:
        return 4
    if d[1] > p:
        return 5
    return None


def classify_slp(ci: MonomialCI) -> Verdict:
    """SLP for n >= 3 by the complete classification; n = 2 is left Unknown."""
    if ci.n == 1:
        return Verdict(Status.HOLDS, "SLP:n=1")
    if ci.n == 2:
        return UNKNOWN
    sufficient = _slp_sufficient(ci)
    clause = _slp_necessary_clause(ci)
    if (sufficient is None) == (clause is None):
        raise AssertionError(f"SLP rules are inconsistent on {ci}")
    if sufficient:
        return Verdict(Status.HOLDS, sufficient)
    return Verdict(Status.FAILS, f"SLP:P3.4({clause})", slp_failure_certificate(ci))


# --- weak Lefschetz property, uniform degrees ----------------------------


def _uniform_n3_fails(d: int, p: int) -> bool:
    if d % 2 == 0:
        hi_num, lo_num = 3 * d, 3 * d
    else:
        hi_num, lo_num = 3 * d - 1, 3 * d + 1
    k = 0
    # the interval only contains powers p^e >= p while hi > p
    while hi_num > p * (6 * k + 2):
        hi = Fraction(hi_num, 6 * k + 2)
        lo = Fraction(lo_num, 6 * k + 4)
        if exists_prime_power_in_open_interval(p, lo, hi) is not None:
            return True
        k += 1
    return False


def _uniform_n4_holds(d: int, p: int) -> bool:
    q = 1
    while q <= 2 * d:
        for k in range(1, (p - 1) // 2 + 1):
            for twice_r in (q - 1, q + 1):
                if twice_r % 2 == 0 and d == k * q + twice_r // 2:
                    return True
        q *= p
    return False


def classify_wlp_uniform(n: int, d: int, p: int) -> Verdict:
    """WLP of k[x_1..x_n]/(x_1^d, ..., x_n^d) in characteristic p."""
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    if n <= 2:
        return Verdict(Status.HOLDS, "WLP:Table1.n2")
    if n == 3:
        fails = _uniform_n3_fails(d, p)
        return Verdict(Status.FAILS if fails else Status.HOLDS, "WLP:Table1.n3")
    if n == 4:
        holds = _uniform_n4_holds(d, p)
        return Verdict(Status.HOLDS if holds else Status.FAILS, "WLP:Table1.n4")
    holds = 2 * p > n * (d - 1) + 1
    return Verdict(Status.HOLDS if holds else Status.FAILS, "WLP:Table1.n5+")


# --- weak Lefschetz property, mixed degrees ------------------------------


def wlp_limit_applies(degrees: Sequence[int], p: int) -> bool:
    """``max(p, d_1, ..., d_n) > (t + 1) / 2``."""
    t = sum(d - 1 for d in degrees)
    return 2 * max(p, *degrees) > t + 1


def multinomial_form(degrees: Sequence[int], p: int) -> str | None:
    """Which multinomial shape the tuple has, if any.

    Returns ``"A"`` when the largest degree D equals the sum of ``d_i - 1``
    over the others, ``"B"`` when it is one less; None otherwise.
    """
    d = sorted(degrees, reverse=True)
    rest = sum(x - 1 for x in d[1:])
    if d[0] == rest:
        return "A"
    if d[0] == rest - 1:
        return "B"
    return None


def multinomial_nondivisible(degrees: Sequence[int], p: int) -> bool:
    d = sorted(degrees, reverse=True)
    parts = [x - 1 for x in d[1:]]
    return not multinomial_divisible_by_p(sum(parts), parts, p)


def family_reductions(degrees: Sequence[int], p: int):
    """Smaller tuples reachable by lowering the two largest degrees by ``b p^a``.

    Yields ``(reduced_degrees, a, b, iff)``: the remaining degrees must all be
    at most ``p^a``; reduced degrees may reach 1 (the variable disappears).
    ``iff`` says whether the reduced tuple meets the extra hypothesis under
    which its WLP is equivalent to that of the original tuple.
    """
    d = sorted(degrees, reverse=True)
    if len(d) < 3:
        return
    x, y, others = d[0], d[1], d[2:]
    top_other = max(others)
    a, q = 1, p
    while q < y:
        if top_other <= q:
            b = 1
            while y - b * q >= 1:
                x2, y2 = x - b * q, y - b * q
                iff = x2 + y2 >= sum(o - 1 for o in others)
                yield tuple(sorted(others + [x2, y2], reverse=True)), a, b, iff
                b += 1
        a += 1
        q *= p


def _strip(rule: str) -> str:
    return rule.split(":", 1)[1] if ":" in rule else rule


@lru_cache(maxsize=1 << 16)
def _classify_wlp_rules(degrees: tuple[int, ...], p: int) -> Verdict:
    ci = normalize(degrees, p)
    d, n = ci.degrees, ci.n
    if n <= 2:
        return Verdict(Status.HOLDS, "WLP:R4.4")
    if len(set(d)) == 1:
        return classify_wlp_uniform(n, d[0], p)
    if wlp_limit_applies(d, p):
        return Verdict(Status.HOLDS, "WLP:T4.5")
    form = multinomial_form(d, p)
    if form == "A":
        if multinomial_nondivisible(d, p):
            return Verdict(Status.HOLDS, "WLP:P4.9")
        return Verdict(Status.FAILS, "WLP:P4.9-div")
    if form == "B" and _shape_b_good(d, p):
        return Verdict(Status.HOLDS, "WLP:P4.9-B")
    for reduced, _a, _b, iff in family_reductions(d, p):
        sub = _classify_wlp_rules(tuple(x for x in reduced if x > 1), p)
        if sub.status is Status.FAILS:
            return Verdict(Status.FAILS, f"WLP:T4.7→{_strip(sub.rule)}")
        if sub.status is Status.HOLDS and iff:
            return Verdict(Status.HOLDS, f"WLP:T4.7→{_strip(sub.rule)}")
    if 2 in d:
        rest = list(d)
        rest.remove(2)
        if sum(x - 1 for x in rest) % 2 == 1:
            sub = _classify_wlp_rules(tuple(rest), p)
            if sub.status is Status.HOLDS:
                return Verdict(Status.HOLDS, "WLP:P4.12")
    return UNKNOWN


def _shape_b_good(degrees: Sequence[int], p: int) -> bool:
    d = sorted(degrees, reverse=True)
    parts = [x - 1 for x in d[1:]]
    return not multinomial_divisible_by_p(d[0] + 1, parts, p)


def classify_wlp(ci: MonomialCI, use_oracle_fallback: bool = False) -> Verdict:
    """Apply the WLP rules in fixed order; optionally fall back to the rank oracle."""
    verdict = _classify_wlp_rules(ci.degrees, ci.p)
    if verdict.status is Status.UNKNOWN and use_oracle_fallback:
        from .oracle import has_maximal_rank_power

        report = has_maximal_rank_power(ci, 1)
        if report.holds:
            return Verdict(Status.HOLDS, "oracle")
        return Verdict(Status.FAILS, "oracle", OracleFailure(1, report.first_failure))
    return verdict
