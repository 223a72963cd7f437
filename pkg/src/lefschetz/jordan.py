"""Jordan type of multiplication by s = x_1 + ... + x_n.

As a k[T]-module with T acting as s, the algebra is the tensor product of the
Jordan blocks J_{d_1}, ..., J_{d_n} (T acting on a tensor product by the
Leibniz rule). The block sizes are therefore computed pairwise: J_a (x) J_b is
k[T][w]/(w^b) modulo the image of u^a, u = T + w, whose Smith form over the
local ring k[T]_(T) is found by scalar elimination on the binomial matrix.

This gives an independent and much cheaper route to the WLP: s is a weak
Lefschetz element iff the number of Jordan blocks equals max_i H(i).
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import comb
from typing import Sequence

from .algebra import MonomialCI, hilbert_function


@lru_cache(maxsize=None)
def block_tensor(a: int, b: int, p: int) -> tuple[int, ...]:
    """Block sizes of J_a (x) J_b in characteristic p, largest first.

    >>> block_tensor(3, 3, 2)
    (4, 4, 1)
    """
    if a < b:
        a, b = b, a
    # entry (r, c) is binom(a, r - c) * T^(a - (r - c)); pivot on lowest T-valuation
    mat = [[comb(a, r - c) % p if r >= c else 0 for c in range(b)] for r in range(b)]
    live_rows = list(range(b))
    live_cols = list(range(b))
    sizes = []
    while live_rows:
        best = None
        for r in live_rows:
            row = mat[r]
            for c in live_cols:
                if row[c] and (best is None or r - c > best[0]):
                    best = (r - c, r, c)
        shift, pr, pc = best
        sizes.append(a - shift)
        inv = pow(mat[pr][pc], p - 2, p)
        for r in live_rows:
            if r != pr and mat[r][pc]:
                f = mat[r][pc] * inv % p
                row, prow = mat[r], mat[pr]
                for c in live_cols:
                    row[c] = (row[c] - f * prow[c]) % p
        live_rows.remove(pr)
        live_cols.remove(pc)
    return tuple(sorted(sizes, reverse=True))


def jordan_type(degrees: Sequence[int], p: int) -> Counter:
    """Multiset ``{block size: multiplicity}`` of s acting on the algebra."""
    blocks = Counter({degrees[0]: 1})
    for d in degrees[1:]:
        nxt: Counter = Counter()
        for size, mult in blocks.items():
            for part in block_tensor(size, d, p):
                nxt[part] += mult
        blocks = nxt
    return blocks


def wlp_by_jordan_type(ci: MonomialCI) -> bool:
    return sum(jordan_type(ci.degrees, ci.p).values()) == hilbert_function(ci).peak


def strong_jordan_type(ci: MonomialCI) -> Counter:
    """Block sizes forced when s has maximal rank for every power: the
    conjugate of the Hilbert function."""
    hf = hilbert_function(ci).values
    out: Counter = Counter()
    peak = max(hf)
    for level in range(1, peak + 1):
        out[sum(1 for h in hf if h >= level)] += 1
    return out


def slp_by_jordan_type(ci: MonomialCI) -> bool:
    return jordan_type(ci.degrees, ci.p) == strong_jordan_type(ci)
