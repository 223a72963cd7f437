"""Naive reference implementations for the tests; they share no code with the package."""

from __future__ import annotations

import itertools
from collections import defaultdict
from math import factorial, prod

from sympy import GF
from sympy.polys.matrices import DomainMatrix

PRIMES = (2, 3, 5, 7, 11, 13)


def brute_hilbert(degrees):
    counts = defaultdict(int)
    for alpha in itertools.product(*(range(d) for d in degrees)):
        counts[sum(alpha)] += 1
    return [counts[i] for i in range(sum(d - 1 for d in degrees) + 1)]


def factorial_multinomial(top, parts):
    return factorial(top) // prod(factorial(x) for x in parts)


def sympy_rank(dense, p):
    rows = [[int(x) for x in row] for row in dense]
    if not rows or not rows[0]:
        return 0
    return DomainMatrix([[GF(p)(x) for x in row] for row in rows], (len(rows), len(rows[0])), GF(p)).rank()


def times_linear_form(poly, degrees, coeffs, p):
    """``poly * (c_1 x_1 + ... + c_n x_n)`` in k[x]/(x_i^d_i), as a dict."""
    out = defaultdict(int)
    for alpha, c in poly.items():
        for j, cj in enumerate(coeffs):
            if alpha[j] + 1 < degrees[j]:
                beta = alpha[:j] + (alpha[j] + 1,) + alpha[j + 1 :]
                out[beta] = (out[beta] + c * cj) % p
    return {k: v for k, v in out.items() if v}


def brute_power_times(degrees, coeffs, m, alpha, p):
    poly = {tuple(alpha): 1}
    for _ in range(m):
        poly = times_linear_form(poly, degrees, coeffs, p)
        if not poly:
            break
    return poly


def brute_multiplication_dense(degrees, m, i, p):
    """Matrix of s^m: A_i -> A_{i+m} by repeated multiplication, with its own basis order."""
    src = sorted(a for a in itertools.product(*(range(d) for d in degrees)) if sum(a) == i)
    dst = sorted(a for a in itertools.product(*(range(d) for d in degrees)) if sum(a) == i + m)
    where = {g: r for r, g in enumerate(dst)}
    mat = [[0] * len(src) for _ in dst]
    for c, alpha in enumerate(src):
        for gamma, v in brute_power_times(degrees, [1] * len(degrees), m, alpha, p).items():
            mat[where[gamma]][c] = v
    return mat, len(src), len(dst)


def brute_max_rank(degrees, m, p):
    """Maximal rank of s^m in every degree, with no duality shortcut."""
    t = sum(d - 1 for d in degrees)
    for i in range(0, t - m + 1):
        mat, h_src, h_dst = brute_multiplication_dense(degrees, m, i, p)
        if sympy_rank(mat, p) != min(h_src, h_dst):
            return False
    return True
