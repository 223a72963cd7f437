from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lefschetz.algebra import (
    MonomialCI,
    basis_index,
    hilbert_function,
    is_basis_element,
    is_prime,
    iter_basis,
    monomial_basis,
    normalize,
    socle_degree,
)
from lefschetz.errors import DegreeOutOfRange, EmptyAlgebra, HilbertOverflow, NonPrimeCharacteristic, NotABasisElement
from reference import brute_hilbert

degree_lists = st.lists(st.integers(2, 7), min_size=1, max_size=5)


def ci(*degrees, p=5):
    return normalize(degrees, p)


@pytest.mark.parametrize(
    "raw, p, expected",
    [([3, 9, 12], 5, (12, 9, 3)), ([2, 1, 2], 7, (2, 2)), ([1, 5], 2, (5,))],
)
def test_normalize_sorts_and_drops_linear_generators(raw, p, expected):
    out = normalize(raw, p)
    assert out.degrees == expected and out.p == p
    assert out.dropped == raw.count(1)


def test_normalize_rejects_bad_input():
    with pytest.raises(NonPrimeCharacteristic):
        normalize([2, 2], 4)
    with pytest.raises(NonPrimeCharacteristic):
        normalize([2, 2], 1)
    with pytest.raises(EmptyAlgebra):
        normalize([1, 1], 3)
    with pytest.raises(ValueError):
        normalize([0, 3], 3)
    with pytest.raises(ValueError):
        normalize([], 3)


def test_constructor_enforces_invariants():
    with pytest.raises(ValueError):
        MonomialCI((2, 3), 5)
    with pytest.raises(ValueError):
        MonomialCI((3, 1), 5)
    assert MonomialCI((3, 2), 5) == normalize([2, 3, 1], 5)


@given(degree_lists, st.sampled_from([2, 3, 5, 7]))
def test_normalize_idempotent(degrees, p):
    once = normalize(degrees, p)
    assert normalize(once.degrees, p) == once


def test_is_prime():
    assert [q for q in range(30) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize(
    "degrees, t", [((12, 9, 3), 21), ((2, 2, 2), 3), ((3, 3, 4, 5, 5), 15)]
)
def test_socle_degree(degrees, t):
    assert socle_degree(normalize(degrees, 5)) == t == normalize(degrees, 5).t


def test_hilbert_function_examples():
    assert list(hilbert_function(ci(2, 2, 2))) == [1, 3, 3, 1]
    assert hilbert_function(ci(2, 2, 2, 2, 2, 2))[2] == 15
    assert hilbert_function(ci(2, 2, 2, 2, 2, 2))[4] == 15
    hf = hilbert_function(ci(3, 3))
    assert list(hf) == [1, 2, 3, 2, 1]
    assert hf.peak == 3 and hf.socle_degree == 4 and len(hf) == 5


@given(degree_lists)
def test_hilbert_function_matches_enumeration(degrees):
    a = normalize(degrees, 2)
    hf = list(hilbert_function(a))
    assert hf == brute_hilbert(a.degrees)
    assert sum(hf) == a.dimension
    assert hf == hf[::-1]
    half = hf[: a.t // 2 + 1]
    assert half == sorted(half)


def test_hilbert_overflow_is_reported():
    with pytest.raises(HilbertOverflow):
        hilbert_function(normalize([1000] * 12, 2))


def test_monomial_basis_examples():
    assert monomial_basis(ci(2, 2, 2), 1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert monomial_basis(ci(2, 2, 2), 3) == [(1, 1, 1)]
    assert monomial_basis(ci(12, 9, 3), 21) == [(11, 8, 2)]
    with pytest.raises(DegreeOutOfRange):
        monomial_basis(ci(2, 2), 3)


def test_basis_index_examples():
    a = ci(2, 2, 2)
    assert basis_index(a, (1, 0, 0)) == 0
    assert basis_index(a, (0, 0, 1)) == 2
    with pytest.raises(NotABasisElement):
        basis_index(a, (2, 0, 0))
    with pytest.raises(NotABasisElement):
        basis_index(a, (1, 0))
    assert not is_basis_element(a, (0, -1, 1))


@given(degree_lists)
def test_rank_unrank_roundtrip(degrees):
    a = normalize(degrees, 3)
    seen = set()
    for i in range(a.t + 1):
        basis = list(iter_basis(a, i))
        assert len(basis) == hilbert_function(a)[i]
        assert [basis_index(a, alpha) for alpha in basis] == list(range(len(basis)))
        # descending grevlex: ascending lex on the reversed exponent vector
        assert basis == sorted(basis, key=lambda v: v[::-1])
        seen.update(basis)
    assert seen == set(itertools.product(*(range(d) for d in a.degrees)))
