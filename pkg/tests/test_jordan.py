from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lefschetz.algebra import normalize
from lefschetz.jordan import (
    block_tensor,
    jordan_type,
    slp_by_jordan_type,
    strong_jordan_type,
    wlp_by_jordan_type,
)
from lefschetz.oracle import verify_slp, verify_wlp

algebras = st.builds(
    normalize,
    st.lists(st.integers(2, 6), min_size=1, max_size=4),
    st.sampled_from([2, 3, 5, 7]),
)


def test_known_tensor_products():
    assert block_tensor(3, 3, 2) == (4, 4, 1)
    assert block_tensor(2, 2, 2) == (2, 2)
    assert block_tensor(2, 2, 3) == (3, 1)
    assert block_tensor(5, 1, 2) == (5,)


@given(st.integers(1, 12), st.integers(1, 12), st.sampled_from([2, 3, 5, 7]))
def test_tensor_sizes_add_up(a, b, p):
    sizes = block_tensor(a, b, p)
    assert sum(sizes) == a * b and len(sizes) == min(a, b)
    assert block_tensor(b, a, p) == sizes


@given(st.integers(1, 8), st.integers(1, 8))
def test_large_characteristic_is_clebsch_gordan(a, b):
    expected = tuple(a + b - 1 - 2 * k for k in range(min(a, b)))
    assert block_tensor(a, b, 17) == expected


def test_jordan_type_of_a_single_block():
    assert jordan_type((7,), 3) == {7: 1}


@given(algebras)
def test_block_count_decides_the_wlp(ci):
    assert wlp_by_jordan_type(ci) == verify_wlp(ci)


@given(st.builds(normalize, st.lists(st.integers(2, 5), min_size=1, max_size=3), st.sampled_from([2, 3, 5, 7])))
def test_jordan_type_decides_s_slp(ci):
    assert slp_by_jordan_type(ci) == verify_slp(ci).holds


def test_strong_jordan_type_is_conjugate_of_hilbert_function():
    # H = 1,3,3,1: conjugate partition (4,2,2)
    assert strong_jordan_type(normalize((2, 2, 2), 7)) == {4: 1, 2: 2}
    assert jordan_type((2, 2, 2), 7) == {4: 1, 2: 2}
    assert jordan_type((2, 2, 2), 2) != {4: 1, 2: 2}
