from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lefschetz.algebra import normalize
from lefschetz.errors import DimensionMismatch
from lefschetz.linalg import (
    SparseMatrixModP,
    apply,
    inverse_table,
    kernel_basis,
    rank_dense,
    rank_mod_p,
    rank_sparse,
)
from lefschetz.oracle import multiplication_matrix
from reference import sympy_rank


@st.composite
def matrices(draw, max_dim=12, primes=(2, 3, 5, 7, 65521)):
    p = draw(st.sampled_from(primes))
    rows = draw(st.integers(0, max_dim))
    cols = draw(st.integers(0, max_dim))
    density = draw(st.sampled_from([0.1, 0.3, 1.0]))
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    dense = rng.integers(0, p, size=(rows, cols)) * (rng.random((rows, cols)) < density)
    return SparseMatrixModP.from_dense(dense, p)


def s_matrix_222(p):
    return multiplication_matrix(normalize((2, 2, 2), p), 1, 1)


def test_rank_examples():
    assert rank_mod_p(SparseMatrixModP.identity(3, 2)) == 3
    assert rank_mod_p(SparseMatrixModP.zero(4, 7, 5)) == 0
    m = s_matrix_222(2)
    assert m.to_dense().tolist() == [[1, 1, 0], [1, 0, 1], [0, 1, 1]]
    assert rank_mod_p(m) == 2
    assert rank_mod_p(s_matrix_222(3)) == 3


def test_apply_examples():
    v = (3, 1, 4)
    assert apply(SparseMatrixModP.identity(3, 5), v) == v
    assert apply(SparseMatrixModP.zero(2, 3, 5), v) == (0, 0)
    assert apply(s_matrix_222(2), (1, 1, 1)) == (0, 0, 0)
    with pytest.raises(DimensionMismatch):
        apply(SparseMatrixModP.identity(3, 5), (1, 2))


def test_constructor_validation():
    with pytest.raises(DimensionMismatch):
        SparseMatrixModP(2, 2, 3, (((0, 1),),))
    with pytest.raises(ValueError):
        SparseMatrixModP(2, 1, 3, (((0, 3),),))
    with pytest.raises(ValueError):
        SparseMatrixModP(2, 1, 3, (((1, 1), (0, 1)),))
    m = SparseMatrixModP.from_columns(3, 5, [{0: 7, 2: 5}, [(1, -1)]])
    assert m.to_dense().tolist() == [[2, 0], [0, 4], [0, 0]]
    assert m.nnz == 2 and m.density == pytest.approx(2 / 6)


def test_inverse_table():
    inv = inverse_table(7)
    assert all(a * int(inv[a]) % 7 == 1 for a in range(1, 7))


@given(matrices())
def test_dense_and_sparse_agree_with_reference(m):
    expected = sympy_rank(m.to_dense().tolist(), m.p)
    assert rank_mod_p(m, "dense") == expected
    assert rank_mod_p(m, "sparse") == expected
    assert rank_mod_p(m) == expected


@given(matrices())
def test_rank_invariant_under_transpose(m):
    assert rank_mod_p(m.transpose()) == rank_mod_p(m)
    assert m.transpose().transpose() == m


@given(matrices(), st.randoms(use_true_random=False))
def test_rank_invariant_under_permutation(m, rnd):
    dense = m.to_dense()
    rp = list(range(m.rows))
    cp = list(range(m.cols))
    rnd.shuffle(rp)
    rnd.shuffle(cp)
    shuffled = SparseMatrixModP.from_dense(dense[np.ix_(rp, cp)], m.p)
    assert rank_mod_p(shuffled) == rank_mod_p(m)


@given(matrices())
def test_kernel_basis(m):
    basis = kernel_basis(m)
    assert len(basis) == m.cols - rank_mod_p(m)
    for v in basis:
        assert not any(apply(m, v))
    if basis:
        assert rank_dense(np.array(basis), m.p) == len(basis)


def test_sparse_elimination_on_a_large_structured_matrix():
    # big enough to stay on the sparse path before the dense handoff
    m = multiplication_matrix(normalize((6, 6, 6, 6, 6), 3), 1, 12)
    assert min(m.rows, m.cols) > 256
    assert rank_sparse(m) == rank_dense(m.to_dense(), 3)


def test_unknown_method():
    with pytest.raises(ValueError):
        rank_mod_p(SparseMatrixModP.identity(2, 3), "magic")
