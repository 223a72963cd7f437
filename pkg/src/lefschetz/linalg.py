"""Exact linear algebra over the prime field F_p.

Matrices are stored column-wise as lists of ``(row, residue)`` pairs, which is
how multiplication maps are produced (one column per source monomial). Rank is
computed by sparse Gaussian elimination with Markowitz-style pivoting, handing
the active submatrix to a dense numpy kernel once it fills in.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch

DENSITY_THRESHOLD = 0.2
DENSE_DIMENSION = 256


@lru_cache(maxsize=64)
def inverse_table(p: int) -> np.ndarray:
    """``inv[a] = a^-1 mod p`` for ``0 < a < p`` (``inv[0] = 0``)."""
    if p >= 1 << 16:
        raise ValueError("inverse tables are only built for p < 2^16")
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    inv.setflags(write=False)
    return inv


@dataclass(frozen=True)
class SparseMatrixModP:
    rows: int
    cols: int
    p: int
    columns: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self):
        if len(self.columns) != self.cols:
            raise DimensionMismatch(f"expected {self.cols} columns, got {len(self.columns)}")
        for col in self.columns:
            prev = -1
            for r, v in col:
                if not (prev < r < self.rows) or not (0 < v < self.p):
                    raise ValueError(f"malformed column entry {(r, v)}")
                prev = r

    @classmethod
    def from_columns(
        cls, rows: int, p: int, columns: Iterable[dict[int, int] | Iterable[tuple[int, int]]]
    ) -> "SparseMatrixModP":
        """Build from per-column ``row -> value`` data; reduces mod p, drops zeros."""
        packed = []
        for col in columns:
            items = col.items() if isinstance(col, dict) else col
            acc: dict[int, int] = {}
            for r, v in items:
                acc[r] = (acc.get(r, 0) + v) % p
            packed.append(tuple(sorted((r, v) for r, v in acc.items() if v)))
        return cls(rows, len(packed), p, tuple(packed))

    @classmethod
    def from_dense(cls, array, p: int) -> "SparseMatrixModP":
        a = np.asarray(array, dtype=np.int64) % p
        rows, cols = a.shape
        columns = []
        for c in range(cols):
            nz = np.flatnonzero(a[:, c])
            columns.append(tuple((int(r), int(a[r, c])) for r in nz))
        return cls(rows, cols, p, tuple(columns))

    @classmethod
    def identity(cls, size: int, p: int) -> "SparseMatrixModP":
        return cls(size, size, p, tuple(((i, 1),) for i in range(size)))

    @classmethod
    def zero(cls, rows: int, cols: int, p: int) -> "SparseMatrixModP":
        return cls(rows, cols, p, tuple(() for _ in range(cols)))

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    @property
    def density(self) -> float:
        size = self.rows * self.cols
        return self.nnz / size if size else 0.0

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.rows, self.cols), dtype=np.int64)
        for c, col in enumerate(self.columns):
            for r, v in col:
                a[r, c] = v
        return a

    def transpose(self) -> "SparseMatrixModP":
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.rows)]
        for c, col in enumerate(self.columns):
            for r, v in col:
                out[r].append((c, v))
        return SparseMatrixModP(self.cols, self.rows, self.p, tuple(map(tuple, out)))


def apply(m: SparseMatrixModP, v: Sequence[int]) -> tuple[int, ...]:
    """Matrix-vector product ``m @ v`` mod p."""
    if len(v) != m.cols:
        raise DimensionMismatch(f"vector of length {len(v)} for {m.cols} columns")
    out = [0] * m.rows
    for x, col in zip(v, m.columns):
        x %= m.p
        if x:
            for r, a in col:
                out[r] += a * x
    return tuple(y % m.p for y in out)


def rank_dense(array, p: int) -> int:
    """Rank of a dense integer matrix over F_p (row echelon, first-nonzero pivots)."""
    a = np.array(array, dtype=np.int64) % p
    if a.ndim != 2 or a.size == 0:
        return 0
    if a.shape[0] < a.shape[1]:
        a = np.ascontiguousarray(a.T)
    rows, cols = a.shape
    inv = inverse_table(p)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k], c:] = a[[k, r], c:]
        pivot = a[r, c + 1 :] * inv[a[r, c]] % p
        below = np.flatnonzero(a[r + 1 :, c])
        if below.size:
            idx = below + (r + 1)
            a[idx, c + 1 :] = (a[idx, c + 1 :] - np.outer(a[idx, c], pivot)) % p
        r += 1
    return r


def rank_sparse(
    m: SparseMatrixModP,
    density_threshold: float = DENSITY_THRESHOLD,
    dense_dimension: int = DENSE_DIMENSION,
) -> int:
    """Sparse elimination; pivots on the shortest column, then its shortest row.

    Ties go to the lowest column and row index. When the active submatrix gets
    denser than ``density_threshold`` (or small), the rest is finished densely.
    """
    p = m.p
    rows: dict[int, dict[int, int]] = {}
    col_rows: dict[int, set[int]] = {}
    for c, col in enumerate(m.columns):
        if not col:
            continue
        col_rows[c] = {r for r, _ in col}
        for r, v in col:
            rows.setdefault(r, {})[c] = v
    nnz = m.nnz
    heap = [(len(rs), c) for c, rs in col_rows.items()]
    heapq.heapify(heap)
    rank = 0
    while col_rows:
        n_rows, n_cols = len(rows), len(col_rows)
        if min(n_rows, n_cols) <= dense_dimension or nnz > density_threshold * n_rows * n_cols:
            return rank + _finish_dense(rows, col_rows, p)
        count, c = heapq.heappop(heap)
        rs = col_rows.get(c)
        if rs is None or len(rs) != count:
            if rs is not None:
                heapq.heappush(heap, (len(rs), c))
            continue
        prow_idx = min(rs, key=lambda r: (len(rows[r]), r))
        prow = rows.pop(prow_idx)
        for cc in prow:
            col_rows[cc].discard(prow_idx)
        nnz -= len(prow)
        scale = pow(prow[c], p - 2, p)
        touched = set(prow)
        for r in list(rs):
            row = rows[r]
            f = row[c] * scale % p
            before = len(row)
            for cc, v in prow.items():
                new = (row.get(cc, 0) - f * v) % p
                if new:
                    if cc not in row:
                        col_rows[cc].add(r)
                    row[cc] = new
                elif cc in row:
                    del row[cc]
                    col_rows[cc].discard(r)
            nnz += len(row) - before
            if not row:
                del rows[r]
        del col_rows[c]
        for cc in touched:
            if cc == c:
                continue
            rs2 = col_rows.get(cc)
            if rs2 is not None:
                if rs2:
                    heapq.heappush(heap, (len(rs2), cc))
                else:
                    del col_rows[cc]
        rank += 1
    return rank


def _finish_dense(rows: dict[int, dict[int, int]], col_rows: dict[int, set[int]], p: int) -> int:
    if not rows or not col_rows:
        return 0
    row_ids = sorted(rows)
    col_pos = {c: k for k, c in enumerate(sorted(col_rows))}
    a = np.zeros((len(row_ids), len(col_pos)), dtype=np.int64)
    for i, r in enumerate(row_ids):
        for c, v in rows[r].items():
            a[i, col_pos[c]] = v
    return rank_dense(a, p)


def rank_mod_p(m: SparseMatrixModP, method: str = "auto") -> int:
    """Rank over F_p. ``method`` is ``auto``, ``dense`` or ``sparse``."""
    if m.rows == 0 or m.cols == 0 or m.nnz == 0:
        return 0
    if method == "auto":
        small = min(m.rows, m.cols) <= DENSE_DIMENSION
        method = "dense" if small or m.density > DENSITY_THRESHOLD else "sparse"
    if method == "dense":
        return rank_dense(m.to_dense(), m.p)
    if method == "sparse":
        return rank_sparse(m)
    raise ValueError(f"unknown rank method {method!r}")


def kernel_basis(m: SparseMatrixModP) -> list[tuple[int, ...]]:
    """Basis of the right kernel, read off the reduced row echelon form."""
    p = m.p
    a = m.to_dense() % p
    rows, cols = a.shape
    inv = inverse_table(p)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        a[[r, k]] = a[[k, r]]
        a[r] = a[r] * inv[a[r, c]] % p
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = int(-a[i, f] % p)
        basis.append(tuple(v))
    return basis
