"""Exact dense linear algebra over a prime field F_p with p < 2**31.

Matrices are immutable int64 arrays with entries reduced to [0, p).  The
workhorse is a blocked Gaussian elimination: panels are eliminated with
vectorized row operations and the trailing block is updated by an exact
modular matrix product (16-bit limb split, so every float64 dot product
stays below 2**53 and BLAS can be used).  Pivoting is deterministic: the
first row with a nonzero entry, columns left to right.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_LIMB = 1 << 16
_MUL_CHUNK = 1 << 18  # inner-dimension chunk keeping limb products exact
_PANEL = 128


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3):
        if p % q == 0:
            return p == q
    f = 5
    while f * f <= p:
        if p % f == 0 or p % (f + 2) == 0:
            return False
        f += 6
    return True


@dataclass(frozen=True)
class PrimeField:
    """Odd prime field with modulus below 2**31."""

    p: int

    def __post_init__(self):
        p = self.p
        if not (2 < p < 2**31):
            raise ValueError(f"modulus must satisfy 2 < p < 2**31, got {p}")
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)


class ModMatrix:
    """Immutable matrix over a prime field."""

    __slots__ = ("field", "array")

    def __init__(self, field: PrimeField, array, *, _trusted: bool = False):
        arr = np.asarray(array, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"need a 2-d array, got shape {arr.shape}")
        if not _trusted:
            arr = np.mod(arr, field.p)
        elif arr.base is not None:
            arr = arr.copy()
        arr.setflags(write=False)
        self.field = field
        self.array = arr

    @property
    def shape(self) -> tuple[int, int]:
        return self.array.shape

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    def __repr__(self):
        return f"ModMatrix(p={self.field.p}, shape={self.shape})"


def _mul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact (a @ b) mod p for reduced int64 operands."""
    m, k = a.shape
    k2, n = b.shape
    if k != k2:
        raise ValueError(f"inner dimensions differ: {k} vs {k2}")
    out = np.zeros((m, n), dtype=np.int64)
    if k == 0:
        return out
    c32 = (1 << 32) % p
    c16 = _LIMB % p
    for start in range(0, k, _MUL_CHUNK):
        stop = min(start + _MUL_CHUNK, k)
        ah, al = np.divmod(a[:, start:stop], _LIMB)
        bh, bl = np.divmod(b[start:stop, :], _LIMB)
        ah = ah.astype(np.float64)
        al = al.astype(np.float64)
        bh = bh.astype(np.float64)
        bl = bl.astype(np.float64)
        hh = ah @ bh
        ll = al @ bl
        mid = (ah + al) @ (bh + bl) - hh - ll
        term = (
            hh.astype(np.int64) % p * c32
            + mid.astype(np.int64) % p * c16
            + ll.astype(np.int64) % p
        ) % p
        out += term
        out %= p
    return out


def _echelon(a: np.ndarray, p: int, *, pivot_limit: int | None = None,
             panel: int = _PANEL) -> list[int]:
    """In-place forward elimination to row echelon form with unit pivots.

    Only the first ``pivot_limit`` columns are eligible as pivot columns;
    later columns are carried along (used for span membership).  Returns
    the pivot columns.  Identical to one-pivot-at-a-time elimination; the
    panel structure only batches the trailing-block work into one modular
    matrix product per panel.
    """
    m, ncols = a.shape
    limit = ncols if pivot_limit is None else pivot_limit
    piv_cols: list[int] = []
    row = 0
    col0 = 0
    while col0 < limit and row < m:
        col1 = min(col0 + panel, limit)
        block = a[:, col0:col1]
        r0 = row
        inv_list: list[int] = []
        local_cols: list[int] = []
        for lc in range(col1 - col0):
            if row == m:
                break
            nz = block[row:, lc].nonzero()[0]
            if nz.size == 0:
                continue
            rpiv = row + int(nz[0])
            if rpiv != row:
                a[[row, rpiv]] = a[[rpiv, row]]
            inv = pow(int(block[row, lc]), p - 2, p)
            if inv != 1:
                block[row, lc + 1:] = block[row, lc + 1:] * inv % p
            f = block[row + 1:, lc]
            hit = f.nonzero()[0]
            if hit.size and lc + 1 < block.shape[1]:
                rows = hit + row + 1
                block[rows, lc + 1:] = (
                    block[rows, lc + 1:] - f[hit, None] * block[row, lc + 1:]
                ) % p
            # the multipliers stay parked in the pivot column; together they
            # are the L factor replayed on the trailing columns below
            inv_list.append(inv)
            local_cols.append(lc)
            piv_cols.append(col0 + lc)
            row += 1
        q = row - r0
        if q and col1 < ncols:
            trail = a[r0:, col1:]
            for j in range(q):
                if inv_list[j] != 1:
                    trail[j] = trail[j] * inv_list[j] % p
                g = block[r0 + j + 1: r0 + q, local_cols[j]]
                hit = g.nonzero()[0]
                if hit.size:
                    rows = hit + j + 1
                    trail[rows] = (trail[rows] - g[hit, None] * trail[j]) % p
            if r0 + q < m:
                lcols = [col0 + lc for lc in local_cols]
                lower = a[r0 + q:, lcols]
                if lower.any():
                    trail[q:] = (trail[q:] - _mul_mod(lower, trail[:q], p)) % p
        for j, lc in enumerate(local_cols):
            block[r0 + j + 1:, lc] = 0
            block[r0 + j, lc] = 1
        col0 = col1
    return piv_cols


def _back_eliminate(a: np.ndarray, p: int, piv_cols: list[int]) -> None:
    """Clear the entries above each pivot, turning echelon into reduced form."""
    for j in range(len(piv_cols) - 1, -1, -1):
        c = piv_cols[j]
        col = a[:j, c]
        hit = col.nonzero()[0]
        if hit.size:
            a[hit, c:] = (a[hit, c:] - col[hit, None] * a[j, c:]) % p


def rank(m: ModMatrix) -> int:
    """Rank via forward elimination."""
    a = m.array.copy()
    return len(_echelon(a, m.field.p))


def kernel_basis(m: ModMatrix) -> ModMatrix:
    """Right null space basis, one column per free column of the input.

    The basis is in echelon-complement form: each vector has a 1 in its
    free coordinate, the pivot coordinates filled from the reduced echelon
    form, and zeros in the other free coordinates.  Deterministic.
    """
    p = m.field.p
    a = m.array.copy()
    piv = _echelon(a, p)
    _back_eliminate(a, p, piv)
    r = len(piv)
    piv_arr = np.asarray(piv, dtype=np.int64)
    free = np.setdiff1d(np.arange(m.cols, dtype=np.int64), piv_arr)
    basis = np.zeros((m.cols, free.size), dtype=np.int64)
    for idx, fcol in enumerate(free):
        basis[fcol, idx] = 1
        if r:
            basis[piv_arr, idx] = (p - a[:r, fcol]) % p
    return ModMatrix(m.field, basis, _trusted=True)


def in_span(m: ModMatrix, v) -> bool:
    """Whether v lies in the column span of m.

    One elimination pass over the augmented matrix, with the appended
    column barred from pivoting; membership holds exactly when that column
    is annihilated below the pivot rows.
    """
    vec = np.mod(np.asarray(v, dtype=np.int64), m.field.p)
    if vec.ndim == 1:
        vec = vec[:, None]
    if vec.shape != (m.rows, 1):
        raise ValueError(f"vector shape {vec.shape} does not match {m.rows} rows")
    aug = np.hstack([m.array, vec])
    piv = _echelon(aug, m.field.p, pivot_limit=m.cols)
    return not aug[len(piv):, -1].any()


def matmul(a: ModMatrix, b: ModMatrix) -> ModMatrix:
    """Exact modular matrix product."""
    if a.field.p != b.field.p:
        raise ValueError("mixed moduli")
    if a.cols != b.rows:
        raise ValueError(f"shape mismatch: {a.shape} @ {b.shape}")
    return ModMatrix(a.field, _mul_mod(a.array, b.array, a.field.p), _trusted=True)
