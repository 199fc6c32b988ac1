"""Tests for exact linear algebra over F_p.

The blocked elimination is checked entry-for-entry against a one-pivot
reference implementation coded here, and rank/kernel/span agree with
constructions whose answers are known by design.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chopshop.modlinalg import (
    ModMatrix,
    PrimeField,
    _echelon,
    _mul_mod,
    in_span,
    kernel_basis,
    matmul,
    rank,
)

F = PrimeField(2147483647)
FSMALL = PrimeField(1009)


def reference_echelon(a, p, pivot_limit=None):
    """One pivot at a time, no blocking: the semantics _echelon must match."""
    a = a.copy()
    m, ncols = a.shape
    limit = ncols if pivot_limit is None else pivot_limit
    piv = []
    row = 0
    for col in range(limit):
        if row == m:
            break
        nz = a[row:, col].nonzero()[0]
        if nz.size == 0:
            continue
        r0 = row + nz[0]
        if r0 != row:
            a[[row, r0]] = a[[r0, row]]
        a[row] = a[row] * pow(int(a[row, col]), p - 2, p) % p
        f = a[row + 1:, col]
        a[row + 1:] = (a[row + 1:] - f[:, None] * a[row]) % p
        piv.append(col)
        row += 1
    return a, piv


def random_matrix(rng, field, m, n):
    return ModMatrix(field, rng.integers(0, field.p, size=(m, n), dtype=np.int64))


def random_of_rank(rng, field, m, n, k):
    """m x n product of random m x k and k x n factors; rank k with
    overwhelming probability over a large field."""
    b = rng.integers(0, field.p, size=(m, k), dtype=np.int64)
    c = rng.integers(0, field.p, size=(k, n), dtype=np.int64)
    return ModMatrix(field, _mul_mod(b, c, field.p), _trusted=True)


class TestPrimeField:
    def test_accepts_odd_primes(self):
        PrimeField(3)
        PrimeField(1009)
        PrimeField(2147483647)

    def test_rejects_composites_and_small(self):
        for bad in (1, 2, 4, 9, 1001, 2147483646):
            with pytest.raises(ValueError):
                PrimeField(bad)
        with pytest.raises(ValueError):
            PrimeField(2**31 + 11)

    def test_inverse(self):
        assert F.inv(2) * 2 % F.p == 1
        assert FSMALL.inv(123) * 123 % FSMALL.p == 1
        with pytest.raises(ZeroDivisionError):
            F.inv(0)


class TestModMatrix:
    def test_reduces_entries(self):
        m = ModMatrix(FSMALL, [[-1, 1009], [2018, 5]])
        assert m.array.tolist() == [[1008, 0], [0, 5]]

    def test_immutable(self):
        m = ModMatrix(FSMALL, [[1, 2]])
        with pytest.raises(ValueError):
            m.array[0, 0] = 3

    def test_rejects_wrong_ndim(self):
        with pytest.raises(ValueError):
            ModMatrix(FSMALL, [1, 2, 3])


class TestMulMod:
    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32))
    def test_matches_python_integers(self, seed):
        rng = np.random.default_rng(seed)
        p = int(rng.choice([3, 97, 1009, 65537, 2147483647]))
        m, k, n = (int(v) for v in rng.integers(1, 9, size=3))
        a = rng.integers(0, p, size=(m, k), dtype=np.int64)
        b = rng.integers(0, p, size=(k, n), dtype=np.int64)
        got = _mul_mod(a, b, p)
        want = (a.astype(object) @ b.astype(object)) % p
        assert (got == want.astype(np.int64)).all()

    def test_empty_inner_dimension(self):
        a = np.zeros((3, 0), dtype=np.int64)
        b = np.zeros((0, 4), dtype=np.int64)
        assert _mul_mod(a, b, 7).tolist() == np.zeros((3, 4)).tolist()


class TestEchelon:
    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32))
    def test_blocked_matches_reference(self, seed):
        rng = np.random.default_rng(seed)
        p = int(rng.choice([101, 1009, 2147483647]))
        m, n = (int(v) for v in rng.integers(1, 40, size=2))
        a = rng.integers(0, p, size=(m, n), dtype=np.int64)
        # sprinkle zero columns/rows to exercise pivot skips
        if m > 2:
            a[rng.integers(0, m)] = 0
        if n > 2:
            a[:, rng.integers(0, n)] = 0
        want, piv_want = reference_echelon(a, p)
        for panel in (1, 3, 8, 128):
            got = a.copy()
            piv = _echelon(got, p, panel=panel)
            assert piv == piv_want
            assert (got == want).all()

    def test_pivot_limit_matches_reference(self):
        rng = np.random.default_rng(7)
        a = rng.integers(0, 1009, size=(12, 9), dtype=np.int64)
        want, piv_want = reference_echelon(a, 1009, pivot_limit=6)
        got = a.copy()
        piv = _echelon(got, 1009, pivot_limit=6, panel=4)
        assert piv == piv_want
        assert (got == want).all()


class TestRank:
    def test_identity_and_zero(self):
        eye = ModMatrix(F, np.eye(200, dtype=np.int64), _trusted=True)
        assert rank(eye) == 200
        assert kernel_basis(eye).cols == 0
        zero = ModMatrix(F, np.zeros((5, 7), dtype=np.int64), _trusted=True)
        assert rank(zero) == 0
        assert kernel_basis(zero).cols == 7

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32))
    def test_planted_rank(self, seed):
        rng = np.random.default_rng(seed)
        m, n = (int(v) for v in rng.integers(2, 30, size=2))
        k = int(rng.integers(1, min(m, n) + 1))
        mat = random_of_rank(rng, F, m, n, k)
        assert rank(mat) == k

    def test_rank_is_permutation_invariant(self):
        rng = np.random.default_rng(3)
        mat = random_of_rank(rng, F, 20, 25, 11)
        perm = rng.permutation(20)
        assert rank(ModMatrix(F, mat.array[perm], _trusted=False)) == 11


class TestKernel:
    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32))
    def test_rank_nullity_and_membership(self, seed):
        rng = np.random.default_rng(seed)
        m, n = (int(v) for v in rng.integers(1, 30, size=2))
        k = int(rng.integers(0, min(m, n) + 1))
        mat = random_of_rank(rng, F, m, n, k) if k else ModMatrix(
            F, np.zeros((m, n), dtype=np.int64), _trusted=True
        )
        ker = kernel_basis(mat)
        assert rank(mat) + ker.cols == n
        if ker.cols:
            prod = _mul_mod(mat.array, ker.array, F.p)
            assert not prod.any()
            assert rank(ker) == ker.cols

    def test_deterministic(self):
        rng = np.random.default_rng(11)
        mat = random_of_rank(rng, F, 15, 18, 9)
        k1 = kernel_basis(mat).array
        k2 = kernel_basis(mat).array
        assert (k1 == k2).all()

    def test_echelon_complement_shape(self):
        # One relation among three columns: kernel has the free-coordinate 1.
        mat = ModMatrix(FSMALL, [[1, 2, 3], [0, 1, 4]])
        ker = kernel_basis(mat)
        assert ker.shape == (3, 1)
        assert ker.array[2, 0] == 1
        assert not _mul_mod(mat.array, ker.array, FSMALL.p).any()


class TestInSpan:
    def test_column_combination_is_in_span(self):
        rng = np.random.default_rng(5)
        mat = random_matrix(rng, F, 12, 5)
        x = rng.integers(0, F.p, size=(5, 1), dtype=np.int64)
        v = _mul_mod(mat.array, x, F.p)
        assert in_span(mat, v)

    def test_generic_vector_is_not(self):
        rng = np.random.default_rng(6)
        mat = random_matrix(rng, F, 12, 5)
        v = rng.integers(0, F.p, size=12, dtype=np.int64)
        assert not in_span(mat, v)

    def test_matches_rank_comparison(self):
        rng = np.random.default_rng(8)
        for trial in range(20):
            mat = random_of_rank(rng, FSMALL, 8, 6, int(rng.integers(1, 6)))
            v = rng.integers(0, FSMALL.p, size=(8, 1), dtype=np.int64)
            aug = ModMatrix(FSMALL, np.hstack([mat.array, v]))
            assert in_span(mat, v) == (rank(aug) == rank(mat))

    def test_shape_check(self):
        mat = ModMatrix(FSMALL, [[1, 2], [3, 4]])
        with pytest.raises(ValueError):
            in_span(mat, [1, 2, 3])


class TestMatmul:
    def test_basic(self):
        a = ModMatrix(FSMALL, [[1, 2], [3, 4]])
        b = ModMatrix(FSMALL, [[5], [6]])
        assert matmul(a, b).array.tolist() == [[17], [39]]

    def test_rank_drops_under_products(self):
        rng = np.random.default_rng(9)
        a = random_of_rank(rng, F, 10, 8, 3)
        b = random_matrix(rng, F, 8, 12)
        assert rank(matmul(a, b)) <= 3

    def test_mixed_moduli_rejected(self):
        with pytest.raises(ValueError):
            matmul(ModMatrix(F, [[1]]), ModMatrix(FSMALL, [[1]]))

    def test_basis_change_preserves_rank_and_span(self):
        rng = np.random.default_rng(10)
        mat = random_of_rank(rng, F, 14, 6, 6)
        u = random_of_rank(rng, F, 6, 6, 6)  # invertible with prob ~ 1
        changed = matmul(mat, u)
        assert rank(changed) == rank(mat)
        v = _mul_mod(mat.array, rng.integers(0, F.p, size=(6, 1), dtype=np.int64), F.p)
        assert in_span(changed, v)
