"""Tests for point configurations and chopped-ideal Hilbert functions.

The key rank computations are cross-checked against an independent oracle
coded here: explicit polynomial multiplication over F_p with dict-backed
coefficient arithmetic, no Macaulay indexing shared with the implementation.
"""

import numpy as np
import pytest

from chopshop.formulas import (
    CaseParams,
    ci_hf,
    lex_lower_bound_table,
    liaison_delta,
    predicted_gap,
)
from chopshop.grading import LexOrder, hs, lex_compare_hf, monomials
from chopshop.modlinalg import ModMatrix, PrimeField, matmul, rank
from chopshop.pointideals import (
    GenericityError,
    GradedBasis,
    PointConfig,
    chopped_hf,
    chopped_profile,
    evaluation_matrix,
    h_vector,
    ideal_component,
    macaulay_matrix,
    observed_gap,
    sample_points,
)

P = PrimeField(2147483647)
SEED = 20260815


def poly_mul_oracle(n, coeffs_a, deg_a, coeffs_b, deg_b, p):
    """Multiply two coefficient vectors the slow transparent way: a dict of
    exponent tuples, term by term."""
    out = {}
    for ea, ca in zip(monomials(n, deg_a), coeffs_a):
        if ca == 0:
            continue
        for eb, cb in zip(monomials(n, deg_b), coeffs_b):
            if cb == 0:
                continue
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = (out.get(key, 0) + int(ca) * int(cb)) % p
    return [out.get(exp, 0) for exp in monomials(n, deg_a + deg_b)]


class TestSampling:
    def test_deterministic(self):
        a = sample_points(2, 18, P, SEED)
        b = sample_points(2, 18, P, SEED)
        assert a == b
        assert a.coords.shape == (18, 3)

    def test_single_point(self):
        cfg = sample_points(3, 1, P, 5)
        assert cfg.r == 1 and cfg.retries == 0

    def test_rank_at_degree_d(self):
        cfg = sample_points(2, 18, P, SEED)
        assert rank(evaluation_matrix(cfg, 5)) == 18

    def test_impossible_configuration_raises(self):
        # The projective plane over F_3 has 13 points, so 30 distinct ones
        # cannot exist and the retry budget must run out.
        with pytest.raises(GenericityError):
            sample_points(2, 30, PrimeField(3), 0)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            PointConfig(2, 2, np.array([[1, 2, 3], [2, 4, 6]]), P, 0)  # same point
        with pytest.raises(ValueError):
            PointConfig(2, 2, np.array([[1, 2, 3], [0, 0, 0]]), P, 0)  # zero row
        with pytest.raises(ValueError):
            PointConfig(2, 3, np.array([[1, 2, 3], [4, 5, 6]]), P, 0)  # bad shape


class TestEvaluationMatrix:
    def test_degree_zero_is_ones(self):
        cfg = sample_points(2, 4, P, 1)
        assert evaluation_matrix(cfg, 0).array.tolist() == [[1]] * 4

    def test_degree_one_is_coordinates(self):
        cfg = sample_points(3, 5, P, 2)
        assert (evaluation_matrix(cfg, 1).array == cfg.coords).all()

    def test_entries_are_monomial_values(self):
        cfg = sample_points(2, 3, P, 3)
        e2 = evaluation_matrix(cfg, 2)
        for i in range(3):
            x, y, z = (int(v) for v in cfg.coords[i])
            for j, (a, b, c) in enumerate(monomials(2, 2)):
                assert e2.array[i, j] == pow(x, a, P.p) * pow(y, b, P.p) * pow(z, c, P.p) % P.p


class TestIdealComponent:
    def test_quintics_through_18_points(self):
        cfg = sample_points(2, 18, P, SEED)
        assert ideal_component(cfg, 5).dim == 3
        assert ideal_component(cfg, 4).dim == 0

    def test_quintics_through_17_points(self):
        cfg = sample_points(2, 17, P, SEED)
        assert ideal_component(cfg, 5).dim == 4

    def test_components_vanish_on_points(self):
        cfg = sample_points(3, 7, P, 9)
        basis = ideal_component(cfg, 3)
        prod = matmul(evaluation_matrix(cfg, 3), basis.vectors)
        assert not prod.array.any()


class TestMacaulayMatrix:
    def test_shift_by_zero_returns_basis(self):
        cfg = sample_points(2, 18, P, SEED)
        basis = ideal_component(cfg, 5)
        assert (macaulay_matrix(basis, 0).array == basis.vectors.array).all()

    def test_frozen_shapes_and_ranks(self):
        cfg = sample_points(2, 18, P, SEED)
        basis = ideal_component(cfg, 5)
        m1 = macaulay_matrix(basis, 1)
        assert m1.shape == (28, 9) and rank(m1) == 9
        m2 = macaulay_matrix(basis, 2)
        assert m2.shape == (36, 18) and rank(m2) == 18

    def test_columns_match_polynomial_multiplication(self):
        cfg = sample_points(2, 7, P, 4)
        basis = ideal_component(cfg, 3)
        mac = macaulay_matrix(basis, 2)
        shifts = monomials(2, 2)
        for j in range(basis.dim):
            for m_idx, shift in enumerate(shifts):
                unit = [0] * len(shifts)
                unit[m_idx] = 1
                want = poly_mul_oracle(
                    2, basis.vectors.array[:, j], 3, unit, 2, P.p
                )
                got = mac.array[:, j * len(shifts) + m_idx]
                assert got.tolist() == want

    def test_span_matches_bruteforce_products(self):
        # Rank of the stacked [macaulay | oracle products] equals both
        # individual ranks, so the two column spans coincide.
        cfg = sample_points(2, 7, P, 8)
        basis = ideal_component(cfg, 3)
        mac = macaulay_matrix(basis, 1)
        cols = []
        for j in range(basis.dim):
            for m_idx in range(hs(2, 1)):
                unit = [0] * hs(2, 1)
                unit[m_idx] = 1
                cols.append(poly_mul_oracle(2, basis.vectors.array[:, j], 3, unit, 1, P.p))
        oracle = np.array(cols, dtype=np.int64).T
        stacked = ModMatrix(P, np.hstack([mac.array, oracle]), _trusted=True)
        r_mac = rank(mac)
        assert r_mac == rank(ModMatrix(P, oracle, _trusted=True))
        assert r_mac == rank(stacked)

    def test_basis_change_invariance(self):
        cfg = sample_points(2, 18, P, SEED)
        basis = ideal_component(cfg, 5)
        rng = np.random.default_rng(0)
        u = ModMatrix(P, rng.integers(1, P.p, size=(3, 3), dtype=np.int64))
        changed = GradedBasis(2, 5, matmul(basis.vectors, u))
        for e in (1, 2, 3):
            assert rank(macaulay_matrix(basis, e)) == rank(macaulay_matrix(changed, e))


class TestChoppedHilbertFunction:
    def test_18_points_quotient_sequence(self):
        cfg = sample_points(2, 18, P, SEED)
        assert [chopped_hf(cfg, 5, t) for t in (5, 6, 7)] == [18, 19, 18]
        assert observed_gap(cfg, 5, check_stability=True) == 2

    def test_17_points_gap_one(self):
        cfg = sample_points(2, 17, P, SEED)
        assert observed_gap(cfg, 5) == 1

    def test_41_points_gap_three(self):
        cfg = sample_points(2, 41, P, SEED)
        assert [chopped_hf(cfg, 8, t) for t in (9, 10, 11)] == [43, 42, 41]
        assert observed_gap(cfg, 8) == 3

    def test_rejects_degrees_below_d(self):
        cfg = sample_points(2, 7, P, 1)
        with pytest.raises(ValueError):
            chopped_hf(cfg, 3, 2)

    def test_quotient_never_below_point_count(self):
        for n, r, seed in ((2, 12, 1), (3, 9, 2), (2, 25, 3)):
            cfg = sample_points(n, r, P, seed)
            d = CaseParams(n, r).d
            for t in range(d, d + 4):
                assert chopped_hf(cfg, d, t) >= r

    def test_complete_intersection_stabilizes_at_degree_power(self):
        # r = hs(n,d) - n generic points: the degree-d component is a
        # regular sequence, so the chopped quotient settles at d^n, not r.
        for n, d, seed in ((2, 3, 1), (2, 4, 2), (3, 2, 3)):
            r = hs(n, d) - n
            cfg = sample_points(n, r, P, seed)
            start = n * (d - 1)
            degrees = [d] * n
            for t in (start, start + 1):
                value = chopped_hf(cfg, d, t)
                assert value == ci_hf(n, degrees, t) == d**n
            assert observed_gap(cfg, d) is None


class TestHVector:
    def test_18_plane_points(self):
        cfg = sample_points(2, 18, P, SEED)
        hv = h_vector(cfg, 5)
        assert hv.values[:6] == (1, 2, 3, 4, 5, 3)
        assert hv.tail == 0

    def test_single_point(self):
        cfg = sample_points(2, 1, P, 1)
        assert h_vector(cfg, 0).values[0] == 1

    def test_121_points_in_p4(self):
        cfg = sample_points(4, 121, P, SEED)
        hv = h_vector(cfg, 5)
        assert hv.values[5] == 51
        assert sum(hv.values) == 121

    def test_sums_recover_hilbert_function(self):
        cfg = sample_points(3, 16, P, SEED)
        hv = h_vector(cfg, 3)
        partial = 0
        for t, delta in enumerate(hv.values):
            partial += delta
            assert partial == rank(evaluation_matrix(cfg, t))

    def test_liaison_identity_for_18_points(self):
        # Degree-5 curves through the points link them inside a [5,5]
        # complete intersection; the complement's h-vector comes from the
        # reversed difference and really is (1, 2, 3, 1).
        cfg = sample_points(2, 18, P, SEED)
        hv = h_vector(cfg, 5)
        trimmed = hv.values[:6]
        assert liaison_delta(2, [5, 5], trimmed) == (1, 2, 3, 1)


class TestChoppedProfile:
    def test_match_for_18_points(self):
        prof = chopped_profile(sample_points(2, 18, P, SEED))
        assert prof.verdict == "match"
        assert prof.observed_gap == 2
        assert prof.first_mismatch_degree is None
        assert prof.observed.values == prof.expected.values
        assert prof.observed.values[5:] == (18, 19, 18)

    def test_match_for_16_points_in_p3(self):
        prof = chopped_profile(sample_points(3, 16, P, SEED))
        assert prof.verdict == "match" and prof.observed_gap == 2

    def test_observed_gap_agrees_with_prediction(self):
        for n, r, seed in ((2, 17, 1), (2, 22, 2), (2, 41, 3), (3, 30, 4)):
            prof = chopped_profile(sample_points(n, r, P, seed))
            assert prof.verdict == "match"
            assert prof.observed_gap == predicted_gap(prof.params).gap

    def test_lex_lower_bound_respected(self):
        for n, r, seed in ((2, 18, 1), (2, 41, 2), (3, 16, 3)):
            prof = chopped_profile(sample_points(n, r, P, seed))
            horizon = len(prof.observed.values) - 1
            bound = lex_lower_bound_table(CaseParams(n, r), horizon)
            cmp = lex_compare_hf(prof.observed, bound)
            assert cmp in (LexOrder.GREATER_EQUAL, LexOrder.EQUAL)

    def test_horizon_below_gap_rejected(self):
        cfg = sample_points(2, 18, P, SEED)
        with pytest.raises(ValueError):
            chopped_profile(cfg, e_max=1)
