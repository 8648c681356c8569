import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_ematrix
from ergocoef.bounds import (
    MAX_DOUBLING_LEVEL,
    Mode,
    Target,
    bound_sequence,
    constancy_probe,
    default_alpha,
    doubling_bounds,
    estimate_largest,
    estimate_smallest,
    largest_bound,
    simplicity_check,
    smallest_bound_nonsingular,
    smallest_bound_singular,
    smallest_doubling_bounds,
)
from ergocoef.errors import DegenerateCoefficient, SingularMatrix, TrivialEigenvalueNotZero
from ergocoef.matrix import add_rank_one_shift, ones, validate_ematrix
from ergocoef.oracle import nontrivial_extremes, spectrum
from ergocoef.pnorm import BOTH, PNorm
from ergocoef.worked_examples import FIXTURES

A3 = validate_ematrix(FIXTURES.power_example)
B3 = validate_ematrix(FIXTURES.permuted)
CIRC = validate_ematrix(FIXTURES.circulant)
L4 = validate_ematrix(FIXTURES.laplacian4)
L6 = validate_ematrix(FIXTURES.laplacian6)
L7 = validate_ematrix(FIXTURES.laplacian7)
ONE, INF = PNorm.ONE, PNorm.INF


def close2(x, y):
    return abs(x - y) <= 0.01


class TestLargestBound:
    def test_power_table(self):
        for p in BOTH:
            assert largest_bound(A3, p, 1) == pytest.approx(2)
            assert close2(largest_bound(A3, p, 3), 1.26)
            assert close2(largest_bound(A3, p, 10), 1.07)

    def test_circulant_not_monotone(self):
        vals = bound_sequence(CIRC, INF, 4).bounds
        assert vals[0] == 4
        assert close2(vals[1], 2.83) and close2(vals[2], 3.17) and close2(vals[3], 2.83)
        assert vals[2] > vals[1]

    def test_sequence_metadata(self):
        seq = bound_sequence(A3, ONE, 5)
        assert seq.mode is Mode.ALL_K and seq.target is Target.LARGEST_NON_TRIVIAL
        assert list(seq.ks) == [1, 2, 3, 4, 5]
        assert seq.alpha is None
        assert [e.bound for e in seq.entries] == list(seq.bounds)

    def test_doubling_examples(self):
        assert doubling_bounds(CIRC, INF, 2).bounds == pytest.approx((4, 2 * np.sqrt(2), 2 * np.sqrt(2)))
        seq = doubling_bounds(L7, ONE, 1)
        assert list(seq.ks) == [1, 2]
        assert seq.bounds[0] == 7 and close2(seq.bounds[1], 6.78)
        assert seq.mode is Mode.DOUBLING

    @pytest.mark.parametrize("p", BOTH)
    def test_ones_give_zero(self, p):
        j = validate_ematrix(3 * ones(4))
        assert list(doubling_bounds(j, p, 5).bounds) == [0] * 6
        est = estimate_largest(j, p)
        assert est.estimate == 0 and est.levels_used == 0 and est.converged

    def test_level_cap(self):
        with pytest.raises(ValueError):
            doubling_bounds(A3, ONE, MAX_DOUBLING_LEVEL + 1)
        seq = doubling_bounds(A3, ONE, MAX_DOUBLING_LEVEL)
        assert seq.ks[-1] == 2**30
        assert seq.bounds[-1] == pytest.approx(1, rel=1e-6)

    def test_invalid_k(self):
        with pytest.raises(ValueError):
            largest_bound(A3, ONE, 0)

    def test_estimates(self):
        est = estimate_largest(A3, INF, 1e-3, 20)
        assert 1 <= est.estimate <= 1.01
        assert est.converged
        est = estimate_largest(L4, ONE)
        assert 4 <= est.estimate <= 4.01

    def test_rel_tol_positive(self):
        with pytest.raises(ValueError):
            estimate_largest(A3, ONE, 0.0)

    @pytest.mark.parametrize("p", BOTH)
    def test_dominance(self, rng, p):
        for _ in range(150):
            n = int(rng.integers(2, 8))
            a = validate_ematrix(random_ematrix(rng, n))
            top = nontrivial_extremes(a.matrix, a.trivial_eigenvalue).largest_modulus
            for k in range(1, 6):
                assert largest_bound(a, p, k) >= top - 1e-7

    @pytest.mark.parametrize("p", BOTH)
    def test_repeated_trivial_eigenvalue(self, rng, p):
        for _ in range(50):
            m = int(rng.integers(1, 4))
            lam = rng.uniform(-5, 5)
            blocks = []
            for _ in range(2):
                x = rng.uniform(-5, 5, size=(m + 1, m + 1))
                blocks.append(x - ((x.sum(1) - lam) / (m + 1))[:, None])
            n = 2 * (m + 1)
            a = np.zeros((n, n))
            a[: m + 1, : m + 1] = blocks[0]
            a[m + 1 :, m + 1 :] = blocks[1]
            ea = validate_ematrix(a)
            assert np.sum(np.abs(spectrum(a).eigenvalues - lam) < 1e-4) >= 2
            for k in (1, 2, 3, 8):
                assert largest_bound(ea, p, k) >= abs(lam) - 1e-7

    @pytest.mark.parametrize("p", BOTH)
    def test_doubling_monotone(self, rng, p):
        for _ in range(200):
            a = validate_ematrix(random_ematrix(rng, int(rng.integers(2, 9))))
            b = doubling_bounds(a, p, 10).bounds
            assert all(y <= x + 1e-12 for x, y in zip(b, b[1:]))

    @pytest.mark.parametrize("p", BOTH)
    @pytest.mark.parametrize("alpha", [-1.0, 2.0])
    def test_shift_insensitive(self, rng, p, alpha):
        for _ in range(50):
            a = validate_ematrix(random_ematrix(rng, int(rng.integers(2, 8))))
            b = add_rank_one_shift(a, alpha)
            for k in (1, 2, 3, 5):
                assert largest_bound(b, p, k) == pytest.approx(largest_bound(a, p, k), rel=1e-9, abs=1e-9)

    def test_convergence(self, rng):
        done = 0
        while done < 60:
            a = validate_ematrix(random_ematrix(rng, int(rng.integers(2, 9))))
            mods = np.sort(np.abs(np.delete(spectrum(a).eigenvalues, 0)))
            ev = spectrum(a).eigenvalues
            nt = np.abs(np.delete(ev, np.argmin(np.abs(ev - a.trivial_eigenvalue))))
            top = nt.max()
            lower = nt[nt < top * (1 - 1e-9)]
            if top <= 0 or (lower.size and top < 1.05 * lower.max()):
                continue
            for p in BOTH:
                est = estimate_largest(a, p, max_level=14)
                assert abs(est.estimate - top) / max(1.0, top) < 1e-2
            done += 1

    def test_huge_entries(self):
        a = validate_ematrix(A3.matrix * 1e150)
        assert largest_bound(a, ONE, 40) == pytest.approx(1e150 * largest_bound(A3, ONE, 40), rel=1e-9)


class TestSimplicity:
    def test_dominant_example(self):
        rep = simplicity_check(validate_ematrix(FIXTURES.dominant), INF)
        assert rep.trivial_eigenvalue == 9 and rep.tau_value == 8
        assert rep.is_certified_simple and rep.gap_lower_bound >= 1

    def test_identity_not_certified(self):
        rep = simplicity_check(validate_ematrix(np.eye(3)), ONE)
        assert rep.tau_value == 1 and not rep.is_certified_simple

    @pytest.mark.parametrize("p", BOTH)
    def test_ones(self, p):
        rep = simplicity_check(validate_ematrix(2 * ones(3)), p)
        assert rep.is_certified_simple and rep.gap_lower_bound == pytest.approx(6)

    def test_certificate_holds(self, rng):
        for _ in range(200):
            a = validate_ematrix(random_ematrix(rng, int(rng.integers(2, 8))))
            for p in BOTH:
                rep = simplicity_check(a, p)
                assert rep.is_certified_simple == (abs(rep.trivial_eigenvalue) > rep.tau_value)
                if rep.is_certified_simple:
                    assert rep.gap_lower_bound > 0
                    ev = spectrum(a).eigenvalues
                    others = np.delete(ev, np.argmin(np.abs(ev - a.trivial_eigenvalue)))
                    assert np.all(np.abs(others - a.trivial_eigenvalue) >= rep.gap_lower_bound - 1e-7)


class TestSmallest:
    def test_shifted_laplacian(self):
        m = add_rank_one_shift(L4, 1.0)
        assert smallest_bound_nonsingular(m, ONE, 1) == pytest.approx(1)
        assert smallest_bound_nonsingular(m, INF, 1) == pytest.approx(0.8)
        est = estimate_smallest(m, ONE, 1e-3)
        assert 0.99 <= est.estimate <= 1 + 1e-12

    def test_scaled_identity(self):
        two = validate_ematrix(2 * np.eye(3))
        assert smallest_bound_nonsingular(two, ONE, 1) == pytest.approx(2)
        est = estimate_smallest(two, ONE)
        assert est.estimate == pytest.approx(2) and est.levels_used == 0

    def test_singular_route(self):
        assert smallest_bound_singular(L4, ONE, 1, 1.0) == pytest.approx(1)
        assert smallest_bound_singular(L4, INF, 1, 1.0) == pytest.approx(0.8)
        assert smallest_bound_singular(L4, ONE, 1, 2.0) == pytest.approx(smallest_bound_singular(L4, ONE, 1, 1.0), abs=1e-9)

    def test_alpha_independence(self, rng):
        for alpha in (0.3, -0.7, 2.5, 10.0):
            for p in BOTH:
                for k in (1, 2, 3):
                    ref = smallest_bound_singular(L6, p, k, 1.0)
                    assert smallest_bound_singular(L6, p, k, alpha) == pytest.approx(ref, rel=1e-8)

    def test_singular_estimate(self):
        lam2 = np.sort(spectrum(L6.matrix).eigenvalues.real)[1]
        est = estimate_smallest(L6, ONE, 1e-3, alpha=1.0)
        assert lam2 - 0.01 <= est.estimate <= lam2 + 1e-12

    def test_singular_without_alpha(self):
        with pytest.raises(SingularMatrix):
            smallest_bound_nonsingular(L4, ONE, 1)

    def test_needs_zero_trivial(self):
        with pytest.raises(TrivialEigenvalueNotZero):
            smallest_bound_singular(A3, ONE, 1, 1.0)

    def test_zero_alpha(self):
        with pytest.raises(ValueError):
            smallest_bound_singular(L4, ONE, 1, 0.0)

    def test_bad_alpha_singular(self):
        # A + alpha J singular once more because 0 is a repeated eigenvalue
        disc = validate_ematrix(FIXTURES.laplacian_disconnected)
        with pytest.raises(SingularMatrix):
            smallest_bound_singular(disc, ONE, 1, 1.0)

    def test_degenerate(self):
        with pytest.raises(DegenerateCoefficient):
            smallest_bound_nonsingular(validate_ematrix([[2.0]]), ONE, 1)

    def test_default_alpha(self):
        assert default_alpha(L4) == 3
        assert default_alpha(validate_ematrix(0.1 * np.eye(2))) == 1

    def test_doubling_sequence_alpha_recorded(self):
        seq = smallest_doubling_bounds(L4, INF, 3, alpha=1.0)
        assert seq.alpha == 1.0 and seq.target is Target.SMALLEST_NON_TRIVIAL
        assert all(y >= x - 1e-12 for x, y in zip(seq.bounds, seq.bounds[1:]))

    @pytest.mark.parametrize("p", BOTH)
    def test_duality(self, rng, p):
        done = 0
        while done < 100:
            a = validate_ematrix(random_ematrix(rng, int(rng.integers(2, 8))))
            ex = nontrivial_extremes(a.matrix, a.trivial_eigenvalue)
            if ex.smallest_modulus < 0.05 or abs(a.trivial_eigenvalue) < 0.05:
                continue
            for k in (1, 2, 3, 4):
                assert smallest_bound_nonsingular(a, p, k) <= ex.smallest_modulus + 1e-7
            done += 1


class TestProbe:
    def test_constant(self):
        pr = constancy_probe(A3, INF, 10)
        assert [v for _, v in pr.values] == [2] * 10
        assert pr.constant_all and pr.first_two_equal
        assert not pr.refutes_two_step_conjecture

    def test_permuted(self):
        pr = constancy_probe(B3, INF, 2)
        assert [v for _, v in pr.values] == [2, 4]
        assert not pr.constant_all and not pr.first_two_equal

    @pytest.mark.parametrize("p", BOTH)
    def test_ones(self, p):
        pr = constancy_probe(validate_ematrix(ones(3)), p, 6)
        assert all(v == 0 for _, v in pr.values) and pr.constant_all

    def test_limit(self):
        with pytest.raises(ValueError):
            constancy_probe(A3, ONE, 21)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**31 - 1), st.integers(2, 6))
    def test_matches_direct_powers(self, seed, n):
        a = validate_ematrix(random_ematrix(np.random.default_rng(seed), n))
        pr = constancy_probe(a, ONE, 5)
        from ergocoef.coefficients import tau_1

        for k, v in pr.values:
            direct = tau_1(np.linalg.matrix_power(a.matrix, k))
            assert v == pytest.approx(direct, rel=1e-7, abs=1e-7 * max(1.0, np.abs(np.linalg.matrix_power(a.matrix, k)).max()))
