import itertools
import math

import numpy as np
import pytest

from entrokit import (CovMatrix, cholesky_pivots, det_psd, fgn_covariance,
                      fgn_det_sweep, gaussian_entropy, hadamard_gap,
                      rank1_extremal_vector, shannon, Normal)
from entrokit.errors import (NotPSDError, ParameterError,
                             SingularCovarianceError)


def cofactor_det(m):
    """Brute-force determinant by permutation expansion (n <= 5 test oracle)."""
    n = m.shape[0]
    total = 0.0
    for perm in itertools.permutations(range(n)):
        sign = 1.0
        seen = list(perm)
        for i in range(n):  # parity via cycle counting
            while seen[i] != i:
                j = seen[i]
                seen[i], seen[j] = seen[j], seen[i]
                sign = -sign
        total += sign * math.prod(m[i, perm[i]] for i in range(n))
    return total


def random_psd(rng, n):
    b = rng.normal(size=(n, n))
    return b.T @ b + 1e-3 * np.eye(n)


class TestCovMatrix:
    def test_validation(self):
        with pytest.raises(ParameterError):
            CovMatrix(np.zeros((2, 3)))
        with pytest.raises(ParameterError):
            CovMatrix(np.array([[1.0, 0.5], [0.2, 1.0]]))
        with pytest.raises(ParameterError):
            CovMatrix(np.array([[0.0, 0.0], [0.0, 1.0]]))

    def test_not_psd_rejected_at_construction(self):
        with pytest.raises(NotPSDError):
            CovMatrix(np.array([[1.0, 2.0], [2.0, 1.0]]))

    def test_entries_read_only(self):
        a = CovMatrix(np.eye(2))
        with pytest.raises(ValueError):
            a.entries[0, 0] = 5.0


class TestDetPsd:
    def test_identity(self):
        assert det_psd(CovMatrix(np.eye(5))) == (1.0, False)

    def test_diagonal(self):
        res = det_psd(CovMatrix(np.diag([2.0, 3.0, 5.0])))
        assert res.value == pytest.approx(30.0, rel=1e-13)
        assert not res.singular

    def test_rank_one_is_flagged_zero(self):
        a = rank1_extremal_vector([1.0, 4.0, 9.0], [1, 1, 1])
        res = det_psd(a)
        assert res.value == 0.0 and res.singular

    def test_brute_force_equivalence(self, rng):
        for _ in range(1000):
            n = int(rng.integers(1, 6))
            a = random_psd(rng, n)
            want = cofactor_det(a)
            got = det_psd(CovMatrix(a)).value
            assert got == pytest.approx(want, rel=1e-10, abs=1e-12)


class TestGaussianEntropy:
    def test_scalar_matches_normal_formula(self):
        assert gaussian_entropy(CovMatrix(np.array([[1.0]]))) == pytest.approx(
            0.5 * (1.0 + math.log(2.0 * math.pi)), abs=1e-13)

    def test_identity_three(self):
        assert gaussian_entropy(CovMatrix(np.eye(3))) == pytest.approx(
            1.5 * (1.0 + math.log(2.0 * math.pi)), abs=1e-13)

    def test_singular_raises(self):
        a = rank1_extremal_vector([1.0, 2.0], [1, -1])
        with pytest.raises(SingularCovarianceError):
            gaussian_entropy(a)

    def test_diagonal_decomposes_into_scalar_entropies(self):
        diag = [0.3, 1.0, 2.5, 7.0]
        total = gaussian_entropy(CovMatrix(np.diag(diag)))
        parts = sum(shannon(Normal(0.0, v)) for v in diag)
        assert total == pytest.approx(parts, abs=1e-11)


class TestHadamard:
    def test_diagonal_gap_zero(self):
        assert hadamard_gap(CovMatrix(np.diag([2.0, 3.0]))) == 0.0

    def test_rank_one_gap_is_full_product(self):
        a = rank1_extremal_vector([1.0, 4.0, 9.0], [1, 1, 1])
        assert hadamard_gap(a) == pytest.approx(36.0, rel=1e-12)

    def test_random_psd_gap_positive(self, rng):
        for _ in range(300):
            a = random_psd(rng, int(rng.integers(2, 6)))
            gap = hadamard_gap(CovMatrix(a))
            scale = float(np.prod(np.diag(a)))
            assert gap >= -1e-10 * scale
            if np.max(np.abs(a - np.diag(np.diag(a)))) > 1e-6:
                assert gap > 0.0


class TestFgn:
    def test_half_is_identity(self):
        assert np.array_equal(fgn_covariance(4, 0.5).entries, np.eye(4))

    def test_one_is_all_ones(self):
        assert np.array_equal(fgn_covariance(4, 1.0).entries, np.ones((4, 4)))

    def test_lag_one_at_07(self):
        want = 0.5 * (2.0**1.4 - 2.0)
        assert fgn_covariance(2, 0.7).entries[0, 1] == pytest.approx(want, rel=1e-14)

    def test_h_zero_covariance_table(self):
        a = fgn_covariance(4, 0.0).entries
        assert np.all(np.diag(a) == 1.0)
        assert a[0, 1] == -0.5
        assert a[0, 2] == 0.0 and a[0, 3] == 0.0

    def test_validation(self):
        with pytest.raises(ParameterError):
            fgn_covariance(0, 0.5)
        with pytest.raises(ParameterError):
            fgn_covariance(3, 1.5)

    def test_nondegenerate_inside_open_interval(self):
        # positive definiteness checked through the factorization pivots,
        # which stay meaningful even when det underflows the report floor
        for h in np.linspace(0.01, 0.99, 99):
            pivots = cholesky_pivots(fgn_covariance(50, float(h)))
            assert np.all(pivots > 0.0)

    def test_sweep_endpoints_and_range(self):
        rows = fgn_det_sweep(5, list(np.linspace(0.1, 0.9, 9)) + [1.0])
        by_h = {round(r.hurst, 3): r for r in rows}
        assert by_h[0.5].det == pytest.approx(1.0, abs=1e-12)
        assert by_h[1.0].det == 0.0 and by_h[1.0].singular
        assert by_h[1.0].entropy is None
        assert all(0.0 <= r.det <= 1.0 + 1e-12 for r in rows)
        assert max(r.det for r in rows) == by_h[0.5].det


class TestRank1Extremal:
    def test_two_by_two_signs(self):
        a = rank1_extremal_vector([1.0, 1.0], [1, -1])
        assert np.array_equal(a.entries, np.array([[1.0, -1.0], [-1.0, 1.0]]))
        assert det_psd(a) == (0.0, True)

    def test_case_two_matrix(self):
        a = rank1_extremal_vector([4.0, 9.0, 25.0], [1, 1, 1])
        assert np.array_equal(np.diag(a.entries), np.array([4.0, 9.0, 25.0]))
        assert a.entries[0, 1] == pytest.approx(6.0, rel=1e-15)
        assert det_psd(a).value == 0.0

    def test_single_component(self):
        a = rank1_extremal_vector([3.0], [-1])
        assert det_psd(a) == (3.0, False)

    def test_validation(self):
        with pytest.raises(ParameterError):
            rank1_extremal_vector([1.0, 2.0], [1])
        with pytest.raises(ParameterError):
            rank1_extremal_vector([1.0, -2.0], [1, 1])
        with pytest.raises(ParameterError):
            rank1_extremal_vector([1.0, 2.0], [1, 2])
