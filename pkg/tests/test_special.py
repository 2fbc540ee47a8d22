import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from entrokit import digamma, log_gamma, trigamma
from entrokit.errors import DomainError

EULER_GAMMA = 0.5772156649015328606
PI2_6 = math.pi**2 / 6.0


def scaled_err(got, want):
    return abs(got - want) / (1.0 + abs(want))


class TestPins:
    def test_log_gamma_at_integers(self):
        assert abs(log_gamma(1.0)) <= 1e-13
        assert abs(log_gamma(2.0)) <= 1e-13

    def test_log_gamma_half(self):
        # Gamma(1/2) = sqrt(pi); value cross-checked by high-precision
        # quadrature of the defining integral
        assert scaled_err(log_gamma(0.5), 0.5 * math.log(math.pi)) <= 1e-13

    def test_digamma_one_and_two(self):
        assert abs(digamma(1.0) + EULER_GAMMA) <= 1e-12
        assert abs(digamma(2.0) - (1.0 - EULER_GAMMA)) <= 1e-12

    def test_digamma_recurrence_at_7_5(self):
        assert abs(digamma(7.5) - (digamma(6.5) + 1.0 / 6.5)) <= 1e-12

    def test_trigamma_one_and_two(self):
        assert abs(trigamma(1.0) - PI2_6) <= 1e-12
        assert abs(trigamma(2.0) - (PI2_6 - 1.0)) <= 1e-12

    def test_trigamma_sandwich_at_3_7(self):
        x = 3.7
        assert 1.0 / x < trigamma(x) < 1.0 / x + 1.0 / x**2


def trigamma_series_oracle(z, n_terms=2_000_000):
    """Direct summation of sum 1/(z+n)^2 with an integral bracket on the tail.

    The tail lies between 1/(z+N) and 1/(z+N-1); the midpoint correction
    leaves an error below half the bracket width, about 1/(2 N^2).
    """
    n = np.arange(n_terms, dtype=float)
    s = float(np.sum(1.0 / ((z + n) ** 2)))
    lo, hi = 1.0 / (z + n_terms), 1.0 / (z + n_terms - 1.0)
    return s + 0.5 * (lo + hi), 0.5 * (hi - lo)


@pytest.mark.parametrize("z", [1.0, 2.0, 0.37, 5.25, 41.0])
def test_trigamma_against_series_summation(z):
    want, bracket = trigamma_series_oracle(z)
    assert abs(trigamma(z) - want) <= bracket + 1e-12


class TestRecurrences:
    def test_recurrences_hold_on_random_arguments(self):
        rng = np.random.default_rng(7)
        x = rng.uniform(1e-6, 100.0, size=10_000)
        assert np.max(np.abs(log_gamma(x + 1.0) - log_gamma(x) - np.log(x))
                      / (1.0 + np.abs(log_gamma(x)))) <= 1e-12
        assert np.max(np.abs(digamma(x + 1.0) - digamma(x) - 1.0 / x)
                      / (1.0 + np.abs(digamma(x)))) <= 1e-12
        assert np.max(np.abs(trigamma(x + 1.0) - trigamma(x) + 1.0 / x**2)
                      / (1.0 + np.abs(trigamma(x)))) <= 1e-12

    @given(st.floats(min_value=1e-3, max_value=1e3))
    def test_digamma_recurrence_property(self, x):
        assert abs(digamma(x + 1.0) - digamma(x) - 1.0 / x) <= 1e-10 * (1 + abs(digamma(x)))


class TestBounds:
    def test_trigamma_sandwich_everywhere(self):
        rng = np.random.default_rng(11)
        x = np.concatenate([rng.uniform(1e-6, 100.0, 5000), 10 ** rng.uniform(-6, 6, 5000)])
        t = trigamma(x)
        assert np.all(t > 1.0 / x)
        assert np.all(t < 1.0 / x + 1.0 / x**2)

    def test_digamma_below_log(self):
        rng = np.random.default_rng(12)
        x = 10 ** rng.uniform(-6, 6, 10_000)
        assert np.all(digamma(x) < np.log(x))

    def test_monotonicity(self):
        x = np.geomspace(1e-4, 1e4, 400)
        assert np.all(np.diff(digamma(x)) > 0)
        assert np.all(np.diff(trigamma(x)) < 0)


class TestAccuracyRange:
    def test_scaled_accuracy_against_mpmath(self):
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 30
        rng = np.random.default_rng(3)
        xs = np.concatenate([10 ** rng.uniform(-6, 6, 200), [1e-6, 1.0, 2.0, 10.0, 1e6]])
        for x in xs:
            x = float(x)
            assert scaled_err(log_gamma(x), float(mp.loggamma(x))) <= 1e-13
            assert scaled_err(digamma(x), float(mp.digamma(x))) <= 1e-12
            assert scaled_err(trigamma(x), float(mp.polygamma(1, x))) <= 1e-12


class TestDomain:
    @pytest.mark.parametrize("bad", [0.0, -1.0, math.nan, math.inf])
    @pytest.mark.parametrize("fn", [log_gamma, digamma, trigamma])
    def test_rejects_nonpositive(self, fn, bad):
        with pytest.raises(DomainError):
            fn(bad)

    def test_rejects_bad_array_element(self):
        with pytest.raises(DomainError):
            digamma(np.array([1.0, -2.0]))
