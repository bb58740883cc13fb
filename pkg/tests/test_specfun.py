import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyzeta.errors import ArgumentError, PoleError
from polyzeta.specfun import (
    gamma_ratio_phase,
    log_gamma,
    primes_up_to,
    riemann_siegel_theta,
    riemann_siegel_theta_asymptotic,
)


def trial_division_primes(n):
    return [k for k in range(2, n + 1) if all(k % d for d in range(2, math.isqrt(k) + 1))]


@pytest.mark.parametrize("z", [0.5, 1.0, 2.5 + 0.1j, 0.25 + 3j, -2.5 + 0.5j, 30 - 40j, 0.001 + 200j])
def test_log_gamma_matches_mpmath(z):
    ref = complex(mpmath.loggamma(z))
    assert abs(log_gamma(z) - ref) < 1e-13 * max(1.0, abs(ref))


def test_log_gamma_known_values():
    assert abs(log_gamma(1.0)) < 1e-14
    assert abs(log_gamma(0.5) - 0.5 * math.log(math.pi)) < 1e-14


def test_log_gamma_vectorised():
    z = np.array([[1.5 + 2j, 3.0], [0.1j + 4, 7 - 1j]])
    out = log_gamma(z)
    assert out.shape == z.shape
    for a, b in zip(out.ravel(), z.ravel()):
        assert abs(a - log_gamma(complex(b))) < 1e-15


@pytest.mark.parametrize("z", [0, -1, -7.0, -3 + 0j])
def test_log_gamma_poles(z):
    with pytest.raises(PoleError):
        log_gamma(z)


@given(st.floats(-50, 50), st.floats(0.2, 60))
@settings(max_examples=60, deadline=None)
def test_log_gamma_recurrence(y, x):
    z = complex(x, y)
    diff = log_gamma(z + 1) - log_gamma(z) - np.log(z)
    # equal modulo 2 pi i
    assert abs(diff.real) < 1e-11
    assert abs((diff.imag + math.pi) % (2 * math.pi) - math.pi) < 1e-10


@given(st.floats(-500, 500), st.floats(0.5, 3.0))
@settings(max_examples=60, deadline=None)
def test_gamma_ratio_unimodular(E, hbar):
    assert abs(abs(gamma_ratio_phase(E, hbar)) - 1.0) < 1e-13


def test_gamma_ratio_matches_mpmath():
    E = 3.7
    ref = complex(mpmath.gamma(0.25 + 0.5j * E) / mpmath.gamma(0.25 - 0.5j * E))
    assert abs(gamma_ratio_phase(E) - ref) < 1e-13
    assert gamma_ratio_phase(0.0) == 1


@pytest.mark.parametrize("t", [0.5, 10.0, 14.134725, 100.0, 999.0])
def test_theta_matches_mpmath(t):
    assert abs(riemann_siegel_theta(t) - float(mpmath.siegeltheta(t))) < 1e-12 * max(1.0, t)


def test_theta_asymptotic_converges():
    t = np.array([20.0, 50.0, 200.0])
    assert np.all(np.abs(riemann_siegel_theta(t) - riemann_siegel_theta_asymptotic(t)) < 1e-8)


def test_theta_rejects_nonpositive():
    with pytest.raises(ArgumentError):
        riemann_siegel_theta(0.0)


@pytest.mark.parametrize("n", [2, 3, 10, 97, 1000, 5003])
def test_sieve_matches_trial_division(n):
    assert primes_up_to(n).primes.tolist() == trial_division_primes(n)


def test_sieve_prime_count_million():
    assert len(primes_up_to(10**6)) == 78498


@given(st.integers(2, 30_000), st.integers(1, 5000))
@settings(max_examples=40, deadline=None)
def test_sieve_independent_of_segment_size(n, seg):
    assert np.array_equal(primes_up_to(n, seg).primes, primes_up_to(n).primes)


@pytest.mark.parametrize("n", [1, 0, -5, 2.5, 2**31 + 1])
def test_sieve_rejects_bad_limit(n):
    with pytest.raises(ArgumentError):
        primes_up_to(n)


def stirling_oracle(z, terms=50, shift=60):
    """High-precision shifted Stirling series for log Gamma, independent of the library."""
    mpmath.mp.dps = 60
    z = mpmath.mpc(z)
    acc = mpmath.mpc(0)
    w = z
    for _ in range(shift):
        acc += mpmath.log(w)
        w += 1
    s = (w - 0.5) * mpmath.log(w) - w + 0.5 * mpmath.log(2 * mpmath.pi)
    for k in range(1, terms + 1):
        s += mpmath.bernoulli(2 * k) / (2 * k * (2 * k - 1) * w ** (2 * k - 1))
    out = complex(s - acc)
    mpmath.mp.dps = 15
    return out


def test_log_gamma_against_stirling_oracle():
    z = 0.25 + 7.0j
    ref = stirling_oracle(z)
    assert abs(ref - complex(mpmath.loggamma(z))) < 1e-14
    assert abs(log_gamma(z) - ref) < 1e-13


@given(st.floats(-19, 19), st.floats(0.05, 19))
@settings(max_examples=100, deadline=None)
def test_reflection_formula(x, y):
    z = complex(x, y if x * x + y * y < 400 else 0.5)
    lhs = np.exp(log_gamma(z) + log_gamma(1 - z))
    rhs = math.pi / np.sin(math.pi * z)
    assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(rhs))


def test_gamma_ratio_conjugation():
    assert abs(gamma_ratio_phase(-10.0) - np.conj(gamma_ratio_phase(10.0))) < 1e-15
    assert abs(abs(gamma_ratio_phase(10.0)) - 1.0) < 1e-12


def test_theta_first_sign_change():
    lo, hi = 17.0, 18.0
    assert riemann_siegel_theta(lo) < 0 < riemann_siegel_theta(hi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if riemann_siegel_theta(mid) < 0:
            lo = mid
        else:
            hi = mid
    assert abs(lo - 17.8456) < 1e-4
    assert abs(riemann_siegel_theta_asymptotic(lo)) < 1e-3


def test_theta_small_t_finite():
    assert math.isfinite(riemann_siegel_theta(1e-3))


def test_small_prime_lists():
    assert primes_up_to(2).primes.tolist() == [2]
    assert primes_up_to(30).primes.tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_sieve_all_limits_to_ten_thousand():
    ref = np.array(trial_division_primes(10_000))
    full = primes_up_to(10_000).primes
    assert np.array_equal(full, ref)
    for n in range(2, 10_001, 37):
        assert np.array_equal(primes_up_to(n, 64).primes, ref[ref <= n])
