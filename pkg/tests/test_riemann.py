import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyzeta.errors import AmbiguousError, ArgumentError, MissedZeroError
from polyzeta.riemann import (
    CountingCurve,
    exact_count,
    find_zeros,
    fluctuation_sum,
    smooth_count,
    staircase,
    z_function,
    z_function_em,
    z_function_rs,
    zeta_em,
)

# ordinates of the first zeros from mpmath.zetazero (independent oracle)
MPMATH_ZEROS = [14.134725141734694, 21.022039638771555, 25.010857580145689, 77.144840068874805,
                98.831194218193692]


@pytest.fixture(scope="module")
def zeros100():
    return find_zeros(100.0)


@pytest.mark.parametrize("s", [2.0, 0.5 + 14j, 0.5 + 50j, 0.3 + 90j, 3 - 5j])
def test_zeta_em_matches_mpmath(s):
    assert abs(zeta_em(s) - complex(mpmath.zeta(s))) < 1e-11


@pytest.mark.parametrize("t", [1.0, 10.0, 14.0, 29.9, 30.1, 55.5, 99.0, 250.0, 900.0])
def test_z_function_matches_mpmath(t):
    assert abs(z_function(t) - float(mpmath.siegelz(t))) < 1e-6


def test_z_routes_agree_on_sign_and_value():
    rng = np.random.default_rng(1)
    t = rng.uniform(30.0, 100.0, 1000)
    em, rs = z_function_em(t), z_function_rs(t)
    assert np.all(np.abs(em - rs) < 1e-4)
    big = np.abs(em) > 1e-4
    assert np.all(np.sign(em[big]) == np.sign(rs[big]))


def test_z_routes_same_sign_at_ten():
    assert np.sign(z_function_em(10.0)) == np.sign(z_function_rs(10.0))


def test_first_zero_bracket():
    assert z_function(14.0) * z_function(14.2) < 0


def test_z_sign_at_20_5():
    # one zero below 20.5 and the next at 21.02: Z has flipped once from its sign near 14
    assert np.sign(z_function(20.5)) == -np.sign(z_function(14.0))


def test_z_function_rejects_nonpositive():
    with pytest.raises(ArgumentError):
        z_function(0.0)


def test_find_zeros_examples(zeros100):
    assert len(find_zeros(15.0)) == 1
    assert abs(find_zeros(15.0).zeros[0] - 14.134725) < 1e-6
    assert len(find_zeros(14.0)) == 0
    assert len(zeros100) == 29


def test_find_zeros_against_mpmath(zeros100):
    z = zeros100.zeros
    for ref in MPMATH_ZEROS:
        assert np.min(np.abs(z - ref)) < 1e-6


def test_find_zeros_finer_recount(zeros100):
    fine = find_zeros(100.0, step=0.0125)
    assert len(fine) == len(zeros100)
    assert np.max(np.abs(fine.zeros - zeros100.zeros)) < 1e-8


def test_find_zeros_ascending(zeros100):
    assert np.all(np.diff(zeros100.zeros) > 0)


def test_coarse_scan_raises():
    with pytest.raises(MissedZeroError):
        find_zeros(200.0, step=3.0)


def test_find_zeros_rejects_bad_limits():
    with pytest.raises(ArgumentError):
        find_zeros(-1.0)
    with pytest.raises(ArgumentError):
        find_zeros(2000.0)


def test_exact_count_examples():
    assert exact_count(10.0) == 0
    assert exact_count(15.0) == 1
    assert exact_count(50.0) == 10
    assert exact_count(100.0) == len(find_zeros(100.0))


def test_exact_count_ambiguous(zeros100):
    with pytest.raises(AmbiguousError):
        exact_count(float(zeros100.zeros[0]))


def test_staircase_consistency(zeros100):
    tol = zeros100.tol
    for t in zeros100.zeros[:5]:
        assert exact_count(t - 5 * tol) + 1 == exact_count(t + 5 * tol)


def test_staircase_curve(zeros100):
    e = np.linspace(1.0, 99.0, 300)
    curve = staircase(e, zeros100)
    assert curve.method == "exact-staircase"
    assert np.all(np.diff(curve.values) >= 0)
    assert np.all(curve.values == np.round(curve.values))


def test_counting_curve_length_check():
    with pytest.raises(ArgumentError):
        CountingCurve(np.arange(3.0), np.arange(2.0), "smooth")


def test_smooth_count_values():
    assert smooth_count(2 * math.pi * math.e) == pytest.approx(0.875, abs=1e-14)
    # (E/2pi)(ln(E/2pi) - 1) + 7/8 at E = 2pi
    assert smooth_count(2 * math.pi) == pytest.approx(-0.125, abs=1e-15)
    assert abs(smooth_count(100.0) - 29) < 1.0
    with pytest.raises(ArgumentError):
        smooth_count(0.0)


def test_fluctuation_sum_trivial_cases():
    assert fluctuation_sum(0.0) == 0.0
    E = 7.3
    single = -math.sin(E * math.log(2.0)) / (math.pi * math.sqrt(2.0))
    assert fluctuation_sum(E, 2, 1) == pytest.approx(single, abs=1e-15)


def test_fluctuation_sum_matches_direct_loop():
    E, limit, n_max = 37.2, 200, 4
    primes = [p for p in range(2, limit + 1) if all(p % d for d in range(2, int(p**0.5) + 1))]
    ref = -sum(math.sin(n * E * math.log(p)) / (n * p ** (n / 2)) for p in primes
               for n in range(1, n_max + 1)) / math.pi
    assert fluctuation_sum(E, limit, n_max) == pytest.approx(ref, abs=1e-13)


def test_fluctuation_sum_preconditions():
    for args in ((-1.0, 100, 1), (1.0, 1, 1), (1.0, 100, 0)):
        with pytest.raises(ArgumentError):
            fluctuation_sum(*args)


def test_explicit_formula_at_30(zeros100):
    z = zeros100.zeros
    i = np.searchsorted(z, 30.0)
    mid = 0.5 * (z[i - 1] + z[i])
    n = exact_count(mid)
    assert abs(smooth_count(mid) + fluctuation_sum(mid, 10_000, 10) - n) < 0.5


def test_explicit_formula_tracks_first_twenty(zeros100):
    z = zeros100.zeros[:21]
    mids = 0.5 * (z[:-1] + z[1:])
    n = np.arange(1, 21)
    assert np.all(np.abs(smooth_count(mids) + fluctuation_sum(mids) - n) < 0.5)


@given(st.floats(30.0, 400.0))
@settings(max_examples=40, deadline=None)
def test_rs_vs_em_property(t):
    assert abs(z_function_rs(t) - z_function_em(t)) < 1e-5
