import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from polyzeta.errors import (
    ArgumentError,
    BranchError,
    DomainError,
    EmptyRegionError,
    NonMonotoneError,
)
from polyzeta.findings import poly_offset_tail
from polyzeta.phase_space import (
    ClassicalHamiltonian,
    PhaseSpaceCuts,
    area_count_oracle,
    contour_momentum_limit,
    h_eval,
    n_bk,
    n_bk_integral,
    n_poly_asymptotic,
    n_poly_closed,
    n_sierra_poly_asymptotic,
)

TWO_PI = 2 * math.pi
CUTS = PhaseSpaceCuts.symmetric()
# area counts from mpmath.quad at 30 digits (independent oracle), frozen
XP_POLY_E50_MU001 = 9.57399085735281110794694131111
SIERRA_POLY_E200_MU001 = 67.4982723213191108074870591575
SIERRA_E200 = 68.3021829073399695153145010991


def test_h_eval_examples():
    assert h_eval(ClassicalHamiltonian("xp"), 3, 2) == 6
    assert h_eval(ClassicalHamiltonian("xp-polymer", 1.0), 3, math.pi / 2) == pytest.approx(3, abs=1e-15)
    assert h_eval(ClassicalHamiltonian("sierra", 0.0, 1.0), 2, 1) == 4


def test_h_eval_domain_errors():
    with pytest.raises(DomainError):
        h_eval(ClassicalHamiltonian("sierra", 0.0, 1.0), 1, 0)
    with pytest.raises(DomainError):
        h_eval(ClassicalHamiltonian("xp-polymer", 1.0), 1, 4.0)
    with pytest.raises(ArgumentError):
        ClassicalHamiltonian("yx")


def test_polymer_kind_with_zero_scale_is_parent():
    h = ClassicalHamiltonian("sierra-polymer", 0.0, 2.0)
    assert h.base_kind == "sierra"
    assert h_eval(h, 1.0, 2.0) == 4.0


@pytest.mark.parametrize("kind,mu0,lp", [("xp", 0, 1), ("xp-polymer", 0.01, 1), ("sierra", 0, 1.5),
                                         ("sierra-polymer", 0.01, 1.5)])
@given(E=st.floats(20.0, 95.0))
@settings(max_examples=25, deadline=None)
def test_contour_limit_lies_on_contour(kind, mu0, lp, E):
    h = ClassicalHamiltonian(kind, mu0, lp)
    cuts = PhaseSpaceCuts(1.0, 2.0)
    p_star = contour_momentum_limit(h, E, cuts)
    assert h_eval(h, cuts.l_x, p_star) == pytest.approx(E, rel=1e-12)


def test_contour_turnover_raises():
    with pytest.raises(NonMonotoneError):
        contour_momentum_limit(ClassicalHamiltonian("xp-polymer", 0.1), 50.0, CUTS)


def test_oracle_corner_and_empty():
    h = ClassicalHamiltonian("xp")
    assert area_count_oracle(h, CUTS.l_x * CUTS.l_p, CUTS) == 0.0
    with pytest.raises(EmptyRegionError):
        area_count_oracle(h, 1.0, CUTS)


def test_oracle_xp_at_2pi_e():
    # first-line integral: (E/2pi) ln(E/(l_x l_p)) - (E - l_x l_p)/2pi = e - (e - 1) = 1
    assert area_count_oracle(ClassicalHamiltonian("xp"), TWO_PI * math.e, CUTS) == pytest.approx(1.0, abs=1e-10)


def test_oracle_frozen_values():
    h = ClassicalHamiltonian("xp-polymer", 0.01)
    assert area_count_oracle(h, 50.0, CUTS) == pytest.approx(XP_POLY_E50_MU001, rel=1e-10)
    h = ClassicalHamiltonian("sierra-polymer", 0.01, CUTS.l_p)
    assert area_count_oracle(h, 200.0, CUTS) == pytest.approx(SIERRA_POLY_E200_MU001, rel=1e-10)
    h = ClassicalHamiltonian("sierra", 0.0, CUTS.l_p)
    assert area_count_oracle(h, 200.0, CUTS) == pytest.approx(SIERRA_E200, rel=1e-10)


def test_oracle_against_mpmath_quad():
    h = ClassicalHamiltonian("xp-polymer", 0.03)
    cuts = PhaseSpaceCuts(1.5, 3.0)
    E = 40.0
    p_star = mpmath.asin(E * 0.03 / 1.5) / 0.03
    ref = mpmath.quad(lambda p: E * 0.03 / mpmath.sin(0.03 * p) - 1.5, [3.0, p_star]) / TWO_PI
    assert area_count_oracle(h, E, cuts) == pytest.approx(float(ref), rel=1e-10)


def test_n_bk_examples():
    assert n_bk(TWO_PI) == pytest.approx(0.0, abs=1e-15)
    assert n_bk(TWO_PI * math.e) == pytest.approx(1.0, abs=1e-14)
    assert n_bk(100.0) == pytest.approx(n_bk_integral(100.0, CUTS), abs=1e-10)


def test_n_bk_requires_planck_cell():
    with pytest.raises(ArgumentError):
        n_bk(50.0, PhaseSpaceCuts(1.0, 1.0))


@given(st.floats(7.0, 1e4))
@settings(max_examples=50, deadline=None)
def test_n_bk_integral_and_oracle_agree(E):
    assert n_bk_integral(E, CUTS) == pytest.approx(n_bk(E), abs=1e-10 * max(1.0, E / 100))
    assert area_count_oracle(ClassicalHamiltonian("xp"), E, CUTS) == pytest.approx(n_bk(E), abs=1e-8)


def test_n_poly_closed_examples():
    E = CUTS.l_x * CUTS.l_p
    assert n_poly_closed(E, CUTS, 0.01) == pytest.approx(-E / TWO_PI, abs=1e-14)
    E = 60.0
    limit = E / TWO_PI * (math.log(E / TWO_PI) - 1)
    assert n_poly_closed(E, CUTS, 1e-6) == pytest.approx(limit, abs=1e-8)


def test_n_poly_closed_branch():
    with pytest.raises(BranchError):
        n_poly_closed(400.0, CUTS, 0.1)
    with pytest.raises(BranchError):
        n_poly_closed(1.0, CUTS, 0.01)


def test_oracle_gap_has_closed_form():
    # oracle - closed = l_x l_p / 2pi + endpoint tail, for arbitrary cuts
    for E, mu, cuts in ((50.0, 0.01, CUTS), (30.0, 0.04, PhaseSpaceCuts(2.0, 1.0))):
        oracle = area_count_oracle(ClassicalHamiltonian("xp-polymer", mu), E, cuts)
        gap = oracle - n_poly_closed(E, cuts, mu)
        assert gap == pytest.approx(cuts.planck_cell / TWO_PI + poly_offset_tail(E, cuts, mu), abs=1e-9)


@given(st.floats(10.0, 150.0), st.floats(1e-4, 0.015))
@settings(max_examples=40, deadline=None)
def test_counting_functions_increase(E, mu):
    dE = 0.5
    assume(mu * (E + dE) / CUTS.l_x < 1.0)
    h = ClassicalHamiltonian("xp-polymer", mu)
    assert n_poly_closed(E + dE, CUTS, mu) > n_poly_closed(E, CUTS, mu)
    assert area_count_oracle(h, E + dE, CUTS) > area_count_oracle(h, E, CUTS)
    assert n_bk(E + dE) > n_bk(E)
    assert n_poly_asymptotic(E + dE, CUTS.l_p, mu) > n_poly_asymptotic(E, CUTS.l_p, mu)


def test_mu0_convergence_slope():
    E = 20.0
    limit = E / TWO_PI * (math.log(E / TWO_PI) - 1)
    mus = np.logspace(-3, -1, 9)
    dev = [abs(n_poly_closed(E, CUTS, m) - limit) for m in mus]
    slope = np.polyfit(np.log(mus), np.log(dev), 1)[0]
    assert abs(slope - 2.0) < 0.05


def test_asymptotic_forms():
    E = 123.0
    smooth = E / TWO_PI * (math.log(E / TWO_PI) - 1)
    assert n_poly_asymptotic(E, 2.0, 0.0) == pytest.approx(smooth, abs=1e-14)
    assert n_sierra_poly_asymptotic(E, 2.0, 0.0) == pytest.approx(smooth, abs=1e-14)
    lp, mu = 1.7, 0.2
    diff = n_sierra_poly_asymptotic(E, lp, mu) - n_poly_asymptotic(E, lp, mu)
    assert diff == pytest.approx(E / TWO_PI * 7 / 1440 * (lp * mu) ** 4, rel=1e-10)
    with pytest.raises(ArgumentError):
        n_poly_asymptotic(0.0, 1.0, 0.1)


def test_asymptotic_vectorised():
    E = np.array([10.0, 20.0])
    assert n_poly_asymptotic(E, 1.0, 0.1).shape == (2,)
