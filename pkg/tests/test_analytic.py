import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from spherecross import analytic, quadrature
from spherecross.analytic import AnalyticParams, DomainError

LIMIT = 8 / (9 * math.pi ** 2)

# Frozen with mpmath at 50 digits:
#   g = lambda d: (sin d - d cos d)^2 / (1 - cos d)^3 / pi^2
G_AT_1 = 0.094602559509801725502871382204308307047333595660796
G_AT_1E3 = 0.090063278851908446052394387588758744485743552355526
JOINT_AT_1E4 = 1.4072386588846583935124635820662944760400564699705e-27
EDGES_1000_05 = 30573.755167879414149958674744693544415086612021841


def mp_ratio(d):
    with mp.workdps(50):
        d = mp.mpf(d)
        return float((mp.sin(d) - d * mp.cos(d)) ** 2 / (1 - mp.cos(d)) ** 3 / mp.pi ** 2)


def test_frozen_values_match_mpmath():
    assert mp_ratio(1) == pytest.approx(G_AT_1, rel=1e-15)
    assert mp_ratio(1e-3) == pytest.approx(G_AT_1E3, rel=1e-15)


def test_density():
    assert analytic.arc_length_density(math.pi / 2) == 0.5
    assert analytic.arc_length_density(math.pi / 6) == pytest.approx(0.25)
    total = quadrature.integrate(lambda a: np.sin(a) / 2, 0, math.pi, tol=1e-13)
    assert abs(total - 1) < 1e-12
    for bad in (0.0, math.pi, -1.0):
        with pytest.raises(DomainError):
            analytic.arc_length_density(bad)


def test_conditional():
    assert analytic.conditional_cross_probability(math.pi) == 0.25
    assert analytic.conditional_cross_probability(1e-300) == pytest.approx(0, abs=1e-300)
    with pytest.raises(DomainError):
        analytic.conditional_cross_probability(4.0)


def test_unconditional():
    assert analytic.unconditional_cross_probability() == 0.125
    numeric = quadrature.integrate(lambda a: a / (4 * np.pi) * np.sin(a) / 2, 0, math.pi, tol=1e-13)
    assert abs(numeric - 0.125) < 1e-12


def test_fixed_circles():
    assert analytic.fixed_circles_cross_probability(math.pi, math.pi) == pytest.approx(0.5)
    assert analytic.fixed_circles_cross_probability(math.pi, 0.3) == pytest.approx(0.3 / (2 * math.pi))
    with pytest.raises(DomainError):
        analytic.fixed_circles_cross_probability(0.0, 1.0)


def test_joint_examples():
    assert analytic.joint_cross_probability(math.pi) == pytest.approx(0.125, rel=1e-15)
    half = analytic.joint_cross_probability(math.pi / 2)
    assert half == pytest.approx(1 / (8 * math.pi ** 2), rel=1e-15)
    assert abs(analytic.joint_cross_probability_quadrature(math.pi / 2) - half) < 1e-10
    with pytest.raises(DomainError):
        analytic.joint_cross_probability(0.0)


def test_joint_small_d_series():
    d = 1e-4
    series = analytic.joint_cross_probability(d)
    naive = (math.sin(d) - d * math.cos(d)) ** 2 / (8 * math.pi ** 2)
    assert series == pytest.approx(JOINT_AT_1E4, rel=1e-14)
    assert naive == pytest.approx(series, rel=1e-6)
    assert series == pytest.approx((d ** 3 / 3) ** 2 / (8 * math.pi ** 2), rel=1e-8)


@pytest.mark.parametrize("d", np.linspace(0.05, math.pi, 50))
def test_quadrature_matches_closed_form(d):
    assert abs(analytic.joint_cross_probability_quadrature(d) - analytic.joint_cross_probability(d)) < 1e-8


def test_own_quadrature_against_scipy():
    f = lambda x: np.exp(-x) * np.cos(5 * x)  # noqa: E731
    ref, _ = integrate.quad(f, 0, 3, epsabs=1e-13)
    assert abs(quadrature.integrate(f, 0, 3, tol=1e-12) - ref) < 1e-11
    ref2, _ = integrate.dblquad(lambda y, x: analytic.joint_cross_integrand(x, y), 0, 1.3, 0, 1.3)
    assert abs(quadrature.integrate2d(analytic.joint_cross_integrand, 0, 1.3, 0, 1.3) - ref2) < 1e-10


def test_expected_crossings_examples():
    assert analytic.expected_crossings(AnalyticParams(math.pi, 5)) == pytest.approx(1.875)
    assert analytic.expected_crossings(AnalyticParams(math.pi, 4)) == pytest.approx(0.375)
    assert analytic.expected_crossings(AnalyticParams(math.pi, 3)) == 0.0


@pytest.mark.parametrize("n", [4, 5, 60, 1000])
def test_moon_consistency_chain(n):
    assert analytic.moon_expected_crossings(n) * 16 / (math.comb(n, 2) * math.comb(n - 2, 2)) == 1
    assert analytic.expected_crossings(AnalyticParams(math.pi, n)) == pytest.approx(
        float(analytic.moon_expected_crossings(n)), rel=1e-14)


def test_moon_n60_exact():
    assert analytic.moon_expected_crossings(60) == Fraction(1462905, 8)


def test_cap_area():
    assert analytic.cap_area(math.pi) == pytest.approx(4 * math.pi)
    assert analytic.cap_area(math.pi / 2) == pytest.approx(2 * math.pi)
    assert analytic.cap_area(0.0) == 0.0


def test_expected_edges():
    assert analytic.expected_edges(AnalyticParams(math.pi, 100)) == pytest.approx(4950)
    assert analytic.expected_edges(AnalyticParams(math.pi / 2, 100)) == pytest.approx(2475)
    assert analytic.expected_edges(AnalyticParams(0.5, 1000)) == pytest.approx(EDGES_1000_05, rel=1e-14)


def test_params_validation():
    with pytest.raises(DomainError):
        AnalyticParams(0.0, 10)
    with pytest.raises(DomainError):
        AnalyticParams(1.0, 1)


def test_ratio_function_examples():
    assert analytic.ratio_function(math.pi) == pytest.approx(0.125, rel=1e-15)
    assert analytic.ratio_function(math.pi) == pytest.approx(
        analytic.CONSTANTS.moon_complete_constant / 0.125)
    assert abs(analytic.ratio_function(1e-3) - LIMIT) < 1e-6
    assert analytic.ratio_function(1.0) == pytest.approx(G_AT_1, rel=1e-14)
    with pytest.raises(DomainError):
        analytic.ratio_function(0.0)


@pytest.mark.parametrize("d", [1e-6, 1e-4, 1e-3, 0.01, 0.05, 0.0999, 0.1, 0.5, 2.0, 3.0])
def test_ratio_function_against_mpmath(d):
    assert analytic.ratio_function(d) == pytest.approx(mp_ratio(d), rel=1e-13)


def test_series_switchover_agreement():
    d = 0.1
    series = analytic.sin_minus_dcos(d * (1 - 1e-16)) ** 2 / (math.pi ** 2 * analytic.one_minus_cos(d * (1 - 1e-16)) ** 3)
    assert series == pytest.approx(analytic.ratio_function_naive(d), rel=1e-10)
    below = np.nextafter(0.1, 0)
    assert analytic.ratio_function(below) == pytest.approx(analytic.ratio_function(0.1), rel=1e-12)


def test_limit():
    assert analytic.midrange_upper_limit() < 0.0900633
    assert analytic.midrange_upper_limit() == pytest.approx(analytic.CONSTANTS.midrange_upper)
    assert abs(analytic.extrapolated_limit() - LIMIT) < 1e-8
    gap = analytic.ratio_function(1e-2) - LIMIT
    assert 0 < gap < 1e-4


def test_reference_constants():
    c = analytic.CONSTANTS
    assert round(c.midrange_upper, 7) == c.midrange_upper_decimal
    assert c.crossing_lemma_lower < c.ackerman_lower < c.midrange_upper


def test_monotonicity():
    assert analytic.check_monotonicity(10_000)
    assert analytic.ratio_function(1e-3) < analytic.ratio_function(math.pi)


def test_finite_difference_slope_positive():
    rng = np.random.default_rng(4)
    h = 1e-6
    for d in rng.uniform(0.01, math.pi - 0.01, 100):
        assert analytic.ratio_function(d + h) - analytic.ratio_function(d - h) > 0


@given(st.floats(1e-3, math.pi - 1e-3), st.floats(1e-9, 1e-2))
def test_ratio_increasing_property(d, step):
    hi = min(d + step, math.pi)
    if hi - d > 1e-7 * d:
        assert analytic.ratio_function(hi) > analytic.ratio_function(d)


def test_dimensional_sanity():
    n = 10 ** 6
    for d in (0.01, 0.3, 1.0, math.pi):
        p = AnalyticParams(d, n)
        approx = analytic.expected_crossings(p) * n ** 2 / analytic.expected_edges(p) ** 3
        assert abs(approx / analytic.ratio_function(d) - 1) < 10 / n


def test_threshold_for_edges_per_vertex():
    d = analytic.threshold_for_edges_per_vertex(500, 15)
    assert analytic.expected_edges(AnalyticParams(d, 500)) == pytest.approx(7500, rel=1e-12)
