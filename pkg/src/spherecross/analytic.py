"""Closed-form expectations for the random geodesic threshold drawing.

Notation used throughout: ``d`` is the distance threshold in radians and
``n`` the vertex count.  The ratio function

    g(d) = (sin d - d cos d)^2 / (pi^2 (1 - cos d)^3)

is the asymptotic value of ``cr * n^2 / e^3`` for the drawing; it increases
on ``(0, pi]`` from ``8 / (9 pi^2)`` to ``1/8``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from spherecross import quadrature

SERIES_SWITCH = 0.1


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class AnalyticParams:
    d: float
    n: int

    def __post_init__(self):
        if not 0.0 < self.d <= math.pi:
            raise DomainError(f"d must lie in (0, pi], got {self.d!r}")
        if self.n < 2:
            raise DomainError(f"n must be at least 2, got {self.n!r}")


@dataclass(frozen=True)
class ReferenceConstants:
    """Reference values for the midrange crossing constant.

    Only ``midrange_upper`` is computed by this package.  The lower-bound
    constants are stored for comparison.  The Crossing Lemma is the standard
    ``cr(G) >= (1/64) e^3 / n^2`` for ``e >= 4n``.
    """

    midrange_upper: float = 8.0 / (9.0 * math.pi ** 2)
    midrange_upper_decimal: float = 0.0900633
    moon_complete_constant: float = 1.0 / 64.0
    crossing_lemma_lower: float = 1.0 / 64.0
    ackerman_lower: float = 1.0 / 29.0


CONSTANTS = ReferenceConstants()


def _check_open(alpha, hi_closed=False):
    ok = 0.0 < alpha <= math.pi if hi_closed else 0.0 < alpha < math.pi
    if not ok:
        raise DomainError(f"angle {alpha!r} outside the admissible range")


def sin_minus_dcos(d: float) -> float:
    """``sin d - d cos d``, by its Taylor series below ``d = 0.1``."""
    if d < SERIES_SWITCH:
        d2 = d * d
        return d * d2 * (1 / 3 - d2 * (1 / 30 - d2 * (1 / 840 - d2 / 45360)))
    return math.sin(d) - d * math.cos(d)


def one_minus_cos(d: float) -> float:
    if d < SERIES_SWITCH:
        d2 = d * d
        return d2 * (1 / 2 - d2 * (1 / 24 - d2 * (1 / 720 - d2 / 40320)))
    return 1.0 - math.cos(d)


def arc_length_density(alpha: float) -> float:
    """Density of the distance between two uniform points on the sphere."""
    _check_open(alpha)
    return math.sin(alpha) / 2


def conditional_cross_probability(alpha: float) -> float:
    """P[random arc RS crosses a fixed arc of length ``alpha``]."""
    _check_open(alpha, hi_closed=True)
    return alpha / (4 * math.pi)


def unconditional_cross_probability(tol: float = 1e-12) -> float:
    """Crossing probability of two arcs between four uniform points (1/8).

    The closed form is checked against adaptive quadrature before returning.
    """
    closed = 0.125
    numeric = quadrature.integrate(
        lambda a: a / (4 * np.pi) * 0.5 * np.sin(a), 0.0, math.pi, tol=1e-13)
    if abs(numeric - closed) > tol:
        raise ArithmeticError(f"quadrature {numeric!r} disagrees with 1/8")
    return closed


def fixed_circles_cross_probability(alpha: float, beta: float) -> float:
    """Crossing probability for arcs of given lengths on two fixed great circles."""
    _check_open(alpha, hi_closed=True)
    _check_open(beta, hi_closed=True)
    return alpha * beta / (2 * math.pi ** 2)


def joint_cross_probability(d: float) -> float:
    """P[both arcs have length <= d and they cross]."""
    _check_open(d, hi_closed=True)
    return sin_minus_dcos(d) ** 2 / (8 * math.pi ** 2)


def joint_cross_integrand(alpha, beta):
    """Integrand whose double integral over ``[0, d]^2`` is the joint probability."""
    return (2 * alpha / (2 * np.pi) * beta / (2 * np.pi)
            * 0.5 * np.sin(alpha) * 0.5 * np.sin(beta))


def joint_cross_probability_quadrature(d: float, tol: float = 1e-10) -> float:
    _check_open(d, hi_closed=True)
    return quadrature.integrate2d(joint_cross_integrand, 0.0, d, 0.0, d, tol=tol)


def pair_count(n: int) -> int:
    """Unordered pairs of disjoint vertex pairs: C(n,2) C(n-2,2) / 2."""
    return math.comb(n, 2) * math.comb(n - 2, 2) // 2


def expected_crossings(params: AnalyticParams) -> float:
    """Expected crossing count of the threshold drawing (exact for finite n)."""
    if params.n < 4:
        return 0.0
    return joint_cross_probability(params.d) * 0.5 * math.comb(params.n, 2) * math.comb(params.n - 2, 2)


def moon_expected_crossings(n: int) -> Fraction:
    """Exact expected crossings of the complete drawing, C(n,2) C(n-2,2) / 16."""
    return Fraction(math.comb(n, 2) * math.comb(n - 2, 2), 16)


def cap_area(d: float) -> float:
    if not 0.0 <= d <= math.pi:
        raise DomainError(f"cap radius {d!r} outside [0, pi]")
    return 2 * math.pi * one_minus_cos(d) if d > 0 else 0.0


def expected_edges(params: AnalyticParams) -> float:
    return params.n * (params.n - 1) * one_minus_cos(params.d) / 4


def expected_degree(params: AnalyticParams) -> float:
    return (params.n - 1) * cap_area(params.d) / (4 * math.pi)


def finite_n_ratio_target(params: AnalyticParams) -> float:
    """``E[cr] n^2 / E[e]^3`` at finite ``n``."""
    return expected_crossings(params) * params.n ** 2 / expected_edges(params) ** 3


def ratio_function(d: float) -> float:
    """g(d) = (sin d - d cos d)^2 / (pi^2 (1 - cos d)^3), cancellation-safe."""
    if not 0.0 < d <= math.pi:
        raise DomainError(f"d must lie in (0, pi], got {d!r}")
    return sin_minus_dcos(d) ** 2 / (math.pi ** 2 * one_minus_cos(d) ** 3)


def ratio_function_naive(d: float) -> float:
    return (math.sin(d) - d * math.cos(d)) ** 2 / (math.pi ** 2 * (1 - math.cos(d)) ** 3)


def threshold_for_edges_per_vertex(n: int, edges_per_vertex: float) -> float:
    """Threshold ``d`` with ``expected_edges(n, d) = edges_per_vertex * n``."""
    c = 4 * edges_per_vertex / (n - 1)
    if not 0.0 < c <= 2.0:
        raise DomainError("requested density is not attainable for this n")
    # 1 - cos d = c  <=>  d = 2 asin(sqrt(c / 2)), stable for small c
    return 2 * math.asin(math.sqrt(c / 2))


def midrange_upper_limit() -> float:
    """8 / (9 pi^2), the limit of g(d) as d -> 0+."""
    value = 8.0 / (9.0 * math.pi ** 2)
    assert value < CONSTANTS.midrange_upper_decimal
    return value


def extrapolated_limit(d1: float = 1e-3, d2: float = 1e-4) -> float:
    """Richardson extrapolation of g(d) to d = 0 using g = L (1 + c d^2 + ...)."""
    g1, g2 = ratio_function(d1), ratio_function(d2)
    return (g2 * d1 ** 2 - g1 * d2 ** 2) / (d1 ** 2 - d2 ** 2)


def check_monotonicity(grid_points: int, lo: float = 1e-3, hi: float = math.pi) -> bool:
    """True iff g is strictly increasing on a uniform grid over ``[lo, hi]``."""
    if grid_points < 2:
        raise ValueError("need at least two grid points")
    values = [ratio_function(float(d)) for d in np.linspace(lo, hi, grid_points)]
    return all(b > a for a, b in zip(values, values[1:]))
