"""
The midrange limit constant
===========================

The ratio function g(d) compares the expected number of crossings in a
random threshold drawing with the scale-free quantity e^3 / n^2.  It is
increasing on (0, pi] and tends to 8 / (9 pi^2) as the threshold shrinks.
"""

import math

import numpy as np

from spherecross import analytic

LIMIT = 8 / (9 * math.pi ** 2)
print(f"8/(9 pi^2) = {LIMIT:.12f}")

# g near zero uses a series, so small d is not swamped by cancellation
for d in (1e-6, 1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, math.pi):
    g = analytic.ratio_function(d)
    print(f"d = {d:<10.4g} g = {g:.12f}   g - limit = {g - LIMIT:.3e}")

# %%
# The naive formula loses digits long before the series does.
for d in (1e-3, 1e-4, 1e-5):
    print(f"d = {d:g}: series {analytic.ratio_function(d):.12f}, naive {analytic.ratio_function_naive(d):.12f}")

# %%
# Richardson extrapolation in d^2 recovers the constant without the formula.
print("extrapolated:", analytic.extrapolated_limit())

# %%
# Monotonicity on a dense grid.
grid = np.linspace(1e-3, math.pi, 10_000)
g = np.array([analytic.ratio_function(x) for x in grid])
print("strictly increasing on the grid:", bool(np.all(np.diff(g) > 0)), analytic.check_monotonicity(10_000))
