"""
Two random arcs cross with probability 1/8
==========================================

Four independent uniform points give two geodesic arcs.  With no length
restriction they cross one time in eight.  Restricting both arcs to length
at most d gives the joint probability (sin d - d cos d)^2 / (8 pi^2).
"""

import math

from spherecross import analytic, montecarlo
from spherecross.montecarlo import ExperimentConfig

cfg = ExperimentConfig(d=math.pi, trials=1_000_000, master_seed=1, mode="pair_probability")
s = montecarlo.run_pair_probability(cfg)
print(f"estimate {s.mean:.5f} +- {s.std_error:.5f}  (exact 0.125, z = {s.z_score:+.2f})")

# %%
# The same estimator at a shorter threshold.
d = math.pi / 2
s = montecarlo.run_pair_probability(ExperimentConfig(d=d, trials=2_000_000, master_seed=2, mode="pair_probability"))
print(f"d = pi/2: estimate {s.mean:.6f}, closed form {analytic.joint_cross_probability(d):.6f}, z = {s.z_score:+.2f}")

# %%
# The closed form agrees with direct two-dimensional quadrature.
for d in (0.3, 1.0, 2.5):
    print(d, analytic.joint_cross_probability(d), analytic.joint_cross_probability_quadrature(d))
