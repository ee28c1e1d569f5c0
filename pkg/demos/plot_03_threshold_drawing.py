"""
Crossings in a random threshold drawing
=======================================

Join every pair of random points at angular distance at most d by the short
geodesic, count crossings, and compare cr * n^2 / e^3 with g(d).
"""

from spherecross import analytic, drawing, montecarlo
from spherecross.analytic import AnalyticParams
from spherecross.montecarlo import ExperimentConfig
from spherecross.sampling import SeededStream

n = 300
d = analytic.threshold_for_edges_per_vertex(n, 15)
sd = drawing.build_threshold_drawing(SeededStream(7, 0), n, d)
rep = drawing.count_crossings(sd)
print(f"d = {d:.4f}: n = {rep.n}, e = {rep.e}, cr = {rep.cr}, ratio = {rep.ratio:.5f}")
print("exact ratio:", rep.exact_ratio)

# %%
# Averaging over trials.  The finite-n target uses E[cr] n^2 / E[e]^3.
s = montecarlo.run_drawing_ratio(ExperimentConfig(n=n, d=d, trials=20, master_seed=7))
print(f"mean ratio {s.mean:.5f} +- {s.std_error:.5f}")
print(f"finite-n target {analytic.finite_n_ratio_target(AnalyticParams(d, n)):.5f}, g(d) = {analytic.ratio_function(d):.5f}")
print(f"mean edges {s.extra['mean_edges']:.1f} (expected {s.extra['expected_edges']:.1f})")
