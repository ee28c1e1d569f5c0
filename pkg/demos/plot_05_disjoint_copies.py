"""
Disjoint copies keep the ratio
==============================

Placing k translated copies of a planar drawing side by side multiplies n, e
and cr by k, so cr * n^2 / e^3 is unchanged.  This is how a fixed-density
drawing scales to arbitrarily many vertices.
"""

from spherecross import drawing
from spherecross.sampling import SeededStream

sd = drawing.build_threshold_drawing(SeededStream(5, 0), 60, 0.7)
rep = drawing.count_crossings(sd)
print(f"single: n = {rep.n}, e = {rep.e}, cr = {rep.cr}, ratio = {rep.exact_ratio}")

for k in (2, 5, 10):
    planar, big = drawing.replicate_copies(sd, k, report=rep)
    x0, y0, x1, y1 = planar.bbox()
    print(f"k = {k:>2}: n = {big.n}, e = {big.e}, cr = {big.cr}, ratio = {big.exact_ratio}, width {x1 - x0:.1f}")

# %%
# Counting the combined planar drawing directly gives k times the crossings.
planar, big = drawing.replicate_copies(sd, 3, report=rep)
print(drawing.count_planar_crossings(planar).crossings, 3 * rep.cr)
