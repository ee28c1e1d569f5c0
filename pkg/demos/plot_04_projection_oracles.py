"""
Checking the spherical counter against planar projections
=========================================================

Stereographic projection turns geodesics into circular arcs and gnomonic
projection turns them into straight segments.  Both planar counts must match
the spherical one exactly.
"""

import numpy as np

from spherecross import drawing
from spherecross.sampling import SeededStream

mismatches = 0
for i in range(20):
    sd = drawing.build_threshold_drawing(SeededStream(3, i), 50, 0.6)
    pole = drawing.choose_pole(sd, seed=i)
    planar = drawing.count_planar_crossings(drawing.project_drawing(sd, pole))
    cr = drawing.count_crossings(sd).cr
    mismatches += planar.crossings != cr
    if i < 3:
        print(f"drawing {i}: sphere {cr}, stereographic {planar.crossings}, tangencies {planar.tangencies}")
print("stereographic mismatches:", mismatches)

# %%
# Gnomonic projection only sees one hemisphere, so points live in a cap.
center = np.array([0.0, 0.0, 1.0])
sd = drawing.build_cap_drawing(SeededStream(4, 0), 60, 0.3, center, 0.7)
flat, band = drawing.count_gnomonic_crossings(sd, center)
print(f"cap drawing: sphere {drawing.count_crossings(sd).cr}, gnomonic {flat}, near-degenerate {band}")
