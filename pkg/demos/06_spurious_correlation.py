"""
How large can a chance correlation be?
======================================

With many variables, some pair will look strongly correlated purely by
chance.  Compare the threshold formula with the largest absolute cosine
among n independent uniform directions.
"""

import numpy as np

from sphereangles import SeedSpec, concentration_bound, extreme_angles, sample_uniform_sphere
from sphereangles import spurious_correlation_threshold, variance_bias_factor

p = 30
for n in (50, 200, 1000):
    observed = np.median([extreme_angles(sample_uniform_sphere(n, p, SeedSpec(5, r))).l_np for r in range(20)])
    print(f"n={n:5d}, p={p}: threshold {spurious_correlation_threshold(n, p):.3f}, "
          f"median max |cos| {observed:.3f}")

###############################################################################
# A single pair concentrates near pi/2; the bound gets sharper with p.

for p in (20, 100, 500):
    print(f"P(|Theta - pi/2| >= 0.3) <= {concentration_bound(0.3, p):.2e}  (p={p})")

# residual variance shrinks by sin^2 of the smallest angle when regressing on the closest variable
print("variance factor at theta_min = 0.6:", round(variance_bias_factor(0.6), 4))
