"""
The scaled minimum angle
========================

For fixed dimension p, n^{2/(p-1)} * Theta_min has a Weibull type limit.
Simulate it and compare quantiles.
"""

import numpy as np

from sphereangles import SeedSpec, extreme_angles, limit_law, sample_uniform_sphere
from sphereangles.montecarlo import ks_distance

n, p, reps = 400, 3, 1000
scale = n ** (2 / (p - 1))
stat = np.array([
    scale * extreme_angles(sample_uniform_sphere(n, p, SeedSpec(7, r))).theta_min
    for r in range(reps)
])

law = limit_law("fixed-p-extreme", p=p)
for u in (0.1, 0.25, 0.5, 0.75, 0.9):
    print(f"quantile {u:4.2f}: simulated {np.quantile(stat, u):.3f}   limit {law.quantile(u):.3f}")
print(f"KS distance over {reps} replicates: {ks_distance(stat, law):.3f}")

###############################################################################
# The difference of two independent copies gives the law of
# n^{2/(p-1)} (Theta_min + Theta_max - pi); at p = 2 it has a closed form.

z = np.array([0.0, 2.0, 5.0, 10.0])
exact = 1 - 0.5 * np.exp(-z / (2 * np.pi))
print("sum law p=2:", limit_law("sum-law", p=2).cdf(z), "closed form:", exact)
