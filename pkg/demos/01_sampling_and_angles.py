"""
Random points and their pairwise angles
=======================================

Draw uniform points on a sphere, look at every pairwise angle, and check
that the histogram follows the single-pair density.
"""

import numpy as np

from sphereangles import SeedSpec, extremes, limit_law, pairwise_angles, sample_uniform_sphere

# 200 points on the 2-sphere in R^3; the seed fixes the whole draw
points = sample_uniform_sphere(200, 3, SeedSpec(2024))
angles = pairwise_angles(points)
print(f"{len(angles)} pairwise angles from n={points.n} points in p={points.p}")

###############################################################################
# Histogram against the exact density (sin t) / 2 for p = 3

law = limit_law("angle-density", p=3)
edges = np.linspace(0, np.pi, 13)
heights, _ = np.histogram(angles.angles, bins=edges, density=True)
for a, b, h in zip(edges[:-1], edges[1:], heights):
    mid = 0.5 * (a + b)
    print(f"  [{a:4.2f}, {b:4.2f})  empirical {h:5.3f}   exact {law.pdf(mid):5.3f}")

###############################################################################
# Extremes: the smallest and largest angle, and the largest cosine

ext = extremes(angles)
print(f"theta_min = {ext.theta_min:.4f}, theta_max = {ext.theta_max:.4f}")
print(f"theta_min + theta_max - pi = {ext.theta_min + ext.theta_max - np.pi:+.4f}")
