"""
Growing dimension: near orthogonality and pivots
================================================

When p is large almost all pairs are close to orthogonal.  The minimum
angle, suitably transformed, follows a Gumbel type law whose shape depends
on how fast log(n) grows relative to p.
"""

import math

import numpy as np

from sphereangles import (
    PivotSpec,
    SeedSpec,
    extreme_angles,
    near_orthogonal_count,
    pairwise_angles,
    pivot_transform,
    regime_classify,
    sample_uniform_sphere,
)

n, p = 100, 2000
angles = pairwise_angles(sample_uniform_sphere(n, p, SeedSpec(3)))
gamma = math.sqrt(2 * math.log(p) / p)
frac = near_orthogonal_count(angles, gamma) / len(angles)
print(f"p={p}: {100 * frac:.1f}% of pairs within {gamma:.3f} rad of pi/2")

###############################################################################
# Sub-exponential pivot 2p log sin Theta_min + 4 log n - log log n

n, p, reps = 100, 500, 200
print("regime:", regime_classify(n, p))
spec = PivotSpec("sub-exponential", n, p)
piv = np.array([pivot_transform(extreme_angles(sample_uniform_sphere(n, p, SeedSpec(4, r))), spec)
                for r in range(reps)])
law = spec.limit()
for u in (0.25, 0.5, 0.75):
    print(f"quantile {u}: simulated {np.quantile(piv, u):6.3f}   limit {law.quantile(u):6.3f}")
