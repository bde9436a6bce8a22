# coding: utf-8

# # Local refinement around a hemisphere
#
# Elements whose vertices straddle the sphere |x - c| = 1/4 and that reach
# into x >= 1/2 are bisected; the closure then bisects neighbours until no
# hanging vertex remains.

# %%

import numpy as np

from nbisect import is_mesh_conformal, local_refine, mark_mesh, renumber_mesh
from nbisect.criteria import hemisphere_distance, select_by_hypersphere
from nbisect.meshgen import GridSpec, kuhn_mesh
from nbisect.quality import element_points

center, radius = (0.5, 0.5, 0.5), 0.25
m = mark_mesh(kuhn_mesh(GridSpec(3, 2)))
for it in range(1, 13):
    hit = select_by_hypersphere(m, center, radius, halfspace=(0, 0.5))
    refined = local_refine(m, hit, renumber=False)
    ok = is_mesh_conformal(refined, m)
    m = renumber_mesh(refined)
    print(f"{it:2d}: selected {len(hit):5d} -> {len(m.elements):6d} elements, conformal={ok}")

# Elements close to the hemisphere are now much smaller than the rest.

# %%

pts = element_points(m)
i, j = np.triu_indices(4, 1)
diam = np.linalg.norm(pts[:, j] - pts[:, i], axis=2).max(axis=1)
near = hemisphere_distance(pts.mean(axis=1), center, radius) < 0.1
print("mean diameter near", diam[near].mean(), "far", diam[~near].mean())
