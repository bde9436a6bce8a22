# coding: utf-8

# # Shape quality under repeated bisection
#
# Quality is 1 for a regular simplex and tends to 0 as it degenerates. Under
# uniform bisection the min/max quality settles into a cycle of length n,
# so the mesh never degrades.

# %%

import numpy as np

from nbisect import mark_mesh, uniform_refine
from nbisect.meshgen import random_simplex_mesh, regular_simplex_mesh
from nbisect.quality import element_points, qualities

n = 3
for label, start in [("regular", regular_simplex_mesh(n)), ("random", random_simplex_mesh(n, seed=2))]:
    m = mark_mesh(start)
    rows = []
    for it in range(4 * n + 1):
        q = qualities(element_points(m))
        rows.append((it, len(m.elements), q.min(), q.max()))
        if it < 4 * n:
            m = uniform_refine(m)
    print(label)
    for it, count, lo, hi in rows:
        print(f"  {it:2d} {count:6d}  min {lo:.6f}  max {hi:.6f}")

# Compare the last two cycles.

# %%

    tail = np.array([r[2] for r in rows])
    print("  cycle gap", np.abs(tail[3 * n:3 * n + 1] - tail[4 * n:]).max())
