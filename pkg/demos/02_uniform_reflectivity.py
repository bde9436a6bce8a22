# coding: utf-8

# # Uniform refinement and reflected meshes
#
# After n rounds of uniform bisection every element has left the marked
# stage and become a tagged (newest vertex) simplex. The resulting mesh is
# conformal and its neighbours list shared faces in the same vertex order.

# %%

from nbisect import bisect_simplices, is_mesh_conformal, is_reflected, mark_mesh
from nbisect.driver import get_non_conformal_simplices
from nbisect.meshgen import GridSpec, kuhn_mesh, random_simplex_mesh

for n in (2, 3, 4):
    m0 = mark_mesh(kuhn_mesh(GridSpec(n, 2)))
    m = m0
    for level in range(1, n + 1):
        m = bisect_simplices(m, range(len(m.elements)))
        print(f"n={n} level {level}: {len(m.elements):5d} elements, "
              f"hanging={bool(get_non_conformal_simplices(m))}")
    print(f"  conformal={is_mesh_conformal(m, m0)} reflected={is_reflected(m)}")

# A single random tetrahedron goes through the same stages; the kinds of
# elements show where each stage starts.

# %%

m = mark_mesh(random_simplex_mesh(3, seed=1))
for level in range(5):
    print(level, sorted({(type(e).__name__, getattr(e, "tag", None)) for e in m.elements}))
    m = bisect_simplices(m, range(len(m.elements)))
