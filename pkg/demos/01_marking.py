# coding: utf-8

# # Marking a mesh
#
# Before any bisection, every element gets a bisection tree built from a
# mesh-wide ordering of the edges: longest first, ties broken by the
# lexicographic order of the vertex ids. Neighbours therefore agree on how
# their shared face is split.

# %%

from nbisect import build_edge_order, mark_mesh
from nbisect.meshgen import GridSpec, kuhn_mesh

mesh = kuhn_mesh(GridSpec(n=2, k=1))
for s in mesh.elements:
    print(s, [mesh.vertices[v] for v in s])

# The diagonal of the square is the longest edge, so it gets rank 0.

# %%

order = build_edge_order(mesh)
for rank, edge in enumerate(order.ordered()):
    print(rank, edge)

# %%

marked = mark_mesh(mesh)
for e in marked.elements:
    t = e.tree
    print(e.simplex, "root", t.node, "left", t.left.node, "right", t.right.node)

# Both triangles have the same root edge (the diagonal), which is what keeps
# the first bisection conformal.
