"""Local refinement: bisect a set, close hanging vertices, renumber."""
from __future__ import annotations

import logging
from typing import Dict, Iterable, Optional

from .bisect import MaubachSimplex, TreeSimplex, bisect_simplices
from .core import Mesh, MeshError, MultiId, element_simplex, mid_vertex
from .marking import BisectionTree, mark_mesh

log = logging.getLogger(__name__)

MAX_CLOSURE_ROUNDS = 1000


def refine_mesh(mesh: Mesh, handles: Iterable[int]) -> Mesh:
    """Mark ``mesh`` if it is not marked yet, then refine ``handles`` locally."""
    if not mesh.is_marked:
        mesh = mark_mesh(mesh)
    return local_refine(mesh, handles)


def local_refine(mesh: Mesh, handles: Iterable[int], renumber: bool = True,
                 max_rounds: int = MAX_CLOSURE_ROUNDS) -> Mesh:
    """Bisect ``handles`` and restore conformity.

    With ``renumber=False`` the result keeps its multi-ids, which is what
    :func:`nbisect.verify.is_mesh_conformal` needs to trace boundary faces
    back to ``mesh``.
    """
    refined = refine_to_conformity(bisect_simplices(mesh, handles), max_rounds)
    return renumber_mesh(refined) if renumber else refined


def refine_to_conformity(mesh: Mesh, max_rounds: int = MAX_CLOSURE_ROUNDS) -> Mesh:
    # iterative form of the recursive closure; same sequence of bisections
    for rounds in range(max_rounds + 1):
        hanging = get_non_conformal_simplices(mesh)
        if not hanging:
            if rounds:
                log.debug("closure finished after %d rounds", rounds)
            return mesh
        if rounds == max_rounds:
            break
        mesh = bisect_simplices(mesh, hanging)
    raise MeshError(f"closure did not terminate within {max_rounds} rounds")


def get_non_conformal_simplices(mesh: Mesh) -> set:
    """Handles of elements with an edge whose midpoint is already a mesh vertex."""
    simplices = [element_simplex(e) for e in mesh.elements]
    present = set()
    for s in simplices:
        present.update(s)
    out = set()
    for h, s in enumerate(simplices):
        last = len(s) - 1
        for i in range(last):
            a = s[i]
            for j in range(i + 1, last + 1):
                if mid_vertex(a, s[j]) in present:
                    out.add(h)
                    break
            else:
                continue
            break
    return out


def renumber_mesh(mesh: Mesh, return_map: bool = False):
    """Relabel every multi-id as ``(i,)`` with ``i`` its rank in sorted order.

    The map is monotone, so canonical edge orientation and every stored
    ordering survive the relabel.
    """
    mapping: Dict[MultiId, MultiId] = {v: (i,) for i, v in enumerate(sorted(mesh.vertices))}
    vertices = {mapping[v]: p for v, p in mesh.vertices.items()}
    tree_memo: Dict[int, BisectionTree] = {}

    def remap_tree(t: Optional[BisectionTree]) -> Optional[BisectionTree]:
        if t is None:
            return None
        hit = tree_memo.get(id(t))
        if hit is None:
            a, b = t.node
            hit = BisectionTree((mapping[a], mapping[b]), remap_tree(t.left), remap_tree(t.right))
            tree_memo[id(t)] = hit
        return hit

    def remap(vs):
        return tuple(mapping[v] for v in vs)

    elements = []
    for e in mesh.elements:
        if isinstance(e, tuple):
            elements.append(remap(e))
        elif isinstance(e, TreeSimplex):
            elements.append(TreeSimplex(remap(e.simplex), remap(e.reflected), remap_tree(e.tree), e.level))
        elif isinstance(e, MaubachSimplex):
            elements.append(MaubachSimplex(remap(e.simplex), e.tag, e.level))
        else:
            raise MeshError(f"unknown element type {type(e).__name__}")
    out = Mesh(mesh.n, vertices, elements)
    return (out, mapping) if return_map else out


def uniform_refine(mesh: Mesh, renumber: bool = True) -> Mesh:
    """Bisect every element once, without closure.

    During the first n rounds neighbours may temporarily disagree on a shared
    face; the disagreement disappears once every element has reached the same
    stage. The result is renumbered only when it has no hanging vertex, since
    a later bisection must still find existing midpoints by multi-id.
    """
    if not mesh.is_marked:
        mesh = mark_mesh(mesh)
    out = bisect_simplices(mesh, range(len(mesh.elements)))
    if renumber and not get_non_conformal_simplices(out):
        out = renumber_mesh(out)
    return out
