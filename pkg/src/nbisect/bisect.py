"""Three-stage bisection of marked simplices.

Stage is picked from the descendant level ``l`` of an element in R^n:

* ``l < n-1``: split along the root edge of the bisection tree, hand each
  child the subtree of the face it still contains, and push the new vertex
  on the front of the reflected list;
* ``l == n-1``: same split, then reorder each child as its surviving edge
  endpoint followed by the reflected list, giving tag-``n`` Maubach simplices;
* ``l >= n``: newest vertex bisection on ``(v0, vd)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, Iterable, Tuple

from .core import (
    GlobalEdge,
    Mesh,
    MeshError,
    MultiId,
    Point,
    Simplex,
    element_simplex,
    mid_vertex,
    midpoint,
)

if TYPE_CHECKING:
    from .marking import BisectionTree


@dataclass(frozen=True, slots=True)
class TreeSimplex:
    simplex: Simplex
    reflected: Tuple[MultiId, ...]
    tree: "BisectionTree"
    level: int

    @property
    def n(self) -> int:
        return len(self.simplex) - 1


@dataclass(frozen=True, slots=True)
class MaubachSimplex:
    simplex: Simplex
    tag: int
    level: int

    @property
    def n(self) -> int:
        return len(self.simplex) - 1


def refinement_edge(element) -> GlobalEdge:
    """Edge the next bisection of ``element`` will split, canonically ordered."""
    if isinstance(element, TreeSimplex):
        return element.tree.node
    if isinstance(element, MaubachSimplex):
        a, b = element.simplex[0], element.simplex[element.tag]
        return (a, b) if a < b else (b, a)
    raise MeshError(f"element {element!r} is not marked")


def bisect_tree_simplex(s: Simplex, reflected, e: GlobalEdge, level: int):
    """Split ``s`` at the midpoint of ``e``.

    Returns ``(s1, L1, s2, L2)``: ``s1`` keeps ``e[0]`` (the slot of ``e[1]``
    now holds the midpoint), ``s2`` keeps ``e[1]``. Both lists are the old
    reflected list with the midpoint prepended.
    """
    v1, v2 = e
    if len(v1) != 1 or len(v2) != 1:
        raise MeshError(f"stage-one edge {e} must join original vertices")
    try:
        i1 = s.index(v1)
        i2 = s.index(v2)
    except ValueError:
        raise MeshError(f"edge {e} is not an edge of {s}") from None
    m = mid_vertex(v1, v2)
    s1 = s[:i2] + (m,) + s[i2 + 1:]
    s2 = s[:i1] + (m,) + s[i1 + 1:]
    lst = (m,) + tuple(reflected)
    return s1, lst, s2, lst


def bisect_stage_one(t: TreeSimplex) -> Tuple[TreeSimplex, TreeSimplex]:
    if t.tree.is_leaf:
        raise MeshError(f"leaf bisection tree at level {t.level} < n-1 = {t.n - 1}")
    s1, l1, s2, l2 = bisect_tree_simplex(t.simplex, t.reflected, t.tree.node, t.level)
    # left marks the face opposite e[0], which is the part of s2; right goes with s1
    return (
        TreeSimplex(s1, l1, t.tree.right, t.level + 1),
        TreeSimplex(s2, l2, t.tree.left, t.level + 1),
    )


def cast_to_maubach(e: GlobalEdge, l1, l2) -> Tuple[Simplex, Simplex]:
    n = len(l1)
    if len(l2) != n:
        raise MeshError(f"reflected lists differ in length: {len(l1)} vs {len(l2)}")
    if n < 1:
        raise MeshError("cannot cast with an empty reflected list")
    return (e[0],) + tuple(l1), (e[1],) + tuple(l2)


def bisect_to_maubach(t: TreeSimplex) -> Tuple[MaubachSimplex, MaubachSimplex]:
    if not t.tree.is_leaf:
        raise MeshError(f"cast stage needs a leaf tree, got height {t.tree.height}")
    e = t.tree.node
    _, l1, _, l2 = bisect_tree_simplex(t.simplex, t.reflected, e, t.level)
    if len(l1) != t.n:
        raise MeshError(f"reflected list has {len(l1)} vertices at cast time, expected {t.n}")
    r1, r2 = cast_to_maubach(e, l1, l2)
    return MaubachSimplex(r1, t.n, t.level + 1), MaubachSimplex(r2, t.n, t.level + 1)


def bisect_maubach(ms: MaubachSimplex) -> Tuple[MaubachSimplex, MaubachSimplex]:
    s, d = ms.simplex, ms.tag
    n = len(s) - 1
    if not 1 <= d <= n:
        raise MeshError(f"tag {d} outside 1..{n}")
    w = mid_vertex(s[0], s[d])
    c1 = s[:d] + (w,) + s[d + 1:]
    c2 = s[1:d + 1] + (w,) + s[d + 1:]
    tag = d - 1 if d > 1 else n
    return MaubachSimplex(c1, tag, ms.level + 1), MaubachSimplex(c2, tag, ms.level + 1)


def insert_midpoint(vertices: Dict[MultiId, Point], e: GlobalEdge) -> MultiId:
    """Add the midpoint of ``e`` to ``vertices`` (no-op if a neighbour already did)."""
    m = mid_vertex(*e)
    if m not in vertices:
        try:
            vertices[m] = midpoint(vertices[e[0]], vertices[e[1]])
        except KeyError as exc:
            raise MeshError(f"vertex {exc.args[0]} has no coordinates") from None
    return m


def bisect_simplex(element, vertices: Dict[MultiId, Point]):
    """Bisect one marked element, registering the new vertex in ``vertices``."""
    n = len(element_simplex(element)) - 1
    insert_midpoint(vertices, refinement_edge(element))
    if isinstance(element, TreeSimplex):
        if element.level < n - 1:
            return bisect_stage_one(element)
        if element.level == n - 1:
            return bisect_to_maubach(element)
        raise MeshError(f"tree-simplex at level {element.level} >= n = {n}")
    if element.level < n:
        raise MeshError(f"Maubach simplex at level {element.level} < n = {n}")
    return bisect_maubach(element)


def bisect_simplices(mesh: Mesh, handles: Iterable[int]) -> Mesh:
    """Replace the elements at ``handles`` by their two children, in place order."""
    handles = set(handles)
    count = len(mesh.elements)
    for h in handles:
        if not 0 <= h < count:
            raise MeshError(f"element handle {h} not in mesh of {count} elements")
    if not handles:
        return mesh.copy()
    vertices = dict(mesh.vertices)
    elements = []
    for i, e in enumerate(mesh.elements):
        if i in handles:
            elements.extend(bisect_simplex(e, vertices))
        else:
            elements.append(e)
    return Mesh(mesh.n, vertices, elements)
