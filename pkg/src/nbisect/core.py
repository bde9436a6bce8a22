"""Multi-ids, simplices, global edges and the mesh container.

A multi-id is a sorted tuple of non-negative ints. Original vertices are
length-one tuples ``(i,)``; a vertex created on an edge gets the sorted
concatenation of its endpoints' multi-ids, so the same edge always yields
the same new id no matter which element split it.

Python's tuple comparison is exactly the order used throughout: lexicographic,
and a strict prefix sorts before the longer tuple.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

MultiId = Tuple[int, ...]
Simplex = Tuple[MultiId, ...]
GlobalEdge = Tuple[MultiId, MultiId]
Point = Tuple[float, ...]

LT, EQ, GT = -1, 0, 1


class MeshError(Exception):
    """Structural problem with a mesh or one of its elements."""


def multi_id(*ids: int) -> MultiId:
    """Build a multi-id from raw integer ids (sorted on the way in)."""
    if not ids:
        raise ValueError("a multi-id needs at least one id")
    if any(i < 0 for i in ids):
        raise ValueError(f"negative id in {ids}")
    return tuple(sorted(ids))


def compare_multi_ids(a: MultiId, b: MultiId) -> int:
    """Three-way comparison returning LT, EQ or GT."""
    if a == b:
        return EQ
    return LT if a < b else GT


def mid_vertex(a: MultiId, b: MultiId) -> MultiId:
    """Multi-id of the midpoint of edge (a, b)."""
    if a == b:
        raise MeshError(f"degenerate edge: both endpoints are {a}")
    return tuple(sorted(a + b))


def make_global_edge(a: MultiId, b: MultiId) -> GlobalEdge:
    if a == b:
        raise MeshError(f"degenerate edge: both endpoints are {a}")
    return (a, b) if a < b else (b, a)


def simplex_edges(s: Simplex) -> List[GlobalEdge]:
    """All edges of ``s`` in row-major order (v0,v1), (v0,v2), ..., (v_{n-1},v_n)."""
    out = []
    for i in range(len(s) - 1):
        vi = s[i]
        for j in range(i + 1, len(s)):
            vj = s[j]
            out.append((vi, vj) if vi < vj else (vj, vi))
    return out


def opposite_face(s: Simplex, v: MultiId) -> Simplex:
    """Drop ``v`` from ``s`` keeping the order of the remaining vertices."""
    if v not in s:
        raise MeshError(f"vertex {v} is not in simplex {s}")
    return tuple(w for w in s if w != v)


def edge_length_squared(e: GlobalEdge, vertices: Dict[MultiId, Point]) -> float:
    """Squared length of a canonical edge.

    Always accumulates ``b - a`` over coordinates 0..n-1 in order, so every
    element that asks about the same edge gets the same bits back.
    """
    try:
        pa = vertices[e[0]]
        pb = vertices[e[1]]
    except KeyError as exc:
        raise MeshError(f"vertex {exc.args[0]} has no coordinates") from None
    total = 0.0
    for k in range(len(pa)):
        d = pb[k] - pa[k]
        total += d * d
    return total


def midpoint(pa: Point, pb: Point) -> Point:
    return tuple((x + y) / 2 for x, y in zip(pa, pb))


def element_simplex(element) -> Simplex:
    """Vertex tuple of a plain or marked element."""
    if isinstance(element, tuple):
        return element
    return element.simplex


@dataclass
class Mesh:
    """Simplicial mesh in R^n.

    ``elements`` holds plain vertex tuples for an unmarked mesh, or
    :class:`~nbisect.bisect.TreeSimplex` / :class:`~nbisect.bisect.MaubachSimplex`
    marks once the mesh has been marked. ``vertices`` maps every multi-id to
    its coordinates; midpoint coordinates are written once and never recomputed.
    """

    n: int
    vertices: Dict[MultiId, Point] = field(default_factory=dict)
    elements: list = field(default_factory=list)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")

    @classmethod
    def from_arrays(cls, points, cells) -> "Mesh":
        """Unmarked mesh from a point array and a cell index array (ids = row numbers)."""
        points = [tuple(float(x) for x in p) for p in points]
        n = len(points[0])
        vertices = {(i,): p for i, p in enumerate(points)}
        elements = []
        for c in cells:
            if len(c) != n + 1:
                raise MeshError(f"cell {tuple(c)} does not have {n + 1} vertices")
            elements.append(tuple((int(i),) for i in c))
        return cls(n, vertices, elements)

    @property
    def is_marked(self) -> bool:
        return bool(self.elements) and not isinstance(self.elements[0], tuple)

    def simplices(self) -> List[Simplex]:
        return [element_simplex(e) for e in self.elements]

    def used_vertices(self) -> set:
        used = set()
        for e in self.elements:
            used.update(element_simplex(e))
        return used

    def coordinates(self, s: Sequence[MultiId]):
        return [self.vertices[v] for v in s]

    def add_vertex(self, v: MultiId, p: Point) -> None:
        # first writer wins; every writer computed the same value from the same edge
        self.vertices.setdefault(v, p)

    def copy(self) -> "Mesh":
        return Mesh(self.n, dict(self.vertices), list(self.elements))

    def __len__(self) -> int:
        return len(self.elements)
