"""Co-dimensional marking of a conformal mesh.

Every edge of the initial mesh gets a rank: longest first, equal lengths in
lexicographic order of the canonical edge. A simplex's refinement edge is its
lowest-ranked edge, and :func:`stage_one_tree` applies that rule recursively
to the two faces opposite the refinement edge's endpoints. Because the tree of
a face depends only on the face, neighbours always agree on how a shared
sub-simplex is split.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional

from .bisect import TreeSimplex
from .core import GlobalEdge, Mesh, MeshError, Simplex, edge_length_squared, opposite_face, simplex_edges


@dataclass(frozen=True, slots=True)
class BisectionTree:
    node: GlobalEdge
    left: Optional["BisectionTree"] = None
    right: Optional["BisectionTree"] = None

    def __post_init__(self):
        if (self.left is None) != (self.right is None):
            raise MeshError("bisection tree nodes need both children or none")

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def height(self) -> int:
        if self.left is None:
            return 0
        return 1 + max(self.left.height, self.right.height)

    def __len__(self) -> int:
        if self.left is None:
            return 1
        return 1 + len(self.left) + len(self.right)

    def edges_by_depth(self):
        """List of edge lists, one per depth, left to right."""
        levels, frontier = [], [self]
        while frontier:
            levels.append([t.node for t in frontier])
            frontier = [c for t in frontier if t.left is not None for c in (t.left, t.right)]
        return levels


class EdgeOrder:
    """Dense ranks for the edges of an initial mesh (rank 0 is bisected first)."""

    def __init__(self, rank: Dict[GlobalEdge, int]):
        self.rank = rank

    def __len__(self):
        return len(self.rank)

    def __getitem__(self, e: GlobalEdge) -> int:
        try:
            return self.rank[e]
        except KeyError:
            raise MeshError(f"edge {e} is not an edge of the initial mesh") from None

    def ordered(self):
        return sorted(self.rank, key=self.rank.__getitem__)


def build_edge_order(mesh: Mesh) -> EdgeOrder:
    if not mesh.elements:
        raise MeshError("cannot order the edges of an empty mesh")
    edges = set()
    for s in mesh.simplices():
        for v in s:
            if len(v) != 1:
                raise MeshError(f"marking needs length-one multi-ids, found {v}")
        edges.update(simplex_edges(s))
    edges = sorted(edges)
    # sorted() is stable, so equal lengths keep the lexicographic order
    lengths = {e: edge_length_squared(e, mesh.vertices) for e in edges}
    edges.sort(key=lengths.__getitem__, reverse=True)
    return EdgeOrder({e: i for i, e in enumerate(edges)})


def consistent_bisection_edge(s: Simplex, order: EdgeOrder) -> GlobalEdge:
    return min(simplex_edges(s), key=order.__getitem__)


def stage_one_tree(s: Simplex, order: EdgeOrder, cache: Optional[dict] = None) -> BisectionTree:
    """Bisection tree of ``s``: refinement edge at the root, then the trees of
    the faces opposite its first and second endpoint as left and right."""
    if len(s) < 2:
        raise MeshError("a simplex needs at least two vertices to be marked")
    if cache is not None:
        key = tuple(sorted(s))
        hit = cache.get(key)
        if hit is not None:
            return hit
    e = consistent_bisection_edge(s, order)
    if len(s) == 2:
        tree = BisectionTree(e)
    else:
        v1, v2 = e
        tree = BisectionTree(
            e,
            stage_one_tree(opposite_face(s, v1), order, cache),
            stage_one_tree(opposite_face(s, v2), order, cache),
        )
    if cache is not None:
        cache[key] = tree
    return tree


def mark_mesh(mesh: Mesh) -> Mesh:
    """Mark every element as a level-0 tree-simplex with an empty reflected list."""
    if mesh.is_marked:
        raise MeshError("mesh is already marked")
    order = build_edge_order(mesh)
    cache: dict = {}
    elements = [TreeSimplex(s, (), stage_one_tree(s, order, cache), 0) for s in mesh.simplices()]
    return Mesh(mesh.n, dict(mesh.vertices), elements)
