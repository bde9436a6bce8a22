"""Deterministic test and experiment meshes."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .bisect import MaubachSimplex
from .core import Mesh, MeshError
from .quality import qualities, regular_simplex

MAX_REJECTIONS = 10_000


@dataclass(frozen=True)
class GridSpec:
    n: int
    k: int = 1
    origin: float = 0.0
    extent: float = 1.0

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError(f"need n >= 1 and k >= 1, got n={self.n}, k={self.k}")
        if self.extent <= 0:
            raise ValueError("extent must be positive")


def kuhn_mesh(grid: GridSpec) -> Mesh:
    """Split each of the k^n cells of a cube grid into n! Kuhn simplices.

    Simplex for permutation ``pi`` walks from the cell's lower corner along
    ``e_pi(1), e_pi(2), ...``. Vertex ids follow lexicographic grid order.
    """
    n, k = grid.n, grid.k
    h = grid.extent / k
    side = k + 1
    vertices = {}
    for c in itertools.product(range(side), repeat=n):
        vid = 0
        for ci in c:
            vid = vid * side + ci
        vertices[(vid,)] = tuple(grid.origin + ci * h for ci in c)
    strides = [side ** (n - 1 - a) for a in range(n)]
    perms = list(itertools.permutations(range(n)))
    elements = []
    for cell in itertools.product(range(k), repeat=n):
        base = sum(ci * st for ci, st in zip(cell, strides))
        for pi in perms:
            vid = base
            s = [(vid,)]
            for axis in pi:
                vid += strides[axis]
                s.append((vid,))
            elements.append(tuple(s))
    return Mesh(n, vertices, elements)


def regular_simplex_mesh(n: int, edge: float = 1.0) -> Mesh:
    if n < 1 or edge <= 0:
        raise ValueError("need n >= 1 and edge > 0")
    pts = regular_simplex(n, float(edge))
    return Mesh.from_arrays(pts, [list(range(n + 1))])


def random_simplex_mesh(n: int, seed: int = 0, min_quality: float = 0.01) -> Mesh:
    """Single simplex with vertices uniform in the unit cube.

    Uses numpy's PCG64 generator seeded with ``seed``; draws are rejected until
    the shape quality reaches ``min_quality``.
    """
    if not 0 < min_quality < 1:
        raise ValueError("min_quality must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    for _ in range(MAX_REJECTIONS):
        pts = rng.random((n + 1, n))
        if qualities(pts)[0] >= min_quality:
            return Mesh.from_arrays(pts, [list(range(n + 1))])
    raise MeshError(f"no simplex with quality >= {min_quality} after {MAX_REJECTIONS} draws")


def tagged_mesh(mesh: Mesh, tag: int = None) -> Mesh:
    """Treat every element, in its stored vertex order, as a Maubach simplex.

    This bypasses the marking stages: the caller vouches that the ordering is
    reflected (true for :func:`kuhn_mesh` with ``tag = n``).
    """
    tag = mesh.n if tag is None else tag
    if not 1 <= tag <= mesh.n:
        raise ValueError(f"tag must lie in 1..{mesh.n}")
    elements = [MaubachSimplex(s, tag, mesh.n) for s in mesh.simplices()]
    return Mesh(mesh.n, dict(mesh.vertices), elements)
