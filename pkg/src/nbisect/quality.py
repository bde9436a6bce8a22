"""Shape quality of simplices and similarity-class census."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Sequence

import numpy as np

from .core import Mesh, MeshError, MultiId, Point, Simplex, element_simplex

CSV_HEADER = "iteration,elements,vertices,minQ,maxQ"


@lru_cache(maxsize=None)
def regular_simplex(n: int, edge: float = 1.0) -> np.ndarray:
    """Vertices (n+1, n) of a regular simplex with the given edge length.

    Each new vertex sits above the centroid of the previous ones, along a new
    axis, at the height that makes it unit distance from all of them.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    pts = np.zeros((n + 1, n))
    for k in range(1, n + 1):
        c = pts[:k].mean(axis=0)
        r2 = float(np.sum((pts[0] - c) ** 2))
        pts[k] = c
        pts[k, k - 1] = math.sqrt(1.0 - r2)
    pts *= edge
    pts.setflags(write=False)
    return pts


@lru_cache(maxsize=None)
def _reference_inverse(n: int):
    ref = regular_simplex(n)
    w = (ref[1:] - ref[0]).T
    winv = np.linalg.inv(w)
    winv.setflags(write=False)
    return winv, float(np.linalg.det(w))


def qualities(points: np.ndarray, oriented: bool = False) -> np.ndarray:
    """Vectorised quality for an array of simplices of shape (E, n+1, n).

    Returns ``n det(S)^(2/n) / tr(S^T S)`` where ``S`` maps the unit regular
    simplex onto each element; 1 is a regular simplex, 0 a degenerate one.
    Unless ``oriented`` is set the orientation of the vertex order is ignored;
    with it, negatively oriented elements score 0.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim == 2:
        points = points[None]
    e, m, n = points.shape
    if m != n + 1:
        raise MeshError(f"expected {n + 1} vertices per simplex in R^{n}, got {m}")
    winv, wdet = _reference_inverse(n)
    d = np.swapaxes(points[:, 1:, :] - points[:, :1, :], 1, 2)
    s = d @ winv
    det = np.linalg.det(d) / wdet
    frob = np.einsum("eij,eij->e", s, s)
    q = np.zeros(e)
    good = (det > 0) if oriented else (det != 0)
    absdet = np.abs(det[good])
    q[good] = n * np.exp((2.0 / n) * np.log(absdet)) / frob[good]
    return np.clip(q, 0.0, 1.0)


def shape_quality(s: Simplex, vertices: Dict[MultiId, Point], oriented: bool = False) -> float:
    return float(qualities(np.array([[vertices[v] for v in s]]), oriented)[0])


def element_points(mesh: Mesh) -> np.ndarray:
    vt = mesh.vertices
    return np.array([[vt[v] for v in element_simplex(e)] for e in mesh.elements], dtype=float)


def volumes(points: np.ndarray) -> np.ndarray:
    """Unsigned volumes of an (E, n+1, n) stack of simplices."""
    points = np.asarray(points, dtype=float)
    if points.ndim == 2:
        points = points[None]
    n = points.shape[2]
    d = points[:, 1:, :] - points[:, :1, :]
    return np.abs(np.linalg.det(d)) / math.factorial(n)


@dataclass(frozen=True)
class QualityReport:
    iteration: int
    elements: int
    vertices: int
    min_q: float
    max_q: float

    def csv_row(self) -> str:
        return f"{self.iteration},{self.elements},{self.vertices},{self.min_q!r},{self.max_q!r}"


def quality_stats(mesh: Mesh, iteration: int = 0) -> QualityReport:
    if not mesh.elements:
        raise MeshError("quality of an empty mesh is undefined")
    q = qualities(element_points(mesh))
    return QualityReport(iteration, len(mesh.elements), len(mesh.used_vertices()),
                         float(q.min()), float(q.max()))


def edge_descriptors(points: np.ndarray) -> np.ndarray:
    """Sorted edge lengths of each simplex, divided by its longest edge."""
    points = np.asarray(points, dtype=float)
    m = points.shape[1]
    i, j = np.triu_indices(m, k=1)
    lengths = np.linalg.norm(points[:, j, :] - points[:, i, :], axis=2)
    lengths.sort(axis=1)
    return lengths / lengths[:, -1:]


def count_classes(descriptors: np.ndarray, tol: float) -> int:
    """Greedy clustering: a descriptor joins the first representative within ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if len(descriptors) == 0:
        return 0
    descriptors = np.asarray(descriptors, dtype=float)
    # bucket on a tol-sized grid first so the greedy pass only sees a few rows
    _, first = np.unique(np.round(descriptors / tol), axis=0, return_index=True)
    uniq = descriptors[np.sort(first)]
    reps = []
    for row in uniq:
        if not any(np.all(np.abs(row - r) < tol) for r in reps):
            reps.append(row)
    return len(reps)


def similarity_classes(elements: Sequence, vertices: Dict[MultiId, Point], tol: float = 1e-8) -> int:
    """Approximate number of similarity classes among ``elements``.

    Similar simplices always share a descriptor, but a few non-similar ones
    can collide, so the count may fall short of the true one and never
    exceeds it (up to ``tol``).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not elements:
        return 0
    pts = np.array([[vertices[v] for v in element_simplex(e)] for e in elements], dtype=float)
    return count_classes(edge_descriptors(pts), tol)
