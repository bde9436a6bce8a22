"""Refinement-set selectors: sphere/hemisphere crossing, curvature, random."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .core import Mesh, MeshError
from .quality import element_points


def select_by_hypersphere(mesh: Mesh, center: Sequence[float], radius: float,
                          halfspace: Optional[Tuple[int, float]] = None) -> set:
    """Elements whose vertices straddle or touch the sphere ``|x - center| = radius``.

    ``halfspace = (axis, bound)`` additionally requires one vertex with
    ``x[axis] >= bound``. Vertex sampling only: an element crossed by the sphere
    between its vertices is missed.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    pts = element_points(mesh)
    f = np.linalg.norm(pts - np.asarray(center, dtype=float), axis=2) - radius
    hit = (f.min(axis=1) <= 0) & (f.max(axis=1) >= 0)
    if halfspace is not None:
        axis, bound = halfspace
        hit &= (pts[:, :, axis] >= bound).any(axis=1)
    return set(np.flatnonzero(hit).tolist())


def select_by_cylinder(mesh: Mesh, center: Sequence[float], radius: float,
                       axes: Sequence[int] = (0, 1, 2), height_axis: int = 3,
                       bounds: Tuple[float, float] = (-0.1, 1.1)) -> set:
    """Elements crossing a sphere in the ``axes`` coordinates and having a
    vertex with ``bounds[0] <= x[height_axis] <= bounds[1]``."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    pts = element_points(mesh)
    sub = pts[:, :, list(axes)]
    f = np.linalg.norm(sub - np.asarray(center, dtype=float), axis=2) - radius
    hit = (f.min(axis=1) <= 0) & (f.max(axis=1) >= 0)
    t = pts[:, :, height_axis]
    hit &= ((t >= bounds[0]) & (t <= bounds[1])).any(axis=1)
    return set(np.flatnonzero(hit).tolist())


@dataclass(frozen=True)
class GravitationalPotential:
    """Two point masses sliding toward each other along z over t in [0, 1].

    Evaluated on points ``(x, y, z, t)``; accepts any leading array shape.
    """

    G: float = 1.0
    m1: float = 1.0
    m2: float = 1.0
    p1: Tuple[float, float, float] = (0.5, 0.5, 0.125)
    p2: Tuple[float, float, float] = (0.5, 0.5, 0.875)
    velocity: float = 0.375

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        space, t = x[..., :3], x[..., 3]
        shift = np.zeros(x.shape[:-1] + (3,))
        shift[..., 2] = self.velocity * t
        r1 = np.linalg.norm(space - (np.asarray(self.p1) + shift), axis=-1)
        r2 = np.linalg.norm(space - (np.asarray(self.p2) - shift), axis=-1)
        with np.errstate(divide="ignore", invalid="ignore"):
            return -self.G * (self.m1 / r1 + self.m2 / r2)


def hessians(potential: Callable, points: np.ndarray, step: float) -> np.ndarray:
    """Central-difference Hessians of ``potential`` at each row of ``points``."""
    points = np.asarray(points, dtype=float)
    m, n = points.shape
    eye = np.eye(n) * step
    f0 = potential(points)
    out = np.empty((m, n, n))
    for i in range(n):
        fp = potential(points + eye[i])
        fm = potential(points - eye[i])
        out[:, i, i] = (fp - 2 * f0 + fm) / step**2
        for j in range(i + 1, n):
            fpp = potential(points + eye[i] + eye[j])
            fpm = potential(points + eye[i] - eye[j])
            fmp = potential(points - eye[i] + eye[j])
            fmm = potential(points - eye[i] - eye[j])
            out[:, i, j] = out[:, j, i] = (fpp - fpm - fmp + fmm) / (4 * step**2)
    if not np.all(np.isfinite(out)):
        raise MeshError("potential is singular at a mesh vertex")
    return out


def curvature_estimates(points: np.ndarray, potential: Callable, step: float) -> np.ndarray:
    """Sum over vertices of ``|h^T H h|`` with ``h`` the offset from the centroid.

    ``points`` has shape (E, n+1, n).
    """
    points = np.asarray(points, dtype=float)
    e, m, n = points.shape
    h = points - points.mean(axis=1, keepdims=True)
    hess = hessians(potential, points.reshape(-1, n), step).reshape(e, m, n, n)
    quad = np.einsum("evi,evij,evj->ev", h, hess, h)
    return np.abs(quad).sum(axis=1)


@dataclass(frozen=True)
class CylinderRegion:
    center: Tuple[float, ...] = (0.5, 0.5, 0.5)
    radius: float = 1.0
    axes: Tuple[int, ...] = (0, 1, 2)
    height_axis: int = 3
    bounds: Tuple[float, float] = (-0.1, 1.1)

    def select(self, mesh: Mesh) -> set:
        return select_by_cylinder(mesh, self.center, self.radius, self.axes,
                                  self.height_axis, self.bounds)


def select_by_curvature(mesh: Mesh, potential: Callable = None, fraction: float = 0.1,
                        region=None, step: Optional[float] = None) -> set:
    """Top ``fraction`` of the region's elements ranked by curvature estimate.

    ``step`` defaults to 1e-4 of the mesh bounding-box diagonal. Ties keep the
    lower handle.
    """
    if not 0 < fraction <= 1:
        raise ValueError("fraction must lie in (0, 1]")
    potential = GravitationalPotential() if potential is None else potential
    region = CylinderRegion() if region is None else region
    candidates = sorted(region.select(mesh))
    if not candidates:
        return set()
    pts = element_points(mesh)
    if step is None:
        allpts = pts.reshape(-1, mesh.n)
        step = 1e-4 * float(np.linalg.norm(allpts.max(axis=0) - allpts.min(axis=0)))
    est = curvature_estimates(pts[candidates], potential, step)
    keep = math.ceil(fraction * len(candidates))
    order = sorted(range(len(candidates)), key=lambda i: (-est[i], candidates[i]))
    return {candidates[i] for i in order[:keep]}


def select_random(mesh: Mesh, fraction: float, rng: np.random.Generator) -> set:
    if not 0 < fraction <= 1:
        raise ValueError("fraction must lie in (0, 1]")
    count = max(1, math.ceil(fraction * len(mesh.elements)))
    return set(rng.choice(len(mesh.elements), size=count, replace=False).tolist())


def hemisphere_distance(points: np.ndarray, center: Sequence[float], radius: float,
                        axis: int = 0, bound: float = None) -> np.ndarray:
    """Euclidean distance from each point to the hemisphere
    ``{|x - center| = radius, x[axis] >= bound}`` (``bound`` defaults to the
    center coordinate, i.e. an exact half sphere)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    c = np.asarray(center, dtype=float)
    if bound is None:
        bound = c[axis]
    if not math.isclose(bound, c[axis]):
        raise ValueError("only the equatorial cut through the center is supported")
    d = points - c
    r = np.linalg.norm(d, axis=1)
    sphere = np.abs(r - radius)
    # nearest sphere point is on the kept half when the radial direction points into it
    on_half = d[:, axis] >= 0
    perp = np.sqrt(np.maximum(r**2 - d[:, axis] ** 2, 0.0))
    rim = np.sqrt(d[:, axis] ** 2 + (perp - radius) ** 2)
    return np.where(on_half, sphere, rim)
