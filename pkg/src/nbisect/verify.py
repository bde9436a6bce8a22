"""Conformity and reflectivity checks based on face dictionaries."""
from __future__ import annotations

from typing import Dict, List, Tuple

from .core import Mesh, MeshError, MultiId, element_simplex

FaceDict = Dict[Tuple[MultiId, ...], List[int]]

OVERSHARED = "A face cannot be shared by more than two simplices."


def get_faces(mesh: Mesh) -> Tuple[FaceDict, FaceDict]:
    """Split the faces of ``mesh`` into (inner, boundary) dictionaries.

    Keys are lexicographically sorted faces, values the handles of the one or
    two incident elements.
    """
    faces: FaceDict = {}
    for h, e in enumerate(mesh.elements):
        s = sorted(element_simplex(e))
        for j in range(len(s)):
            key = tuple(s[:j] + s[j + 1:])
            faces.setdefault(key, []).append(h)
    inner: FaceDict = {}
    boundary: FaceDict = {}
    for key, hs in faces.items():
        if len(hs) == 1:
            boundary[key] = hs
        elif len(hs) == 2:
            inner[key] = hs
        else:
            raise MeshError(f"{OVERSHARED} Face {key} is shared by elements {hs}")
    return inner, boundary


def get_fathers_vertices(face) -> Tuple[MultiId, ...]:
    """Distinct raw ids appearing in the face's multi-ids, as sorted length-one ids."""
    ids = set()
    for v in face:
        ids.update(v)
    return tuple((i,) for i in sorted(ids))


def non_conformal_boundary_faces(m1: Mesh, m0: Mesh) -> list:
    """Boundary faces of ``m1`` that do not descend from a boundary face of ``m0``."""
    _, b0 = get_faces(m0)
    _, b1 = get_faces(m1)
    bad = []
    for f in b1:
        father = get_fathers_vertices(f)
        if len(father) != m1.n or father not in b0:
            bad.append(f)
    return bad


def is_mesh_conformal(m1: Mesh, m0: Mesh) -> bool:
    """True when no face of ``m1`` is over-shared and all its boundary faces
    lie on boundary faces of the conformal mesh ``m0``.

    ``m1`` must still carry the multi-ids produced by refining ``m0``.
    Over-shared faces raise :class:`MeshError` instead of returning False.
    """
    return not non_conformal_boundary_faces(m1, m0)


def is_reflected(mesh: Mesh) -> bool:
    """True when every pair of neighbours lists their shared face in the same order."""
    inner, _ = get_faces(mesh)
    elements = mesh.elements
    for key, (h1, h2) in inner.items():
        shared = set(key)
        f1 = [v for v in element_simplex(elements[h1]) if v in shared]
        f2 = [v for v in element_simplex(elements[h2]) if v in shared]
        if f1 != f2:
            return False
    return True
