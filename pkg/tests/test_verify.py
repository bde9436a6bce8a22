import pytest

from nbisect.bisect import MaubachSimplex, bisect_simplices
from nbisect.core import Mesh, MeshError
from nbisect.driver import local_refine
from nbisect.marking import mark_mesh
from nbisect.meshgen import GridSpec, kuhn_mesh, tagged_mesh
from nbisect.verify import OVERSHARED, get_faces, get_fathers_vertices, is_mesh_conformal, is_reflected

SQUARE = {(1,): (0.0, 0.0), (2,): (1.0, 0.0), (3,): (0.0, 1.0), (4,): (1.0, 1.0)}


def test_get_faces_of_square():
    m = Mesh(2, dict(SQUARE), [((1,), (2,), (3,)), ((2,), (3,), (4,))])
    inner, boundary = get_faces(m)
    assert inner == {((2,), (3,)): [0, 1]}
    assert len(boundary) == 4


def test_overshared_face_raises():
    verts = dict(SQUARE)
    verts[(5,)] = (0.5, -1.0)
    m = Mesh(2, verts, [((1,), (2,), (3,)), ((1,), (2,), (4,)), ((1,), (2,), (5,))])
    with pytest.raises(MeshError, match=OVERSHARED):
        get_faces(m)


def test_hanging_vertex_is_not_conformal():
    m0 = mark_mesh(Mesh(2, dict(SQUARE), [((1,), (2,), (3,)), ((2,), (3,), (4,))]))
    assert m0.elements[0].tree.node == ((2,), (3,))
    hanging = bisect_simplices(m0, [0])
    assert not is_mesh_conformal(hanging, m0)
    assert is_mesh_conformal(local_refine(m0, [0], renumber=False), m0)


def test_fathers_vertices():
    assert get_fathers_vertices(((1, 2), (2, 3))) == ((1,), (2,), (3,))
    assert get_fathers_vertices(((1, 1, 2), (2,))) == ((1,), (2,))


def test_permuted_neighbours_are_not_reflected():
    m = Mesh(2, dict(SQUARE), [MaubachSimplex(((2,), (3,), (1,)), 2, 2),
                               MaubachSimplex(((3,), (2,), (4,)), 2, 2)])
    assert not is_reflected(m)
    m.elements[1] = MaubachSimplex(((2,), (3,), (4,)), 2, 2)
    assert is_reflected(m)


def test_kuhn_is_reflected():
    for n in (2, 3, 4):
        assert is_reflected(tagged_mesh(kuhn_mesh(GridSpec(n, 2))))
