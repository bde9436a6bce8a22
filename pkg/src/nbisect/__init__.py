"""Conformal marked bisection of n-dimensional simplicial meshes."""
from .bisect import MaubachSimplex, TreeSimplex, bisect_simplex, bisect_simplices
from .core import Mesh, MeshError, mid_vertex, multi_id
from .driver import get_non_conformal_simplices, local_refine, refine_mesh, renumber_mesh, uniform_refine
from .marking import BisectionTree, build_edge_order, mark_mesh
from .meshgen import GridSpec, kuhn_mesh, random_simplex_mesh, regular_simplex_mesh, tagged_mesh
from .quality import qualities, quality_stats, similarity_classes
from .verify import get_faces, is_mesh_conformal, is_reflected

__version__ = "0.1.0"

__all__ = [
    "BisectionTree", "GridSpec", "MaubachSimplex", "Mesh", "MeshError", "TreeSimplex",
    "bisect_simplex", "bisect_simplices", "build_edge_order", "get_faces",
    "get_non_conformal_simplices", "is_mesh_conformal", "is_reflected", "kuhn_mesh",
    "local_refine", "mark_mesh", "mid_vertex", "multi_id", "qualities", "quality_stats",
    "random_simplex_mesh", "refine_mesh", "regular_simplex_mesh", "renumber_mesh",
    "similarity_classes", "tagged_mesh", "uniform_refine",
]
