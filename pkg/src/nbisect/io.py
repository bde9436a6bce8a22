"""Line-oriented text format for marked and unmarked meshes.

::

    nbisect-mesh 1
    dimension <n>
    vertices <V>
    <k> <id_1 .. id_k> <x_1 .. x_n>          one line per vertex
    elements <E>
    plain <v_0 .. v_n>
    tree <level> <v_0 .. v_n> <r_1 .. r_level> <a b> ...
    maubach <tag> <level> <v_0 .. v_n>
    end

Element lines refer to vertices by their 0-based record position. A tree line
lists the reflected list newest first, then the bisection-tree edges in
preorder (node, left, right); the tree shape is implied by ``n - level``.
Floats are written with ``repr`` so reading them back is exact.
"""
from __future__ import annotations

from pathlib import Path
from typing import List

from .bisect import MaubachSimplex, TreeSimplex
from .core import Mesh, MeshError
from .marking import BisectionTree

MAGIC = "nbisect-mesh"
VERSION = 1


class MeshFormatError(MeshError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _tree_tokens(t: BisectionTree, index, out: List[str]):
    out.append(str(index[t.node[0]]))
    out.append(str(index[t.node[1]]))
    if t.left is not None:
        _tree_tokens(t.left, index, out)
        _tree_tokens(t.right, index, out)


def format_mesh(mesh: Mesh) -> str:
    order = sorted(mesh.vertices)
    index = {v: i for i, v in enumerate(order)}
    lines = [f"{MAGIC} {VERSION}", f"dimension {mesh.n}", f"vertices {len(order)}"]
    for v in order:
        coords = " ".join(repr(float(x)) for x in mesh.vertices[v])
        lines.append(f"{len(v)} {' '.join(map(str, v))} {coords}")
    lines.append(f"elements {len(mesh.elements)}")
    for e in mesh.elements:
        if isinstance(e, tuple):
            lines.append("plain " + " ".join(str(index[v]) for v in e))
        elif isinstance(e, TreeSimplex):
            toks = ["tree", str(e.level)]
            toks += [str(index[v]) for v in e.simplex]
            toks += [str(index[v]) for v in e.reflected]
            _tree_tokens(e.tree, index, toks)
            lines.append(" ".join(toks))
        elif isinstance(e, MaubachSimplex):
            lines.append(f"maubach {e.tag} {e.level} " + " ".join(str(index[v]) for v in e.simplex))
        else:
            raise MeshError(f"cannot serialise element of type {type(e).__name__}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def write_mesh(mesh: Mesh, path) -> None:
    Path(path).write_text(format_mesh(mesh), encoding="utf-8", newline="\n")


class _Lines:
    def __init__(self, text: str):
        self.lines = text.split("\n")
        if self.lines and self.lines[-1] == "":
            self.lines.pop()
        self.pos = 0

    @property
    def lineno(self) -> int:
        return self.pos

    def next(self, what: str) -> List[str]:
        if self.pos >= len(self.lines):
            raise MeshFormatError(self.pos + 1, f"unexpected end of file, expected {what}")
        self.pos += 1
        return self.lines[self.pos - 1].split()

    def header(self, key: str) -> int:
        toks = self.next(f"'{key} <count>'")
        if len(toks) != 2 or toks[0] != key:
            raise MeshFormatError(self.lineno, f"expected '{key} <count>', got {' '.join(toks)!r}")
        return self.int(toks[1])

    def int(self, tok: str) -> int:
        try:
            return int(tok)
        except ValueError:
            raise MeshFormatError(self.lineno, f"expected an integer, got {tok!r}") from None

    def float(self, tok: str) -> float:
        try:
            return float(tok)
        except ValueError:
            raise MeshFormatError(self.lineno, f"expected a number, got {tok!r}") from None


def parse_mesh(text: str, dimension: int = None) -> Mesh:
    src = _Lines(text)
    toks = src.next("header")
    if len(toks) != 2 or toks[0] != MAGIC:
        raise MeshFormatError(1, f"not an {MAGIC} file")
    if src.int(toks[1]) != VERSION:
        raise MeshFormatError(1, f"unsupported format version {toks[1]}")
    n = src.header("dimension")
    if n < 1:
        raise MeshFormatError(src.lineno, f"bad dimension {n}")
    if dimension is not None and n != dimension:
        raise MeshError(f"mesh has dimension {n}, expected {dimension}")

    nv = src.header("vertices")
    order = []
    vertices = {}
    for _ in range(nv):
        toks = src.next("a vertex record")
        k = src.int(toks[0]) if toks else 0
        if k < 1 or len(toks) != 1 + k + n:
            raise MeshFormatError(src.lineno, f"vertex record needs <k> <k ids> <{n} coords>")
        v = tuple(src.int(t) for t in toks[1:1 + k])
        if list(v) != sorted(v) or min(v) < 0:
            raise MeshFormatError(src.lineno, f"multi-id {v} is not sorted and non-negative")
        if v in vertices:
            raise MeshFormatError(src.lineno, f"duplicate vertex {v}")
        vertices[v] = tuple(src.float(t) for t in toks[1 + k:])
        order.append(v)

    def ref(tok: str):
        i = src.int(tok)
        if not 0 <= i < nv:
            raise MeshFormatError(src.lineno, f"vertex reference {i} out of range")
        return order[i]

    def tree(toks, pos, height):
        node = (ref(toks[pos]), ref(toks[pos + 1]))
        if node[0] >= node[1]:
            raise MeshFormatError(src.lineno, f"tree edge {node} is not canonically ordered")
        pos += 2
        if height == 0:
            return BisectionTree(node), pos
        left, pos = tree(toks, pos, height - 1)
        right, pos = tree(toks, pos, height - 1)
        return BisectionTree(node, left, right), pos

    ne = src.header("elements")
    elements = []
    for _ in range(ne):
        toks = src.next("an element record")
        kind = toks[0] if toks else ""
        if kind == "plain":
            if len(toks) != n + 2:
                raise MeshFormatError(src.lineno, f"plain element needs {n + 1} vertices")
            elements.append(tuple(ref(t) for t in toks[1:]))
        elif kind == "tree":
            level = src.int(toks[1]) if len(toks) > 1 else -1
            if not 0 <= level <= n - 1:
                raise MeshFormatError(src.lineno, f"tree level must lie in 0..{n - 1}")
            height = n - 1 - level
            expected = 2 + (n + 1) + level + 2 * (2 ** (height + 1) - 1)
            if len(toks) != expected:
                raise MeshFormatError(src.lineno, f"tree element needs {expected} tokens, got {len(toks)}")
            simplex = tuple(ref(t) for t in toks[2:3 + n])
            reflected = tuple(ref(t) for t in toks[3 + n:3 + n + level])
            t, _ = tree(toks, 3 + n + level, height)
            elements.append(TreeSimplex(simplex, reflected, t, level))
        elif kind == "maubach":
            if len(toks) != n + 4:
                raise MeshFormatError(src.lineno, f"maubach element needs tag, level and {n + 1} vertices")
            tag, level = src.int(toks[1]), src.int(toks[2])
            if not 1 <= tag <= n or level < n:
                raise MeshFormatError(src.lineno, f"bad maubach tag {tag} / level {level}")
            elements.append(MaubachSimplex(tuple(ref(t) for t in toks[3:]), tag, level))
        else:
            raise MeshFormatError(src.lineno, f"unknown element kind {kind!r}")

    toks = src.next("'end'")
    if toks != ["end"]:
        raise MeshFormatError(src.lineno, "expected 'end'")
    return Mesh(n, vertices, elements)


def read_mesh(path, dimension: int = None) -> Mesh:
    return parse_mesh(Path(path).read_text(encoding="utf-8"), dimension)
