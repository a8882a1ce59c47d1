"""Polyhedral joins, the sphere-labelled octahedralization, and doubling.

The octahedralization replaces each vertex of a base complex L with the
boundary of an m-simplex (m+1 labels); a labelled vertex set spans a
simplex iff its bases span a simplex of L and over each base the labels
used omit at least one of the m+1 choices. Doubling keeps one fixed label
over every vertex of a cycle support C and the whole label sphere over the
vertices of one distinguished simplex of C.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, NamedTuple

from .errors import InputError
from .scomplex import (
    SimplicialComplex,
    Simplex,
    Vertex,
    build_from_facets,
    flag_check_and_complete,
    full_subcomplex,
)


class LabeledVertex(NamedTuple):
    base: Vertex
    label: int

    def __str__(self):
        return f"{self.base}^{self.label}"


@dataclass(frozen=True)
class OctaComplex:
    """A sphere-labelled complex with its projection to the base."""

    complex: SimplicialComplex
    projection: dict
    m: int
    delta: int  # dimension parameter m*(d+1)-1 of the ambient octahedralization

    def project(self, simplex: Iterable) -> tuple:
        bases = {self.projection[v] for v in simplex}
        return tuple(sorted(bases, key=str))


def polyhedral_join(
    L: SimplicialComplex, factor_map: dict
) -> SimplicialComplex:
    """Union over the simplices of L of the joins of the factors.

    factor_map assigns each vertex of L a nonempty complex; the factors
    must have pairwise disjoint vertex identifier sets.
    """
    seen: set = set()
    for v in L.vertices:
        K = factor_map[v]
        if not K.vertices:
            raise InputError(f"factor over {v!r} is empty")
        overlap = seen & set(K.vertices)
        if overlap:
            raise InputError(f"factor vertex identifiers collide: {overlap}")
        seen |= set(K.vertices)
    vertices = [w for v in L.vertices for w in factor_map[v].vertices]
    facets = []
    for f in L.facets:
        for choice in product(*(factor_map[v].facets for v in f)):
            facets.append(tuple(w for part in choice for w in part))
    return build_from_facets(vertices, facets)


def _sphere_boundary(base: Vertex, m: int) -> SimplicialComplex:
    verts = [LabeledVertex(base, i) for i in range(m + 1)]
    if m == 0:
        return build_from_facets(verts, [tuple(verts)])
    facets = [tuple(verts[:i] + verts[i + 1 :]) for i in range(m + 1)]
    return build_from_facets(verts, facets)


def octahedralization(L: SimplicialComplex, m: int) -> OctaComplex:
    """Polyhedral join of (m-1)-spheres (boundaries of m-simplices) over L."""
    if m < 1:
        raise InputError("sphere parameter m must be >= 1")
    if L.dim < 0:
        raise InputError("base complex is empty")
    factors = {v: _sphere_boundary(v, m) for v in L.vertices}
    cx = polyhedral_join(L, factors)
    projection = {w: w.base for w in cx.vertices}
    return OctaComplex(cx, projection, m, m * (L.dim + 1) - 1)


def _validate_cycle(L: SimplicialComplex, C: Iterable) -> list[Simplex]:
    support = [L.simplex(s) for s in C]
    if not support:
        raise InputError("empty cycle support")
    if len(set(support)) != len(support):
        raise InputError("cycle support lists a simplex twice")
    k = len(support[0]) - 1
    if any(len(s) - 1 != k for s in support):
        raise InputError("cycle support mixes dimensions")
    for s in support:
        if not L.has_simplex(s):
            raise InputError(f"{s!r} is not a simplex of the base complex")
    if k > 0:
        face_count: dict = {}
        for s in support:
            for i in range(len(s)):
                face = s[:i] + s[i + 1 :]
                face_count[face] = face_count.get(face, 0) + 1
        odd = [f for f, c in face_count.items() if c % 2]
        if odd:
            raise InputError(f"support is not a GF(2) cycle: face {odd[0]} is odd")
    return support


def doubled_complex(
    L: SimplicialComplex, m: int, C: Iterable, delta_simplex: Iterable
) -> OctaComplex:
    """Cycle support doubled over one of its simplices, inside the
    octahedralization: label 0 everywhere on C, all m+1 labels over the
    distinguished simplex."""
    is_flag, _ = flag_check_and_complete(L)
    if not is_flag:
        raise InputError("doubling is defined over flag base complexes only")
    support = _validate_cycle(L, C)
    delta = L.simplex(delta_simplex)
    if delta not in support:
        raise InputError("distinguished simplex is not in the cycle support")
    k = len(delta) - 1
    octa = octahedralization(L, m)
    keep = {LabeledVertex(v, 0) for s in support for v in s}
    keep |= {LabeledVertex(v, i) for v in delta for i in range(1, m + 1)}
    sub = full_subcomplex(octa.complex, keep)
    projection = {w: w.base for w in sub.vertices}
    return OctaComplex(sub, projection, m, m * (k + 1) - 1)
