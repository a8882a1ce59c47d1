"""Finite abstract simplicial complexes and the standard constructions.

Vertices are opaque hashable identifiers; their total order is fixed at
construction time and every simplex is stored as a tuple sorted by that
order. The face enumeration is materialized eagerly and its iteration
order (dimension, then lexicographic by vertex rank) is the contract all
matrix-building code relies on.
"""

from __future__ import annotations

from itertools import combinations
from typing import Hashable, Iterable, Sequence

import networkx as nx

from .errors import InputError

Vertex = Hashable
Simplex = tuple  # vertices in rank order


class SimplicialComplex:
    def __init__(self, vertices: Sequence[Vertex], facets: Sequence[Simplex]):
        # internal: inputs already canonical; use build_from_facets instead
        self.vertices = tuple(vertices)
        self._rank = {v: i for i, v in enumerate(self.vertices)}
        if len(self._rank) != len(self.vertices):
            raise InputError("duplicate vertex identifiers")
        self.facets = tuple(facets)
        faces: dict[int, set] = {}
        for f in self.facets:
            for k in range(1, len(f) + 1):
                faces.setdefault(k - 1, set()).update(combinations(f, k))
        self._faces = {
            k: sorted(fs, key=self._key) for k, fs in sorted(faces.items())
        }
        self._face_set = {s for fs in self._faces.values() for s in fs}

    def _key(self, simplex: Simplex) -> tuple:
        return tuple(self._rank[v] for v in simplex)

    def simplex(self, vertices: Iterable[Vertex]) -> Simplex:
        """Canonical (rank-sorted, duplicate-free) tuple for a vertex set."""
        vs = set(vertices)
        for v in vs:
            if v not in self._rank:
                raise InputError(f"unknown vertex {v!r}")
        return tuple(sorted(vs, key=self._rank.__getitem__))

    @property
    def dim(self) -> int:
        return max(self._faces) if self._faces else -1

    def faces(self, k: int) -> list[Simplex]:
        return self._faces.get(k, [])

    def all_faces(self) -> list[Simplex]:
        return [s for k in sorted(self._faces) for s in self._faces[k]]

    def face_index(self, k: int) -> dict[Simplex, int]:
        return {s: i for i, s in enumerate(self.faces(k))}

    def has_simplex(self, simplex: Iterable[Vertex]) -> bool:
        try:
            return self.simplex(simplex) in self._face_set
        except InputError:
            return False

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces(k)) for k in range(self.dim + 1))

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimplicialComplex)
            and self.vertices == other.vertices
            and set(self.facets) == set(other.facets)
        )

    def __hash__(self):
        return hash((self.vertices, frozenset(self.facets)))

    def __repr__(self):
        return f"SimplicialComplex(|V|={len(self.vertices)}, f={self.f_vector})"


class SimplexPoset:
    """Simplices of a complex ordered by face inclusion.

    With the empty simplex included the poset has a unique minimum ().
    """

    def __init__(self, K: SimplicialComplex, include_empty: bool = False):
        self.elements: list[Simplex] = ([()] if include_empty else []) + K.all_faces()

    @staticmethod
    def leq(a: Simplex, b: Simplex) -> bool:
        return set(a) <= set(b)


def build_from_facets(
    vertex_ids: Sequence[Vertex], facet_list: Iterable[Iterable[Vertex]]
) -> SimplicialComplex:
    """Downward-closed complex from candidate facets.

    Duplicate and dominated facets are dropped; vertices missing from every
    facet become isolated points (singleton facets). `vertex_ids` fixes the
    canonical vertex order.
    """
    order = {v: i for i, v in enumerate(vertex_ids)}
    if len(order) != len(tuple(vertex_ids)):
        raise InputError("duplicate vertex identifiers")
    canon = []
    for f in facet_list:
        fs = set(f)
        if not fs:
            raise InputError("empty facet")
        for v in fs:
            if v not in order:
                raise InputError(f"facet vertex {v!r} not among vertex ids")
        canon.append(tuple(sorted(fs, key=order.__getitem__)))
    covered = {v for f in canon for v in f}
    canon.extend((v,) for v in vertex_ids if v not in covered)
    canon = sorted(set(canon), key=len, reverse=True)
    facets: list[Simplex] = []
    for f in canon:
        fs = set(f)
        if not any(fs <= set(g) for g in facets):
            facets.append(f)
    facets.sort(key=lambda f: tuple(order[v] for v in f))
    return SimplicialComplex(tuple(vertex_ids), facets)


def flag_check_and_complete(K: SimplicialComplex) -> tuple[bool, SimplicialComplex]:
    """(is_flag, clique complex of the 1-skeleton)."""
    g = nx.Graph()
    g.add_nodes_from(K.vertices)
    g.add_edges_from(K.faces(1))
    completion = build_from_facets(K.vertices, nx.find_cliques(g))
    is_flag = completion == K
    return is_flag, completion


def full_subcomplex(K: SimplicialComplex, W: Iterable[Vertex]) -> SimplicialComplex:
    """Simplices of K whose vertices all lie in W."""
    ws = set(W)
    for v in ws:
        if v not in K._rank:
            raise InputError(f"unknown vertex {v!r}")
    kept = [v for v in K.vertices if v in ws]
    facets = [tuple(v for v in f if v in ws) for f in K.facets]
    return build_from_facets(kept, [f for f in facets if f])


def link(K: SimplicialComplex, simplex: Iterable[Vertex]) -> SimplicialComplex:
    s = K.simplex(simplex)
    if s not in K._face_set:
        raise InputError(f"{s!r} is not a simplex of the complex")
    ss = set(s)
    facets = [tuple(v for v in f if v not in ss) for f in K.facets if ss <= set(f)]
    vs = sorted({v for f in facets for v in f}, key=K._rank.__getitem__)
    return build_from_facets(vs, [f for f in facets if f])


def star(K: SimplicialComplex, simplex: Iterable[Vertex]) -> SimplicialComplex:
    s = K.simplex(simplex)
    if s not in K._face_set:
        raise InputError(f"{s!r} is not a simplex of the complex")
    ss = set(s)
    facets = [f for f in K.facets if ss <= set(f)]
    vs = sorted({v for f in facets for v in f}, key=K._rank.__getitem__)
    return build_from_facets(vs, facets)


def cone(K: SimplicialComplex, apex: Vertex) -> SimplicialComplex:
    if apex in K._rank:
        raise InputError(f"apex {apex!r} already a vertex")
    facets = [f + (apex,) for f in K.facets] or [(apex,)]
    return build_from_facets(K.vertices + (apex,), facets)


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Join of complexes on disjoint vertex sets."""
    if set(K1.vertices) & set(K2.vertices):
        raise InputError("vertex identifier collision in join")
    facets = [f1 + f2 for f1 in K1.facets for f2 in K2.facets]
    facets = facets or list(K1.facets) + list(K2.facets)
    return build_from_facets(K1.vertices + K2.vertices, facets)


def order_complex(elements: Sequence, leq) -> SimplicialComplex:
    """Complex of chains of a finite poset; facets are the maximal chains."""
    g = nx.Graph()
    g.add_nodes_from(range(len(elements)))
    for i, j in combinations(range(len(elements)), 2):
        if leq(elements[i], elements[j]) or leq(elements[j], elements[i]):
            g.add_edge(i, j)
    facets = [tuple(elements[i] for i in c) for c in nx.find_cliques(g)]
    return build_from_facets(tuple(elements), facets)


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    poset = SimplexPoset(K)
    return order_complex(poset.elements, SimplexPoset.leq)
