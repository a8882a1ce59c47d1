"""Coxeter systems, finite-type recognition, nerves, and bound reports.

Finite-type recognition matches connected diagrams against the explicit
catalog (paths, one branch point, the exceptional shapes); the numeric
positive-definiteness of the cosine matrix is exposed only as a
cross-check oracle. Labels: m_ss = 1, finite m_st >= 2, infinity stored
as 0 in files and as INF here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .chains import EDCE, betti_z2, edce_verdict
from .errors import InputError
from .scomplex import SimplicialComplex, build_from_facets, flag_check_and_complete

INF = 0  # encodes m_st = infinity


@dataclass(frozen=True)
class CoxeterSystem:
    generators: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise InputError("duplicate generators")
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise InputError("Coxeter matrix must be square over the generators")
        for i in range(n):
            if self.matrix[i][i] != 1:
                raise InputError("diagonal Coxeter labels must be 1")
            for j in range(i + 1, n):
                m = self.matrix[i][j]
                if m != self.matrix[j][i]:
                    raise InputError("Coxeter matrix must be symmetric")
                if m != INF and m < 2:
                    raise InputError("off-diagonal labels are >= 2 or infinity")

    def label(self, s: str, t: str) -> int:
        i, j = self.generators.index(s), self.generators.index(t)
        return self.matrix[i][j]

    def subsets(self) -> Iterable[tuple[str, ...]]:
        for r in range(1, len(self.generators) + 1):
            yield from combinations(self.generators, r)


def _diagram_components(system: CoxeterSystem, T: Sequence[str]) -> list[tuple[str, ...]]:
    # diagram edges join generators with label >= 3 (including infinity)
    T = list(T)
    adj = {
        s: {t for t in T if t != s and system.label(s, t) != 2} for s in T
    }
    seen: set[str] = set()
    comps = []
    for s in T:
        if s in seen:
            continue
        stack, comp = [s], []
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            comp.append(v)
            stack.extend(adj[v] - seen)
        comps.append(tuple(sorted(comp, key=system.generators.index)))
    return comps


def _classify_connected(system: CoxeterSystem, comp: Sequence[str]) -> Optional[str]:
    """Catalog name of a connected diagram if it is finite type, else None."""
    n = len(comp)
    if n == 1:
        return "A1"
    labels = {
        frozenset((s, t)): system.label(s, t)
        for s, t in combinations(comp, 2)
        if system.label(s, t) != 2
    }
    if any(m == INF for m in labels.values()):
        return None
    if n == 2:
        (m,) = labels.values()
        return {3: "A2", 4: "B2", 6: "G2"}.get(m, f"I2({m})")
    if len(labels) != n - 1:
        return None  # a connected diagram that is not a tree has a cycle
    deg = {s: sum(1 for e in labels if s in e) for s in comp}
    if max(deg.values()) > 3:
        return None
    branch = [s for s in comp if deg[s] == 3]
    heavy = [(e, m) for e, m in labels.items() if m >= 4]
    if len(branch) > 1 or len(heavy) > 1:
        return None
    if branch:
        if heavy:
            return None
        b = branch[0]
        arms = []
        for start in (t for t in comp if frozenset((b, t)) in labels):
            length, prev, cur = 1, b, start
            while True:
                nxt = [
                    t
                    for t in comp
                    if t not in (prev, cur) and frozenset((cur, t)) in labels
                ]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[:2] == [1, 1]:
            return f"D{n}"
        if arms == [1, 2, 2]:
            return "E6"
        if arms == [1, 2, 3]:
            return "E7"
        if arms == [1, 2, 4]:
            return "E8"
        return None
    # a path; locate the endpoints and read off the label word
    ends = [s for s in comp if deg[s] == 1]
    prev, cur = None, ends[0]
    word = []
    while True:
        nxt = [t for t in comp if t != prev and frozenset((cur, t)) in labels]
        if not nxt:
            break
        word.append(labels[frozenset((cur, nxt[0]))])
        prev, cur = cur, nxt[0]
    if all(m == 3 for m in word):
        return f"A{n}"
    if not heavy:
        return None
    (_, m), = heavy
    pos = word.index(m)
    at_end = pos in (0, len(word) - 1)
    if m == 4:
        if at_end:
            return f"B{n}"
        if n == 4 and pos == 1:
            return "F4"
        return None
    if m == 5 and at_end:
        return {3: "H3", 4: "H4"}.get(n)
    return None


def finite_type_components(
    system: CoxeterSystem, T: Sequence[str]
) -> Optional[list[tuple[str, tuple[str, ...]]]]:
    """[(catalog name, component)] if every component is finite type."""
    out = []
    for comp in _diagram_components(system, T):
        name = _classify_connected(system, comp)
        if name is None:
            return None
        out.append((name, comp))
    return out


def is_spherical(system: CoxeterSystem, T: Sequence[str]) -> bool:
    for t in T:
        if t not in system.generators:
            raise InputError(f"unknown generator {t!r}")
    if not T:
        return True
    return finite_type_components(system, T) is not None


def cosine_matrix(system: CoxeterSystem, T: Sequence[str]) -> np.ndarray:
    """Bilinear form entries -cos(pi/m_st); infinity contributes -1."""
    T = list(T)
    out = np.empty((len(T), len(T)))
    for i, s in enumerate(T):
        for j, t in enumerate(T):
            m = 1 if s == t else system.label(s, t)
            out[i, j] = -math.cos(math.pi / m) if m != INF else -1.0
    return out


def numeric_spherical(system: CoxeterSystem, T: Sequence[str], tol: float = 1e-9) -> bool:
    """Positive definiteness of the cosine matrix: the numeric oracle."""
    if not T:
        return True
    return bool(np.linalg.eigvalsh(cosine_matrix(system, T)).min() > tol)


@dataclass
class Nerve:
    system: CoxeterSystem
    complex: SimplicialComplex


def nerve(system: CoxeterSystem) -> Nerve:
    """Simplices are the spherical subsets of the generating set."""
    spherical = [T for T in system.subsets() if is_spherical(system, T)]
    facets = [
        T for T in spherical if not any(set(T) < set(U) for U in spherical)
    ]
    return Nerve(system, build_from_facets(system.generators, facets))


def irreducible_components(
    system: CoxeterSystem, T: Sequence[str]
) -> list[tuple[str, ...]]:
    if not is_spherical(system, T):
        raise InputError(f"{tuple(T)!r} is not spherical")
    return _diagram_components(system, T)


@dataclass
class SubdividedNerve:
    system: CoxeterSystem
    complex: SimplicialComplex  # vertex ids are tuples of generators
    payload: dict = field(default_factory=dict)


def l_odot(system: CoxeterSystem) -> SubdividedNerve:
    """Subdivided nerve: vertices are the irreducible spherical subsets; a
    family spans a simplex iff its union is spherical and its members are
    pairwise nested or orthogonal (disjoint with all labels 2 across).

    The simplex rule is provisional: it reproduces the stated edge
    degenerations (an edge subdivides exactly for finite labels >= 3) but
    the authoritative rule lives upstream.
    """
    vertices = [
        T
        for T in system.subsets()
        if is_spherical(system, T) and len(_diagram_components(system, T)) == 1
    ]
    vertex_set = set(vertices)

    def compatible(a: tuple, b: tuple) -> bool:
        sa, sb = set(a), set(b)
        if sa <= sb or sb <= sa:
            return True
        return sa.isdisjoint(sb) and all(
            system.label(s, t) == 2 for s in a for t in b
        )

    maximal: list[tuple] = []

    def grow(current: list[tuple], start: int):
        extended = False
        for j in range(start, len(vertices)):
            cand = vertices[j]
            if all(compatible(v, cand) for v in current) and is_spherical(
                system, sorted(set().union(*current, cand), key=system.generators.index)
                if current
                else cand
            ):
                grow(current + [cand], j + 1)
                extended = True
        if not extended and current:
            maximal.append(tuple(current))

    grow([], 0)
    cx = build_from_facets(vertices, maximal)
    return SubdividedNerve(system, cx, {v: set(v) for v in vertex_set})


# provenance labels for report lines
PROV_GDIM_NERVE = "gdim:nerve-dimension"
PROV_THICKENED_GLUING = "upper:thickened-gluing"
PROV_EDCE_THIN = "upper:edce-thin-gluing"
PROV_TOP_HOMOLOGY = "obstructor:top-homology"
PROV_SPHERICAL_FACTORS = "exact:spherical-irreducible-factors"
PROV_SIMPLEXWISE = "upper:simplexwise-thickening"
PROV_GDIM_PRODUCT = "gdim:top-simplex-product"


def _check_consistency(bounds: list[dict]) -> None:
    lowers = [b["value"] for b in bounds if not b["kind"].endswith("upper")]
    uppers = [b["value"] for b in bounds if b["kind"].endswith("upper")]
    for lo in lowers:
        for hi in uppers:
            assert lo <= hi, f"inconsistent report: lower bound {lo} exceeds {hi}"


def artin_actdim_report(
    system: CoxeterSystem, assume_kpi1: Optional[bool] = None
) -> dict:
    """Bound report for the Artin group of a Coxeter system.

    Bounds that require the classifying-space hypothesis are emitted only
    when it is assumed; the assumption defaults to on exactly when the
    nerve is a flag complex, where it is a theorem.
    """
    nv = nerve(system)
    d = nv.complex.dim
    is_flag, _ = flag_check_and_complete(nv.complex)
    kpi1 = is_flag if assume_kpi1 is None else assume_kpi1
    report: dict = {
        "nerve_dim": d,
        "nerve_is_flag": is_flag,
        "kpi1_assumed": kpi1,
        "bounds": [],
        "notes": [],
    }
    bounds = report["bounds"]
    whole = system.generators
    if is_spherical(system, whole):
        k = len(_diagram_components(system, whole))
        n = len(whole)
        bounds.append(
            {
                "kind": "actdim",
                "value": 2 * n - k,
                "provenance": PROV_SPHERICAL_FACTORS,
                "detail": f"{k} irreducible factor(s) of total rank {n}",
            }
        )
    if kpi1:
        bounds.append(
            {"kind": "gdim", "value": d + 1, "provenance": PROV_GDIM_NERVE}
        )
        bounds.append(
            {
                "kind": "actdim_upper",
                "value": 2 * d + 2,
                "provenance": PROV_THICKENED_GLUING,
            }
        )
        verdict = edce_verdict(nv.complex)
        report["nerve_edce"] = verdict.verdict
        if verdict.verdict == EDCE:
            bounds.append(
                {
                    "kind": "actdim_upper",
                    "value": 2 * d + 1,
                    "provenance": PROV_EDCE_THIN,
                }
            )
        if betti_z2(nv.complex)[d] > 0:
            bounds.append(
                {
                    "kind": "actdim_lower",
                    "value": 2 * d + 2,
                    "provenance": PROV_TOP_HOMOLOGY,
                }
            )
            bounds.append(
                {
                    "kind": "actdim",
                    "value": 2 * d + 2,
                    "provenance": PROV_TOP_HOMOLOGY,
                }
            )
    else:
        report["notes"].append(
            "classifying-space hypothesis not assumed: only the spherical "
            "case yields unconditional bounds"
        )
    _check_consistency(bounds)
    return report


def graph_product_actdim_report(
    L: SimplicialComplex, vertex_data: dict, edce_hint: str = "auto"
) -> dict:
    """Bound report for a graph product of aspherical-manifold groups over
    a flag complex; vertex_data maps each vertex to its manifold dimension
    and whether the manifold is closed."""
    is_flag, _ = flag_check_and_complete(L)
    if not is_flag:
        raise InputError("graph products are read off a flag complex")
    if edce_hint not in ("yes", "no", "auto"):
        raise InputError("edce hint must be yes, no, or auto")
    for v in L.vertices:
        if v not in vertex_data:
            raise InputError(f"missing vertex data for {v!r}")
        m_v = vertex_data[v]["dim"]
        closed = vertex_data[v]["closed"]
        if m_v < 1:
            raise InputError("vertex manifolds have dimension >= 1")
        if not closed and m_v < 2:
            raise InputError(
                "vertex manifolds with boundary need dimension >= 2"
            )
    d = L.dim
    report: dict = {"dim": d, "bounds": [], "notes": [], "edce": None}
    bounds = report["bounds"]
    # mixed bound: closed factors are thickened by one extra interval each
    per_simplex = []
    for k in range(d + 1):
        for s in L.faces(k):
            per_simplex.append(
                sum(
                    vertex_data[v]["dim"] + (1 if vertex_data[v]["closed"] else 0)
                    for v in s
                )
            )
    upper = max(per_simplex, default=0)
    bounds.append(
        {"kind": "actdim_upper", "value": upper, "provenance": PROV_SIMPLEXWISE}
    )
    dims = {vertex_data[v]["dim"] for v in L.vertices}
    uniform_closed = len(dims) == 1 and all(
        vertex_data[v]["closed"] for v in L.vertices
    )
    if uniform_closed:
        m = dims.pop()
        bounds.append(
            {
                "kind": "gdim",
                "value": m * (d + 1),
                "provenance": PROV_GDIM_PRODUCT,
            }
        )
        bounds.append(
            {
                "kind": "actdim_upper",
                "value": (m + 1) * (d + 1),
                "provenance": PROV_THICKENED_GLUING,
            }
        )
        if edce_hint == "yes":
            edce = True
        elif edce_hint == "no":
            edce = False
        else:
            edce = edce_verdict(L).verdict == EDCE
        report["edce"] = edce
        if edce:
            bounds.append(
                {
                    "kind": "actdim_upper",
                    "value": (m + 1) * (d + 1) - 1,
                    "provenance": PROV_EDCE_THIN,
                }
            )
        if betti_z2(L)[d] > 0:
            bounds.append(
                {
                    "kind": "actdim_lower",
                    "value": (m + 1) * (d + 1),
                    "provenance": PROV_TOP_HOMOLOGY,
                }
            )
            bounds.append(
                {
                    "kind": "actdim",
                    "value": (m + 1) * (d + 1),
                    "provenance": PROV_TOP_HOMOLOGY,
                }
            )
    _check_consistency(bounds)
    return report
