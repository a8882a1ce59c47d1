"""Affine hyperplane arrangements with exact rational coefficients.

Flats are identified by the reduced row echelon form of their defining
equations, which is canonical for the solution set. Localizations are
handled through hyperplane index sets; all ranks are ranks of normal
vectors over the rationals. Coefficients are rational throughout
(complexified-real arrangements); the combinatorics is insensitive to the
ground field beyond that.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

from . import qlinalg
from .errors import InputError
from .qlinalg import Vec, frac
from .scomplex import SimplicialComplex, build_from_facets, flag_check_and_complete


@dataclass(frozen=True)
class Hyperplane:
    normal: Vec
    offset: Fraction

    def __str__(self):
        terms = [
            f"{a}*x{i}" for i, a in enumerate(self.normal) if a != 0
        ]
        return " + ".join(terms) + f" = {self.offset}"


class Arrangement:
    """Finite list of affine hyperplanes a.x = b in C^n, no repeats."""

    def __init__(self, dim: int, hyperplanes: Sequence[tuple[Sequence, object]]):
        if dim < 1:
            raise InputError("ambient dimension must be positive")
        self.dim = dim
        hs: list[Hyperplane] = []
        seen: set = set()
        for normal, offset in hyperplanes:
            nv = tuple(frac(a) for a in normal)
            if len(nv) != dim:
                raise InputError("normal vector length does not match dimension")
            if all(a == 0 for a in nv):
                raise InputError("hyperplane normal must be nonzero")
            key = _projective_key(nv, frac(offset))
            if key in seen:
                raise InputError("two hyperplanes have the same solution set")
            seen.add(key)
            hs.append(Hyperplane(nv, frac(offset)))
        self.hyperplanes = tuple(hs)

    def __len__(self):
        return len(self.hyperplanes)


def _projective_key(normal: Vec, offset: Fraction):
    lead = next(a for a in normal if a != 0)
    return tuple(a / lead for a in normal) + (offset / lead,)


@dataclass(frozen=True)
class Flat:
    """A nonempty intersection of hyperplanes (or the ambient space)."""

    key: tuple  # RREF of the defining equations [normal | offset]
    codim: int
    basepoint: Vec
    hyperplanes: frozenset  # indices of every hyperplane containing the flat

    def contains(self, other: "Flat") -> bool:
        # X >= Y as sets iff every hyperplane through X passes through Y
        return self.hyperplanes <= other.hyperplanes

    def describe(self, A: Arrangement) -> str:
        names = ",".join(f"H{i}" for i in sorted(self.hyperplanes))
        return f"codim {self.codim} flat [{names}]"


class FlatPoset:
    """Intersection poset ordered by reverse inclusion; minimum = ambient."""

    def __init__(self, A: Arrangement, flats: list[Flat]):
        self.arrangement = A
        self.flats = flats  # ambient first, then by (codim, key)
        self.by_key = {f.key: f for f in flats}

    @property
    def ambient(self) -> Flat:
        return self.flats[0]

    @property
    def proper(self) -> list[Flat]:
        return self.flats[1:]

    @staticmethod
    def leq(a: Flat, b: Flat) -> bool:
        return a.hyperplanes <= b.hyperplanes

    def flat_of(self, hyperplane_indices: Iterable[int]) -> Optional[Flat]:
        """The flat cut out by a set of hyperplanes, or None if empty."""
        A = self.arrangement
        rows = [A.hyperplanes[i].normal for i in hyperplane_indices]
        rhs = [A.hyperplanes[i].offset for i in hyperplane_indices]
        if qlinalg.solve(rows, rhs) is None:
            return None
        red, _ = qlinalg.rref([r + (b,) for r, b in zip(rows, rhs)])
        return self.by_key[red]


def _flat_from_equations(A: Arrangement, eq_rows: list[tuple]) -> Optional[Flat]:
    red, pivots = qlinalg.rref(eq_rows)
    if A.dim in pivots:
        return None  # inconsistent: empty intersection
    normals = [r[:-1] for r in red]
    rhs = [r[-1] for r in red]
    base = qlinalg.solve(normals, rhs) if red else tuple([Fraction(0)] * A.dim)
    contains = frozenset(
        i
        for i, h in enumerate(A.hyperplanes)
        if qlinalg.rank(list(red) + [h.normal + (h.offset,)]) == len(red)
    )
    return Flat(red, len(red), base, contains)


def intersection_poset(A: Arrangement) -> FlatPoset:
    """All nonempty intersections of hyperplane subsets, by incremental
    closure; flats deduplicated by the canonical form of their equations."""
    flats: dict[tuple, Flat] = {}
    ambient = _flat_from_equations(A, [])
    flats[ambient.key] = ambient
    for i, h in enumerate(A.hyperplanes):
        new: dict[tuple, Flat] = {}
        for fl in flats.values():
            cand = _flat_from_equations(A, list(fl.key) + [h.normal + (h.offset,)])
            if cand is not None and cand.key not in flats:
                new[cand.key] = cand
        flats.update(new)
    ordered = sorted(flats.values(), key=lambda f: (f.codim, _key_str(f.key)))
    return FlatPoset(A, ordered)


def _key_str(key: tuple) -> tuple:
    return tuple(tuple(str(x) for x in row) for row in key)


def properties(A: Arrangement) -> dict:
    poset = intersection_poset(A)
    rk = max(f.codim for f in poset.flats)
    central = (
        qlinalg.solve(
            [h.normal for h in A.hyperplanes], [h.offset for h in A.hyperplanes]
        )
        is not None
    )
    return {"rank": rk, "is_essential": rk == A.dim, "is_central": central}


def matroid_components(vectors: Sequence[Vec]) -> list[list[int]]:
    """Connected components of the linear matroid on the given vectors.

    Fundamental circuits with respect to one echelon basis generate the
    connectivity relation; components are their union-find classes.
    """
    n = len(vectors)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    basis: list[int] = []
    for i in range(n):
        if qlinalg.rank([vectors[j] for j in basis] + [vectors[i]]) > len(basis):
            basis.append(i)
    bmat = [vectors[j] for j in basis]
    for i in range(n):
        if i in basis:
            continue
        coeffs = qlinalg.solve(list(zip(*bmat)), vectors[i])
        assert coeffs is not None
        for j, c in zip(basis, coeffs):
            if c != 0:
                union(i, j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def irreducible_decomposition(
    A: Arrangement, hyperplane_indices: Optional[Iterable[int]] = None
) -> list[list[int]]:
    """Finest rank-additive partition of a central (sub)arrangement."""
    idx = sorted(hyperplane_indices) if hyperplane_indices is not None else list(
        range(len(A.hyperplanes))
    )
    rows = [A.hyperplanes[i].normal for i in idx]
    rhs = [A.hyperplanes[i].offset for i in idx]
    if qlinalg.solve(rows, rhs) is None:
        raise InputError("irreducible decomposition needs a central arrangement")
    return [[idx[i] for i in block] for block in matroid_components(rows)]


def is_irreducible_localization(A: Arrangement, flat: Flat) -> bool:
    return len(irreducible_decomposition(A, flat.hyperplanes)) == 1


def set_of_irreducibles(poset: FlatPoset) -> list[Flat]:
    """Proper flats whose localization is irreducible."""
    return [
        f
        for f in poset.proper
        if is_irreducible_localization(poset.arrangement, f)
    ]


@dataclass
class NestedComplex:
    building: list[Flat]
    complex: SimplicialComplex  # vertex ids are flat keys
    flag_completed: bool = False
    by_key: dict = field(default_factory=dict)


def _validate_building_set(poset: FlatPoset, building: list[Flat]) -> None:
    for X in poset.proper:
        below = [g for g in building if g.contains(X)]
        maxes = [
            g
            for g in below
            if not any(g.hyperplanes < h.hyperplanes for h in below)
        ]
        covered: set[int] = set()
        total = 0
        ok = True
        for g in maxes:
            if covered & g.hyperplanes:
                ok = False
                break
            covered |= g.hyperplanes
            total += qlinalg.rank(
                [poset.arrangement.hyperplanes[i].normal for i in g.hyperplanes]
            )
        if ok:
            ok = covered == set(X.hyperplanes) and total == qlinalg.rank(
                [poset.arrangement.hyperplanes[i].normal for i in X.hyperplanes]
            )
        if not ok:
            raise InputError(
                "not a building set: localization at "
                f"{X.describe(poset.arrangement)} does not factor over its "
                "maximal members"
            )


def _is_nested(poset: FlatPoset, flats: Sequence[Flat], building_keys: set) -> bool:
    for size in range(2, len(flats) + 1):
        for sub in combinations(flats, size):
            if any(
                a.contains(b) or b.contains(a) for a, b in combinations(sub, 2)
            ):
                continue  # not an antichain
            meet = poset.flat_of(
                set().union(*(f.hyperplanes for f in sub))
            )
            if meet is None or meet.key in building_keys:
                return False
    return True


def nested_complex(
    poset: FlatPoset, building: Union[str, list[Flat]] = "irreducibles"
) -> NestedComplex:
    """Complex of nested subsets of a building set: every antichain of size
    >= 2 must intersect in a nonempty flat outside the building set."""
    if building == "irreducibles":
        bset = set_of_irreducibles(poset)
    elif building == "all":
        bset = list(poset.proper)
    else:
        bset = list(building)
        _validate_building_set(poset, bset)
    bkeys = {g.key for g in bset}
    # grow nested sets vertex by vertex; nestedness is downward closed
    order = {g.key: i for i, g in enumerate(bset)}
    maximal: list[tuple] = []
    all_nested: set[frozenset] = set()

    def grow(current: list[Flat], start: int):
        extended = False
        for j in range(start, len(bset)):
            cand = current + [bset[j]]
            fs = frozenset(f.key for f in cand)
            if fs in all_nested or _is_nested(poset, cand, bkeys):
                all_nested.add(fs)
                grow(cand, j + 1)
                extended = True
        if not extended and current:
            maximal.append(tuple(f.key for f in current))
    grow([], 0)
    cx = build_from_facets([g.key for g in bset], maximal)
    return NestedComplex(bset, cx, False, {g.key: g for g in bset})


def irreducible_complex(poset: FlatPoset) -> NestedComplex:
    return nested_complex(poset, "irreducibles")


def flag_completion(nc: NestedComplex) -> NestedComplex:
    _, completed = flag_check_and_complete(nc.complex)
    return NestedComplex(nc.building, completed, True, dict(nc.by_key))


def mobius_poincare_beta(A: Arrangement, poset: Optional[FlatPoset] = None) -> dict:
    """Mobius function on the flat poset, Poincare polynomial coefficients
    sum_X |mu(X)| t^codim(X), and beta = |p(-1)|."""
    poset = poset or intersection_poset(A)
    mu: dict[tuple, int] = {}
    for f in poset.flats:  # sorted by codim: all Y < X precede X
        below = sum(
            mu[g.key]
            for g in poset.flats
            if g.key != f.key and g.contains(f)
        )
        mu[f.key] = 1 if f.codim == 0 else -below
    coeffs = [0] * (max(f.codim for f in poset.flats) + 1)
    for f in poset.flats:
        coeffs[f.codim] += abs(mu[f.key])
    beta = abs(sum(c * (-1) ** k for k, c in enumerate(coeffs)))
    return {"mu": mu, "poincare": coeffs, "beta": beta}


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def decone(A: Arrangement, chosen: int) -> Arrangement:
    """Affine arrangement in one dimension less: move the chosen hyperplane
    of a central arrangement to x_n = 0 and slice at x_n = 1. The Poincare
    identity p_A = (1+t) * p_decone is asserted."""
    if not 0 <= chosen < len(A.hyperplanes):
        raise InputError("chosen hyperplane index out of range")
    rows = [h.normal for h in A.hyperplanes]
    center = qlinalg.solve(rows, [h.offset for h in A.hyperplanes])
    if center is None:
        raise InputError("deconing needs a central arrangement")
    n = A.dim
    a0 = A.hyperplanes[chosen].normal
    basis: list[Vec] = []
    for i in range(n):
        e = tuple(Fraction(int(j == i)) for j in range(n))
        if qlinalg.rank(basis + [e, a0]) == len(basis) + 2:
            basis.append(e)
    T = basis + [a0]  # rows; last coordinate of T x is a0 . x
    Tinv = qlinalg.invert(T)
    assert Tinv is not None
    new_hyperplanes = []
    for i, h in enumerate(A.hyperplanes):
        if i == chosen:
            continue
        centered = h.normal  # offsets vanish after translating by the center
        atil = qlinalg.matvec(list(zip(*Tinv)), centered)  # row vector a . T^-1
        new_hyperplanes.append((atil[: n - 1], -atil[n - 1]))
    d = Arrangement(n - 1, new_hyperplanes)
    pa = mobius_poincare_beta(A)["poincare"]
    pd = mobius_poincare_beta(d)["poincare"]
    assert pa == poly_mul([1, 1], pd), "deconing must split off a (1+t) factor"
    return d


def complete_chain(
    A: Arrangement, poset: Optional[FlatPoset] = None
) -> Optional[list[Flat]]:
    """A strictly decreasing chain of proper flats with codimensions 1..n
    and every localization irreducible, or None. Requires an essential
    arrangement (otherwise no codimension-n flat exists)."""
    poset = poset or intersection_poset(A)
    n = A.dim
    by_codim: dict[int, list[Flat]] = {}
    for f in poset.proper:
        if is_irreducible_localization(A, f):
            by_codim.setdefault(f.codim, []).append(f)

    def extend(chain: list[Flat]) -> Optional[list[Flat]]:
        c = len(chain)
        if c == n:
            return chain
        for f in by_codim.get(c + 1, []):
            if not chain or chain[-1].contains(f):
                got = extend(chain + [f])
                if got is not None:
                    return got
        return None

    return extend([])


def h1_images(
    A: Arrangement, flats: Sequence[Flat], poset: Optional[FlatPoset] = None
) -> tuple[list[tuple[int, ...]], bool]:
    """Indicator vectors of the hyperplanes through each flat (the first
    homology images of the central loops) plus a Q-independence verdict."""
    poset = poset or intersection_poset(A)
    irr_keys = {f.key for f in set_of_irreducibles(poset)}
    vectors = []
    for f in flats:
        if f.key not in irr_keys:
            raise InputError(
                f"{f.describe(A)} is not in the set of irreducibles"
            )
        vectors.append(
            tuple(int(i in f.hyperplanes) for i in range(len(A.hyperplanes)))
        )
    rows = [tuple(map(Fraction, v)) for v in vectors]
    return vectors, qlinalg.rank(rows) == len(vectors)


# provenance labels for report lines
PROV_NO_CENTRAL_FACTOR = "exact:essential-no-central-factor"
PROV_CENTRAL_IRREDUCIBLE = "exact:central-irreducible"
PROV_CENTRAL_FACTOR_COUNT = "exact:central-factor-count"
PROV_COMPLETE_CHAIN = "lower:complete-chain-of-irreducibles"
PROV_COMPLEMENT_MANIFOLD = "upper:complement-manifold"
PROV_SPHERE_RETRACT = "upper:sphere-retract"


def arrangement_actdim_report(A: Arrangement, aspherical: bool) -> dict:
    """Bound report for the fundamental group of the complement.

    Asphericity is a user-supplied hypothesis, exactly as in the source
    results; without it only the complete-chain lower bound can fire.
    """
    poset = intersection_poset(A)
    props = properties(A)
    n, rk = A.dim, props["rank"]
    blocks = [
        {
            "hyperplanes": block,
            "rank": qlinalg.rank([A.hyperplanes[i].normal for i in block]),
            "central": qlinalg.solve(
                [A.hyperplanes[i].normal for i in block],
                [A.hyperplanes[i].offset for i in block],
            )
            is not None,
        }
        for block in matroid_components([h.normal for h in A.hyperplanes])
    ]
    k = sum(1 for b in blocks if b["central"])
    report: dict = {
        "dim": n,
        "rank": rk,
        "is_essential": props["is_essential"],
        "is_central": props["is_central"],
        "blocks": blocks,
        "central_factor_count": k,
        "aspherical": aspherical,
        "bounds": [],
        "notes": [],
    }
    bounds = report["bounds"]
    if aspherical:
        fiq = flag_completion(irreducible_complex(poset))
        if fiq.complex.dim > n - 1:
            witness = max(fiq.complex.facets, key=len)
            report["aspherical_contradiction"] = {
                "reason": "flag-completed irreducible complex exceeds the "
                "abelian-rank ceiling for an aspherical complement",
                "witness_simplex": [list(map(str, v)) for v in witness],
            }
        bounds.append(
            {"kind": "actdim_upper", "value": 2 * n, "provenance": PROV_COMPLEMENT_MANIFOLD}
        )
        if props["is_central"] or not props["is_essential"]:
            bounds.append(
                {"kind": "actdim_upper", "value": 2 * n - 1, "provenance": PROV_SPHERE_RETRACT}
            )
        if props["is_essential"]:
            if k == 0:
                bounds.append(
                    {"kind": "actdim", "value": 2 * n, "provenance": PROV_NO_CENTRAL_FACTOR}
                )
                bounds.append(
                    {"kind": "obdim", "value": 2 * n, "provenance": PROV_NO_CENTRAL_FACTOR}
                )
            else:
                if props["is_central"] and len(blocks) == 1:
                    bounds.append(
                        {
                            "kind": "actdim",
                            "value": 2 * n - 1,
                            "provenance": PROV_CENTRAL_IRREDUCIBLE,
                        }
                    )
                bounds.append(
                    {
                        "kind": "actdim",
                        "value": 2 * n - k,
                        "provenance": PROV_CENTRAL_FACTOR_COUNT,
                    }
                )
        else:
            report["notes"].append(
                "not essential: bounds apply to the essentialization "
                f"(rank {rk}); actdim = {2 * rk - k} with the same factor count"
            )
    else:
        if props["is_essential"] and not props["is_central"]:
            chain = complete_chain(A, poset)
            if chain is not None:
                bounds.append(
                    {
                        "kind": "obdim_lower",
                        "value": 2 * n,
                        "provenance": PROV_COMPLETE_CHAIN,
                        "witness_chain": [f.describe(A) for f in chain],
                    }
                )
            else:
                report["notes"].append(
                    "no complete chain of irreducibles: no conclusion"
                )
        else:
            report["notes"].append(
                "not essential or central without asphericity: no conclusion"
            )
    lowers = [b["value"] for b in bounds if not b["kind"].endswith("upper")]
    uppers = [b["value"] for b in bounds if b["kind"].endswith("upper")]
    for lo in lowers:
        for hi in uppers:
            assert lo <= hi, f"inconsistent report: lower bound {lo} exceeds {hi}"
    return report
