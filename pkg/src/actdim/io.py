"""File formats: complexes, arrangements, Coxeter systems, specs.

Everything is JSON (whitespace-insensitive structured text). Vertex order
in a complex file fixes the canonical total order; rationals are integers
or "p/q" strings, never floats.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .arrangement import Arrangement
from .coxart import CoxeterSystem
from .errors import InputError
from .polyjoin import LabeledVertex
from .scomplex import SimplicialComplex, build_from_facets


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from None


def load_spec(spec: str):
    """Inline JSON (starts with '[' or '{') or a path to a JSON file."""
    s = spec.strip()
    if s.startswith("[") or s.startswith("{"):
        try:
            return json.loads(s)
        except json.JSONDecodeError as e:
            raise InputError(f"inline spec is not valid JSON: {e}") from None
    return _load_json(spec)


def load_complex(path: str) -> SimplicialComplex:
    data = _load_json(path)
    return complex_from_obj(data, where=path)


def complex_from_obj(data, where: str = "input") -> SimplicialComplex:
    if not isinstance(data, dict) or "vertices" not in data or "facets" not in data:
        raise InputError(f"{where}: a complex needs 'vertices' and 'facets'")
    vertices = data["vertices"]
    facets = data["facets"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise InputError(f"{where}: 'vertices' must be a list of strings")
    if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise InputError(f"{where}: 'facets' must be a list of lists")
    return build_from_facets(vertices, [tuple(f) for f in facets])


def _rational(x, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"{where}: rationals are integers or 'p/q' strings")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{where}: bad rational {x!r}") from None
    raise InputError(f"{where}: bad rational {x!r}")


def load_arrangement(path: str) -> Arrangement:
    data = _load_json(path)
    if not isinstance(data, dict) or "dim" not in data or "hyperplanes" not in data:
        raise InputError(f"{path}: an arrangement needs 'dim' and 'hyperplanes'")
    hs = []
    for i, h in enumerate(data["hyperplanes"]):
        if not isinstance(h, dict) or "normal" not in h:
            raise InputError(f"{path}: hyperplane {i} needs a 'normal'")
        normal = [_rational(a, f"{path}: hyperplane {i}") for a in h["normal"]]
        offset = _rational(h.get("offset", 0), f"{path}: hyperplane {i}")
        hs.append((normal, offset))
    return Arrangement(int(data["dim"]), hs)


def load_coxeter(path: str) -> CoxeterSystem:
    data = _load_json(path)
    if not isinstance(data, dict) or "generators" not in data or "matrix" not in data:
        raise InputError(f"{path}: a Coxeter system needs 'generators' and 'matrix'")
    gens = tuple(data["generators"])
    matrix = tuple(tuple(int(x) for x in row) for row in data["matrix"])
    return CoxeterSystem(gens, matrix)


def load_ordering(path: str) -> list:
    data = _load_json(path)
    if not isinstance(data, list):
        raise InputError(f"{path}: an ordering is a list of vertex ids")
    return data


def load_vertex_data(path: str) -> dict:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: vertex data is an object keyed by vertex")
    out = {}
    for v, entry in data.items():
        if not isinstance(entry, dict) or "dim" not in entry or "closed" not in entry:
            raise InputError(f"{path}: vertex {v!r} needs 'dim' and 'closed'")
        out[v] = {"dim": int(entry["dim"]), "closed": bool(entry["closed"])}
    return out


def vertex_str(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, LabeledVertex):
        return f"{vertex_str(v.base)}^{v.label}"
    if isinstance(v, tuple):
        return "|".join(vertex_str(x) for x in v)
    return str(v)


def complex_payload(K: SimplicialComplex) -> dict:
    return {
        "vertices": [vertex_str(v) for v in K.vertices],
        "facets": [[vertex_str(v) for v in f] for f in K.facets],
        "f_vector": list(K.f_vector),
        "dim": K.dim,
        "euler_characteristic": K.euler_characteristic,
    }
