"""Command-line frontend emitting deterministic JSON reports.

One report per invocation on stdout: command echo, sha256 digest of each
input, the result payload, the provenance labels of every bound, and any
witnesses or certificates. Exit codes: 0 ok, 2 invalid input, 1 internal
assertion failure, 64 unknown command.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import arrangement as arr
from . import chains, coxart, io, polyjoin, vk
from .errors import InputError

USAGE = """usage: actdim <command> <subcommand> [options]

commands:
  complex homology|edce|flag|subdivide FILE
  octa    build|doubled FILE --m M [--cycle SPEC --simplex SPEC]
  vk      compute|nontrivial|omega|star --complex FILE [options]
  arr     poset|props|irr|nested|poincare|chain|h1|actdim FILE [options]
  cox     nerve|lodot|actdim FILE [--assume-kpi1]
  gp      actdim FILE VERTEX_DATA [--edce yes|no|auto]

SPEC arguments accept inline JSON or a path to a JSON file.
"""

COMMANDS = {
    "complex": ("homology", "edce", "flag", "subdivide"),
    "octa": ("build", "doubled"),
    "vk": ("compute", "nontrivial", "omega", "star"),
    "arr": ("poset", "props", "irr", "nested", "poincare", "chain", "h1", "actdim"),
    "cox": ("nerve", "lodot", "actdim"),
    "gp": ("actdim",),
}


def _digest(label: str, source: str, inputs: dict) -> None:
    s = source.strip()
    if s.startswith("[") or s.startswith("{"):
        inputs[label] = hashlib.sha256(s.encode()).hexdigest()
    else:
        inputs[label] = hashlib.sha256(Path(source).read_bytes()).hexdigest()


def _chain_support(chain) -> list:
    cells = sorted(
        ([sorted(map(io.vertex_str, c[0])), sorted(map(io.vertex_str, c[1]))]
         for c in chain.support),
    )
    return cells


def _cmd_complex(args, inputs):
    K = io.load_complex(args.file)
    _digest("complex", args.file, inputs)
    if args.subcommand == "homology":
        summary = chains.integral_homology(K)
        payload = {
            "betti_z2": list(summary.betti_z2),
            "integral": [
                {
                    "degree": k,
                    "free_rank": summary.free_ranks[k],
                    "torsion": list(summary.torsion[k]),
                    "group": summary.describe(k),
                }
                for k in range(K.dim + 1)
            ],
        }
        return payload, [], {}
    if args.subcommand == "edce":
        v = chains.edce_verdict(K)
        return {"verdict": v.verdict, "witness": v.witness}, [], (
            {"failed_condition": v.witness} if v.witness else {}
        )
    if args.subcommand == "flag":
        is_flag, completion = scomplex_flag(K)
        payload = {"is_flag": is_flag, "completion": io.complex_payload(completion)}
        return payload, [], {}
    # subdivide
    from .scomplex import barycentric_subdivision

    return io.complex_payload(barycentric_subdivision(K)), [], {}


def scomplex_flag(K):
    from .scomplex import flag_check_and_complete

    return flag_check_and_complete(K)


def _octa_payload(oc: polyjoin.OctaComplex) -> dict:
    payload = io.complex_payload(oc.complex)
    payload["m"] = oc.m
    payload["delta"] = oc.delta
    payload["projection"] = {
        io.vertex_str(w): io.vertex_str(b) for w, b in sorted(
            oc.projection.items(), key=lambda kv: io.vertex_str(kv[0])
        )
    }
    return payload


def _cmd_octa(args, inputs):
    L = io.load_complex(args.file)
    _digest("complex", args.file, inputs)
    if args.subcommand == "build":
        oc = polyjoin.octahedralization(L, args.m)
        return _octa_payload(oc), [], {}
    cycle, delta = _cycle_and_simplex(args, inputs)
    oc = polyjoin.doubled_complex(L, args.m, cycle, delta)
    payload = _octa_payload(oc)
    payload["cycle"] = [sorted(s) for s in map(list, cycle)]
    payload["doubled_over"] = sorted(delta)
    return payload, [], {}


def _cycle_and_simplex(args, inputs):
    if args.cycle is None or args.simplex is None:
        raise InputError("this subcommand needs --cycle and --simplex")
    _digest("cycle", args.cycle, inputs)
    _digest("simplex", args.simplex, inputs)
    cycle = [tuple(s) for s in io.load_spec(args.cycle)]
    delta = tuple(io.load_spec(args.simplex))
    return cycle, delta


def _cmd_vk(args, inputs):
    K = io.load_complex(args.complex)
    _digest("complex", args.complex, inputs)
    ordering = None
    if getattr(args, "ordering", None):
        _digest("ordering", args.ordering, inputs)
        ordering = vk.VertexOrdering(io.load_ordering(args.ordering))
    if args.subcommand == "compute":
        cc = vk.ConfigComplex(K)
        nu = vk.vk_cocycle(cc, args.degree, ordering)
        payload = {
            "degree": args.degree,
            "support": _chain_support(nu),
            "support_size": len(nu.support),
            "is_cocycle": vk.is_cocycle(cc, nu),
        }
        return payload, [], {}
    if args.subcommand == "nontrivial":
        chain = None
        if args.chain:
            _digest("chain", args.chain, inputs)
            cc = vk.ConfigComplex(K)
            cells = frozenset(
                cc.canonical(a, b) for a, b in io.load_spec(args.chain)
            )
            chain = vk.Gf2Chain(args.degree, cells)
        verdict = vk.vk_nontrivial(K, args.degree, ordering, chain)
        payload = {
            "degree": args.degree,
            "status": verdict.status,
            "nontrivial": verdict.nontrivial,
        }
        witnesses = {}
        if verdict.witness_chain is not None:
            witnesses["witness_cycle"] = _chain_support(verdict.witness_chain)
        if verdict.certificate is not None:
            witnesses["coboundary_certificate"] = _chain_support(verdict.certificate)
        return payload, [], witnesses
    if args.subcommand == "omega":
        cycle, delta = _cycle_and_simplex(args, inputs)
        D = polyjoin.doubled_complex(K, args.m, cycle, delta)
        omega = vk.omega_chain(D, cycle, delta)
        payload = {
            "degree": omega.degree,
            "cell_count": len(omega.support),
            "cells": _chain_support(omega),
            "boundary_is_zero": True,
        }
        return payload, [], {"omega_cycle": payload["cells"]}
    # star
    cycle, delta = _cycle_and_simplex(args, inputs)
    ok = vk.star_condition(K, cycle, delta)
    return {"star_condition": ok}, [], {}


def _flat_entry(A, poset, f, index):
    return {
        "index": index,
        "codim": f.codim,
        "hyperplanes": sorted(f.hyperplanes),
        "basepoint": [str(x) for x in f.basepoint],
    }


def _cmd_arr(args, inputs):
    A = io.load_arrangement(args.file)
    _digest("arrangement", args.file, inputs)
    if args.subcommand == "props":
        return arr.properties(A), [], {}
    poset = arr.intersection_poset(A)
    flats = poset.flats
    flat_index = {f.key: i for i, f in enumerate(flats)}
    if args.subcommand == "poset":
        payload = {
            "flat_count": len(flats),
            "flats": [_flat_entry(A, poset, f, i) for i, f in enumerate(flats)],
            "order": sorted(
                [i, j]
                for i, f in enumerate(flats)
                for j, g in enumerate(flats)
                if i != j and f.contains(g)
            ),
        }
        return payload, [], {}
    if args.subcommand == "irr":
        blocks = arr.irreducible_decomposition(A) if arr.properties(A)[
            "is_central"
        ] else None
        viq = arr.set_of_irreducibles(poset)
        payload = {
            "central_blocks": blocks,
            "irreducible": blocks is not None and len(blocks) == 1,
            "set_of_irreducibles": [flat_index[f.key] for f in viq],
        }
        return payload, [], {}
    if args.subcommand == "nested":
        nc = arr.nested_complex(poset, args.building)
        completed = arr.flag_completion(nc)
        name = {g.key: str(flat_index[g.key]) for g in nc.building}
        relabeled = {
            "vertices": [name[k] for k in nc.complex.vertices],
            "facets": [[name[k] for k in f] for f in nc.complex.facets],
            "f_vector": list(nc.complex.f_vector),
            "flag_completion_f_vector": list(completed.complex.f_vector),
            "building": sorted(flat_index[g.key] for g in nc.building),
        }
        return relabeled, [], {}
    if args.subcommand == "poincare":
        data = arr.mobius_poincare_beta(A, poset)
        payload = {
            "mobius": {str(flat_index[k]): v for k, v in data["mu"].items()},
            "poincare_coefficients": data["poincare"],
            "beta": data["beta"],
        }
        return payload, [], {}
    if args.subcommand == "chain":
        chain = arr.complete_chain(A, poset)
        payload = {
            "found": chain is not None,
            "chain": [flat_index[f.key] for f in chain] if chain else None,
            "is_essential": arr.properties(A)["is_essential"],
        }
        return payload, [], {}
    if args.subcommand == "h1":
        if not args.simplex:
            raise InputError("arr h1 needs --simplex with flat indices")
        idxs = io.load_spec(args.simplex)
        try:
            chosen = [flats[i] for i in idxs]
        except (TypeError, IndexError):
            raise InputError("--simplex must list valid flat indices") from None
        vectors, independent = arr.h1_images(A, chosen, poset)
        payload = {
            "vectors": [list(v) for v in vectors],
            "independent": independent,
        }
        return payload, [], {}
    # actdim
    report = arr.arrangement_actdim_report(A, args.aspherical)
    prov = sorted({b["provenance"] for b in report["bounds"]})
    witnesses = {}
    for b in report["bounds"]:
        if "witness_chain" in b:
            witnesses["complete_chain"] = b["witness_chain"]
    if "aspherical_contradiction" in report:
        witnesses["aspherical_contradiction"] = report["aspherical_contradiction"]
    return report, prov, witnesses


def _cmd_cox(args, inputs):
    system = io.load_coxeter(args.file)
    _digest("coxeter", args.file, inputs)
    if args.subcommand == "nerve":
        nv = coxart.nerve(system)
        return io.complex_payload(nv.complex), [], {}
    if args.subcommand == "lodot":
        lo = coxart.l_odot(system)
        payload = io.complex_payload(lo.complex)
        payload["vertices"] = ["+".join(v) for v in lo.complex.vertices]
        payload["facets"] = [["+".join(v) for v in f] for f in lo.complex.facets]
        payload["provenance_note"] = "provisional-subdivision-rule"
        return payload, ["provisional-subdivision-rule"], {}
    report = coxart.artin_actdim_report(system, args.assume_kpi1)
    prov = sorted({b["provenance"] for b in report["bounds"]})
    return report, prov, {}


def _cmd_gp(args, inputs):
    L = io.load_complex(args.file)
    _digest("complex", args.file, inputs)
    vdata = io.load_vertex_data(args.vertex_data)
    _digest("vertex_data", args.vertex_data, inputs)
    report = coxart.graph_product_actdim_report(L, vdata, args.edce)
    prov = sorted({b["provenance"] for b in report["bounds"]})
    return report, prov, {}


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="actdim", add_help=True)
    sub = p.add_subparsers(dest="command")

    pc = sub.add_parser("complex")
    pc.add_argument("subcommand", choices=COMMANDS["complex"])
    pc.add_argument("file")

    po = sub.add_parser("octa")
    po.add_argument("subcommand", choices=COMMANDS["octa"])
    po.add_argument("file")
    po.add_argument("--m", type=int, required=True)
    po.add_argument("--cycle")
    po.add_argument("--simplex")

    pv = sub.add_parser("vk")
    pv.add_argument("subcommand", choices=COMMANDS["vk"])
    pv.add_argument("--complex", required=True)
    pv.add_argument("--degree", type=int)
    pv.add_argument("--m", type=int)
    pv.add_argument("--ordering")
    pv.add_argument("--chain")
    pv.add_argument("--cycle")
    pv.add_argument("--simplex")

    pa = sub.add_parser("arr")
    pa.add_argument("subcommand", choices=COMMANDS["arr"])
    pa.add_argument("file")
    pa.add_argument("--aspherical", action="store_true")
    pa.add_argument("--building", choices=("irreducibles", "all"),
                    default="irreducibles")
    pa.add_argument("--simplex")

    px = sub.add_parser("cox")
    px.add_argument("subcommand", choices=COMMANDS["cox"])
    px.add_argument("file")
    px.add_argument("--assume-kpi1", dest="assume_kpi1", action="store_true",
                    default=None)

    pg = sub.add_parser("gp")
    pg.add_argument("subcommand", choices=COMMANDS["gp"])
    pg.add_argument("file")
    pg.add_argument("vertex_data")
    pg.add_argument("--edce", choices=("yes", "no", "auto"), default="auto")

    for sp in (pc, po, pv, pa, px, pg):
        sp.add_argument("--quiet", action="store_true")
    return p


_HANDLERS = {
    "complex": _cmd_complex,
    "octa": _cmd_octa,
    "vk": _cmd_vk,
    "arr": _cmd_arr,
    "cox": _cmd_cox,
    "gp": _cmd_gp,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        print(USAGE, end="")
        return 0 if argv else 64
    if argv[0] not in COMMANDS:
        sys.stderr.write(USAGE)
        return 64
    if len(argv) > 1 and not argv[1].startswith("-") and argv[1] not in COMMANDS[argv[0]]:
        sys.stderr.write(USAGE)
        return 64
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.subcommand in ("compute", "nontrivial") and args.degree is None:
        sys.stderr.write("error: --degree is required\n")
        return 2
    if args.command == "vk" and args.subcommand == "omega" and args.m is None:
        sys.stderr.write("error: --m is required\n")
        return 2
    inputs: dict = {}
    try:
        payload, provenance, witnesses = _HANDLERS[args.command](args, inputs)
    except InputError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except AssertionError as e:
        sys.stderr.write(f"internal assertion failed: {e}\n")
        return 1
    report = {
        "command": f"{args.command} {args.subcommand}",
        "inputs": inputs,
        "payload": payload,
        "provenance": provenance,
        "witnesses": witnesses,
    }
    out = payload if args.quiet else report
    print(json.dumps(out, sort_keys=True, indent=2))
    return 0


def entry() -> None:
    sys.exit(main())
