"""Command-line front end: ``fewham generate | count | verify``.

Every invocation prints one JSON run report on stdout.  Exit codes: 0 pass,
2 check failure, 3 input or format error, 4 budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import List, Optional

from . import __version__
from .connectivity import edge_connectivity, vertex_connectivity
from .formats import FormatError, load_graph, write_graph6, write_multigraph_json
from .graphcore import EdgeRef, GraphError, MultiGraph, complete_graph
from .hamilton import Budget, count_hamiltonian_cycles, cycle_vertex_sequence

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_BUDGET = 0, 2, 3, 4
FAMILIES = ("petersen", "gadget", "hg", "finalized", "triangle", "fig1", "meredith")
SCHEMA_VERSION = 1


class InputError(Exception):
    pass


def _graph_block(G: Optional[MultiGraph]) -> dict:
    if G is None:
        return {"n": None, "edges": None, "regular": None}
    degs = G.degrees()
    return {"n": G.n, "edges": G.edge_units(), "regular": degs[0] if degs and G.is_regular() else None}


def _report(command: str, digest: str, G, results: dict, nodes: int, t0: float, timing: bool) -> dict:
    full = {"ham_count": None, "vertex_connectivity": None, "edge_connectivity": None, "checks": {}}
    full.update(results)
    return {
        "version": {"schema": SCHEMA_VERSION, "package": __version__},
        "command": command,
        "input_sha": digest,
        "graph": _graph_block(G),
        "results": full,
        "stats": {"nodes_expanded": nodes, "elapsed_ms": round((time.monotonic() - t0) * 1000, 3) if timing else None},
    }


def _sha(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _parse_ints(text: str, what: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"bad {what} {text!r}: {exc}") from exc


def _family_graph(name: str, args) -> MultiGraph:
    from . import constructions as C

    if name == "petersen":
        return C.petersen()
    if name == "k4":
        return complete_graph(4)
    if name == "gadget":
        return C.load_gadget().graph
    if name == "hg":
        return C.assemble_HG(C.load_gadget(), C.FamilyParams(args.ell, C.load_pattern()))
    if name == "finalized":
        return C.finalize_family_member(C.load_gadget(), C.FamilyParams(args.ell, C.load_pattern()), count=False).graph
    if name == "triangle":
        return C.triangle_family(args.k)
    if name == "meredith":
        return C.meredith_graph(args.matching)
    if name == "fig1":
        template = None
        if getattr(args, "template", None):
            template = C.BlockTemplate.from_dict(json.loads(Path(args.template).read_text()))
        return C.fig1_family(args.m, template)
    raise InputError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")


def _encode(G: MultiGraph) -> tuple:
    if G.is_simple():
        return "graph6", write_graph6(G).decode()
    return "multigraph-json", write_multigraph_json(G)


def cmd_generate(args) -> tuple:
    from .constructions import FigureTranscriptionRequired, finalize_family_member, FamilyParams, load_gadget, load_pattern

    t0 = time.monotonic()
    results: dict = {}
    try:
        if args.family == "finalized":
            member = finalize_family_member(load_gadget(), FamilyParams(args.ell, load_pattern()), count=not args.no_count)
            G = member.graph
            rep = member.report
            results = {
                "ham_count": rep.constants.get("c_final"),
                "vertex_connectivity": rep.checks["vertex_connectivity"].witness.get("value"),
                "checks": rep.to_dict(timing=args.timing)["checks"],
            }
            status = EXIT_OK if rep.overall else EXIT_CHECK
        else:
            G = _family_graph(args.family, args)
            status = EXIT_OK
    except FigureTranscriptionRequired as exc:
        return {"error": str(exc), "command": "generate " + args.family}, EXIT_INPUT
    fmt, data = _encode(G)
    if args.out:
        Path(args.out).write_text(data + ("\n" if fmt == "graph6" else ""))
    results["output"] = {"format": fmt, "path": args.out, "data": None if args.out else data}
    digest = _sha(json.dumps({"family": args.family, "ell": args.ell, "k": args.k, "m": args.m}, sort_keys=True).encode())
    return _report("generate " + args.family, digest, G, results, 0, t0, args.timing), status


def _load_input(args) -> tuple:
    if args.family:
        G = _family_graph(args.family, args)
        return G, _sha(write_multigraph_json(G).encode())
    if not args.input:
        raise InputError("give an input file (graph6 or multigraph JSON) or --family")
    raw = sys.stdin.buffer.read() if args.input == "-" else Path(args.input).read_bytes()
    return load_graph(raw), _sha(raw)


def cmd_count(args) -> tuple:
    t0 = time.monotonic()
    G, digest = _load_input(args)
    forced = []
    if args.through_edge:
        parts = _parse_ints(args.through_edge, "edge")
        if len(parts) not in (2, 3):
            raise InputError("--through-edge takes u,v or u,v,copy")
        ref = EdgeRef(*parts).normalized()
        if not G.has_edge(ref):
            raise InputError(f"edge {tuple(ref)} not in graph")
        forced = [ref]
    budget = Budget(max_nodes=args.budget, max_seconds=args.time_budget)
    if args.method == "frontier" and args.enumerate:
        raise InputError("--enumerate needs the backtracking method")
    hr = count_hamiltonian_cycles(
        G, budget=budget, retain=args.enumerate, workers=args.workers, forced=forced, method=args.method
    )
    results = {"ham_count": hr.count, "checks": {"exact": {"pass": hr.exact}}}
    if args.enumerate:
        results["cycles"] = [cycle_vertex_sequence(c) for c in hr.cycles]
    if args.connectivity:
        results["edge_connectivity"] = edge_connectivity(G)[0]
        results["vertex_connectivity"] = vertex_connectivity(G)[0] if G.is_simple() else None
    status = EXIT_BUDGET if hr.budget_exhausted else EXIT_OK
    return _report("count", digest, G, results, hr.nodes_expanded, t0, args.timing), status


def cmd_verify(args) -> tuple:
    from . import constructions as C
    from .verify import certify_family, property_suite, verify_conditions

    t0 = time.monotonic()
    if args.suite:
        suites = ("smith", "thomason") if args.suite == "all" else (args.suite,)
        from .verify import default_corpus

        corpus = default_corpus(args.seed, cubic=args.corpus, cubic_max_n=min(args.n, 16), quintic=args.corpus // 2 if args.corpus else 0, quintic_max_n=min(args.n, 14))
        rep = property_suite(corpus, suites=suites)
        digest = _sha(json.dumps({"suite": args.suite, "seed": args.seed, "n": args.n}, sort_keys=True).encode())
        out = _report("verify --suite " + args.suite, digest, None, {"checks": rep.to_dict(args.timing)["checks"]}, 0, t0, args.timing)
        return out, EXIT_OK if rep.overall else EXIT_CHECK

    target = args.target or "gadget"
    if target == "gadget":
        if args.search:
            res = C.search_gadgets(args.search)
            results = {"checks": {"search": {"pass": res.spec is not None, "witness": {"space": args.search, "rejections": res.stats, "graphs": res.graphs_examined, "paths": res.paths_examined}}}}
            if res.spec is None:
                digest = _sha(args.search.encode())
                return _report("verify gadget", digest, None, results, 0, t0, args.timing), EXIT_CHECK
            spec = res.spec
        else:
            spec = C.load_gadget()
            results = {"checks": {}}
        rep = verify_conditions(spec)
        results["checks"].update(rep.to_dict(args.timing)["checks"])
        results["edge_connectivity"] = rep.checks["edge_connectivity"].witness["value"]
        results["ham_count"] = 0 if rep.checks["i"].passed else None
        results["gadget_path"] = list(spec.path)
        digest = _sha(json.dumps(spec.to_dict(), sort_keys=True).encode())
        return _report("verify gadget", digest, spec.graph, results, 0, t0, args.timing), EXIT_OK if rep.overall else EXIT_CHECK

    if target == "family":
        ells = _parse_ints(args.ell_set, "--ell-set")
        if len(set(ells)) < 2:
            raise InputError("--ell-set needs at least two values")
        spec = C.load_gadget()
        pattern = C.load_pattern()
        if args.pattern:
            pattern = C.LadderPattern.from_dict(json.loads(Path(args.pattern).read_text()))
        rep = certify_family(spec, pattern, ells, workers=args.workers)
        results = {"checks": rep.to_dict(args.timing)["checks"], "constants": rep.constants}
        digest = _sha(json.dumps({"gadget": spec.to_dict(), "pattern": pattern.to_dict(), "ells": ells}, sort_keys=True).encode())
        return _report("verify family", digest, None, results, 0, t0, args.timing), EXIT_OK if rep.overall else EXIT_CHECK

    # otherwise a gadget spec JSON file
    path = Path(target)
    if not path.exists():
        raise InputError(f"unknown verify target {target!r} (gadget, family, or a gadget JSON file)")
    raw = path.read_bytes()
    try:
        spec = C.GadgetSpec.from_dict(json.loads(raw))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed gadget file: {exc}") from exc
    rep = verify_conditions(spec)
    results = {"checks": rep.to_dict(args.timing)["checks"]}
    return _report("verify " + target, _sha(raw), spec.graph, results, 0, t0, args.timing), EXIT_OK if rep.overall else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fewham", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--report", help="also write the JSON report to this path")
        sp.add_argument("--no-timing", dest="timing", action="store_false", help="omit elapsed times (byte-stable reports)")

    g = sub.add_parser("generate", help="build a named graph family member")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("--ell", type=int, default=2)
    g.add_argument("--k", type=int, default=0, help="triangle replacements")
    g.add_argument("--m", type=int, default=2, help="block repetitions (fig1)")
    g.add_argument("--matching", type=int, default=0, help="which Petersen perfect matching to double (meredith)")
    g.add_argument("--template", help="fig1 block template JSON")
    g.add_argument("--out", help="write the graph here (graph6 if simple, else multigraph JSON)")
    g.add_argument("--no-count", action="store_true", help="finalized: skip the cycle count")
    common(g)

    c = sub.add_parser("count", help="count Hamiltonian cycles")
    c.add_argument("input", nargs="?", help="graph6 or multigraph JSON file, '-' for stdin")
    c.add_argument("--family", choices=FAMILIES + ("k4",))
    c.add_argument("--ell", type=int, default=2)
    c.add_argument("--k", type=int, default=0)
    c.add_argument("--m", type=int, default=2)
    c.add_argument("--matching", type=int, default=0)
    c.add_argument("--through-edge", help="u,v[,copy]: count cycles through this edge unit")
    c.add_argument("--enumerate", action="store_true", help="list cycles as vertex sequences")
    c.add_argument("--budget", type=int, help="node budget")
    c.add_argument("--time-budget", type=float, help="seconds")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--method", choices=("backtrack", "frontier"), default="backtrack")
    c.add_argument("--connectivity", action="store_true", help="also report connectivity")
    common(c)

    v = sub.add_parser("verify", help="check gadget conditions, certify the family, or run a property suite")
    v.add_argument("target", nargs="?", help="gadget (default), family, or a gadget JSON file")
    v.add_argument("--search", help="gadget: search this candidate space instead of loading the shipped gadget")
    v.add_argument("--ell-set", default="2,3,4")
    v.add_argument("--pattern", help="family: ladder pattern JSON (default: shipped pattern)")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--suite", choices=("smith", "thomason", "all"))
    v.add_argument("--n", type=int, default=16, help="suite: largest vertex count")
    v.add_argument("--corpus", type=int, default=50, help="suite: number of cubic graphs")
    v.add_argument("--seed", type=int, default=2024)
    common(v)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"generate": cmd_generate, "count": cmd_count, "verify": cmd_verify}
    try:
        report, status = handlers[args.command](args)
    except (InputError, FormatError, GraphError, OSError, ValueError) as exc:
        report, status = {"error": str(exc), "command": args.command}, EXIT_INPUT
    text = json.dumps(report, sort_keys=True)
    print(text)
    if getattr(args, "report", None):
        Path(args.report).write_text(text + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
