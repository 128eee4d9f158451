"""Command-line front end.

Every subcommand is a thin adapter over the library: parse arguments, build
the framed graph (builtin name or JSON file), call one library entry point,
serialise the result.  Exit codes: 0 success, 1 validation failure, 2 usage
error.  JSON goes to stdout by default and is deterministic byte for byte;
rational values are rendered as "p/q" strings.
"""

import argparse
import itertools
import json
import random
import sys
from fractions import Fraction

from . import arcfaces, dkk, families, intflow, polytopekit, quiverlink
from .flowgraph import FramedGraph, NotAmple, RouteExplosion
from .intflow import CyclicVolumeFlow, FlowExplosion, NotCyclicFlow
from .quiverlink import Projective, ShiftedProjective


class UsageError(Exception):
    pass


_DOMAIN_ERRORS = (
    NotAmple,
    NotCyclicFlow,
    RouteExplosion,
    FlowExplosion,
    families.MalformedWord,
    dkk.NotMaximal,
    ValueError,
)


def build_graph(name: str) -> FramedGraph:
    """Resolve a builtin graph name (x, xx, cycle:n, hcp:c:p) or a JSON path."""
    if name == "x":
        return families.x_graph()
    if name == "xx":
        return families.xx_graph()
    if name.startswith("cycle:"):
        return families.blossomed_cycle(_positive_int(name.split(":", 1)[1]))
    if name.startswith("hcp:"):
        parts = name.split(":")
        if len(parts) != 3:
            raise UsageError(f"expected hcp:c:p, got {name!r}")
        return families.h_cp(_positive_int(parts[1]), _positive_int(parts[2]))
    try:
        with open(name) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read graph {name!r}: {exc}")
    return FramedGraph.from_json(text)


def _positive_int(text) -> int:
    try:
        value = int(text)
    except (TypeError, ValueError):
        raise UsageError(f"expected an integer, got {text!r}")
    if value < 1:
        raise UsageError(f"expected a positive integer, got {value}")
    return value


def _frac(x):
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return _frac(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, frozenset):
        return sorted(obj)
    return obj


def _emit(args, payload) -> None:
    if isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_validate(args) -> int:
    fg = build_graph(args.graph)
    if args.format == "dot":
        _emit(args, fg.to_dot())
        return 0
    report = fg.validate()
    cyclic = bool(fg.minimal_cycles)
    ample = fg.is_cyclic_ample() if cyclic and report.ok else None
    payload = {
        "graph": args.graph,
        "ok": report.ok and (ample is not False),
        "problems": report.problems(),
        "cyclic": cyclic,
    }
    if cyclic:
        payload["cyclic_ample"] = ample
        if not ample:
            payload["problems"] = payload["problems"] + ["framing is not cyclic ample"]
    _emit(args, payload)
    return 0 if payload["ok"] else 1


def _routes(fg, args):
    cap = args.cap if args.cap else None
    return fg.enumerate_routes(cap=cap) if cap else fg.enumerate_routes()


def _cmd_routes(args) -> int:
    fg = build_graph(args.graph)
    routes = _routes(fg, args)
    rows = [
        {
            "index": i,
            "edges": list(r.edges),
            "cycle": r.is_cycle,
            "exceptional": fg.is_exceptional(r, routes),
        }
        for i, r in enumerate(routes)
    ]
    if args.format == "csv":
        lines = ["index,cycle,exceptional,edges"]
        for row in rows:
            lines.append(
                "%d,%d,%d,%s"
                % (row["index"], row["cycle"], row["exceptional"], " ".join(row["edges"]))
            )
        _emit(args, "\n".join(lines) + "\n")
        return 0
    _emit(args, {"graph": args.graph, "count": len(rows), "routes": rows})
    return 0


def _cmd_cliques(args) -> int:
    fg = build_graph(args.graph)
    routes = _routes(fg, args)
    cliques = dkk.maximal_cliques(fg, routes)
    payload = {
        "graph": args.graph,
        "count": len(cliques),
        "cliques": [list(c) for c in cliques],
    }
    if args.format == "csv":
        lines = [" ".join(map(str, c)) for c in cliques]
        _emit(args, "\n".join(lines) + "\n")
        return 0
    _emit(args, payload)
    return 0


def _parse_flow(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        try:
            with open(text) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise UsageError(f"--flow is neither inline JSON nor a readable file: {exc}")
    if not isinstance(data, dict):
        raise UsageError("--flow must be a JSON object mapping edge ids to values")
    return {str(k): Fraction(str(v)) for k, v in data.items()}


def _random_flow(fg, routes, seed):
    rng = random.Random(seed)
    flow = {e.id: Fraction(0) for e in fg.edges}
    for route in routes:
        if rng.random() < 0.45:
            continue
        c = Fraction(rng.randint(0, 8), rng.randint(1, 5))
        for e in route.edges:
            flow[e] += c
    return flow


def _cmd_decompose(args) -> int:
    fg = build_graph(args.graph)
    routes = _routes(fg, args)
    metadata = {"command": "decompose", "graph": args.graph}
    if args.flow:
        flow = _parse_flow(args.flow)
    else:
        metadata["seed"] = args.seed
        flow = _random_flow(fg, routes, args.seed)
    coeffs = dkk.decompose_flow(fg, flow, routes)
    payload = {
        "decomposition": {str(i): _frac(c) for i, c in sorted(coeffs.items())},
        "flow": {e: _frac(v) for e, v in sorted(flow.items())},
        "metadata": metadata,
    }
    _emit(args, payload)
    return 0


def _cmd_flows(args) -> int:
    fg = build_graph(args.graph)
    flows = intflow.volume_flows(fg, cap=args.cap) if args.cap else intflow.volume_flows(fg)
    edge_ids = [e.id for e in fg.edges]
    rows = []
    for f in flows:
        if isinstance(f, CyclicVolumeFlow):
            rows.append({"values": dict(f.values), "zero_edges": sorted(f.zero_edges)})
        else:
            rows.append({"values": dict(f)})
    if args.format == "csv":
        header = ",".join(edge_ids)
        lines = [header + (",zero_edges" if fg.minimal_cycles else "")]
        for row in rows:
            cells = [str(row["values"][e]) for e in edge_ids]
            if "zero_edges" in row:
                cells.append(";".join(row["zero_edges"]))
            lines.append(",".join(cells))
        _emit(args, "\n".join(lines) + "\n")
        return 0
    _emit(args, {"graph": args.graph, "count": len(rows), "flows": rows})
    return 0


def _cmd_volume(args) -> int:
    fg = build_graph(args.graph)
    _emit(args, {"graph": args.graph, "volume": intflow.flow_complex_volume(fg)})
    return 0


def _module_label(obj):
    if isinstance(obj, Projective):
        return {"module": "projective", "vertex": obj.vertex}
    if isinstance(obj, ShiftedProjective):
        return {"module": "shifted-projective", "vertex": obj.vertex}
    return {"module": "string", "word": [list(step) for step in obj.word]}


def _cmd_gvectors(args) -> int:
    fg = build_graph(args.graph)
    routes = _routes(fg, args)
    entries = []
    cyclic = bool(fg.minimal_cycles)
    q = None if cyclic else quiverlink.quiver_from_graph(fg)[0]
    for i, route in enumerate(routes):
        if route.is_cycle or fg.is_exceptional(route, routes):
            continue
        flow = {e: 1 for e in route.edges}
        entry = {"route": i, "phi": quiverlink.phi_map(fg, flow)}
        if q is not None:
            entry["gamma"] = _module_label(quiverlink.gamma(fg, route))
            word = quiverlink.route_to_string(fg, route)
            entry["g"] = quiverlink.g_vector(q, word)
        entries.append(entry)
    _emit(args, {"graph": args.graph, "entries": entries})
    return 0


def _cmd_fan(args) -> int:
    fg = build_graph(args.graph)
    fan = dkk.reduced_fan(fg)
    if args.format == "svg":
        _emit(args, polytopekit.fan_to_svg(fan))
        return 0
    _emit(args, {"graph": args.graph, "fan": fan.to_jsonable()})
    return 0


def _cmd_polytope(args) -> int:
    fg = build_graph(args.graph)
    if not fg.minimal_cycles:
        summands = polytopekit.dkk_red_summands(fg)
        candidate = polytopekit.phi_image_fan(fg)
    elif args.graph.startswith("cycle:"):
        n = int(args.graph.split(":")[1])
        summands = polytopekit.cyclohedron_summands(n)
        candidate = polytopekit.phi_image_fan(fg)
    else:
        raise UsageError("polytope supports acyclic graphs and builtin cycle:n only")
    fan, vertices = polytopekit.minkowski_normal_fan(summands, candidate)
    payload = {
        "graph": args.graph,
        "dim": fan.dim,
        "n_vertices": len(vertices),
        "points": [[_frac(x) for x in v] for v in vertices],
    }
    _emit(args, payload)
    return 0


def _parse_arc(text):
    parts = text.split(":")
    if len(parts) != 4:
        raise UsageError("expected --arc a:b:A:B with A, B digit strings (may be empty)")
    a, b = _positive_int(parts[0]) if parts[0] != "0" else 0, _positive_int(parts[1])
    A = frozenset(int(ch) for ch in parts[2])
    B = frozenset(int(ch) for ch in parts[3])
    return polytopekit.Arc(a, b, A, B)


def _cmd_shard(args) -> int:
    arc = _parse_arc(args.arc)
    poly = polytopekit.shard_polytope(arc, ambient=args.ambient)
    payload = poly.to_jsonable()
    payload["arc"] = {"a": arc.a, "b": arc.b, "A": sorted(arc.A), "B": sorted(arc.B)}
    payload["n_vertices"] = len(poly.vertex_set)
    _emit(args, payload)
    return 0


def _cmd_family(args) -> int:
    a = tuple(int(x) for x in args.a.split(","))
    p = args.p
    if args.word:
        word = families.parse_word(args.word)
        if word.p != p or word.a != a:
            raise UsageError("--word does not match --p/--a")
        flow = families.barred_word_to_flow(p, a, word)
        back = families.flow_to_barred_word(p, flow)
        payload = {
            "word": str(word),
            "flow": dict(flow.values),
            "zero_edges": sorted(flow.zero_edges),
            "roundtrip": str(back) == str(word),
        }
        _emit(args, payload)
        return 0
    count = families.count_barred_words(p, a)
    payload = {"p": p, "a": list(a), "count": count}
    length = sum(a) + p
    if count <= args.cap:
        words = [
            str(families.BarredWord(p, a, bars))
            for bars in itertools.combinations_with_replacement(range(length), p - 1)
        ]
        payload["words"] = sorted(words)
    _emit(args, payload)
    return 0


def _cmd_mutoperhedron(args) -> int:
    c = args.c
    payload = {"c": c}
    if args.pentagon:
        cert = arcfaces.pentagon_certificate()
        payload = {
            "facet": arcfaces.format_bipartition(cert.facet),
            "neighbours": [arcfaces.format_bipartition(p) for p in cert.neighbours],
            "neighbours_form_cycle": cert.neighbours_form_cycle,
            "permutohedron_face_sizes": list(cert.permutohedron_face_sizes),
            "isomorphic": cert.isomorphic,
        }
    elif args.vertices:
        if c != 3:
            raise UsageError("--vertices is only realised for c=3")
        total, ineqs = polytopekit.MUTOPERHEDRON_3
        verts = polytopekit.h_description_vertices(total, ineqs)
        payload["n_vertices"] = len(verts)
        payload["vertices"] = [[_frac(x) for x in v] for v in verts]
    elif args.hvector:
        payload["hvector"] = arcfaces.h_vector(c, "noninterfering")
    else:
        payload["fvector"] = arcfaces.f_vector(c, "noninterfering")
    _emit(args, payload)
    return 0


def _cmd_svg(args) -> int:
    fg = build_graph(args.graph)
    _emit(args, polytopekit.fan_to_svg(dkk.reduced_fan(fg)))
    return 0


# ---------------------------------------------------------------------------
# parser plumbing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flowfan", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, graph=True, **extra):
        p = sub.add_parser(name)
        if graph:
            p.add_argument("--graph", required=True, help="builtin name or JSON path")
        p.add_argument("--format", choices=["json", "csv", "dot", "svg"], default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cap", type=int, default=0)
        p.add_argument("--out", default=None)
        p.set_defaults(handler=handler)
        return p

    add("validate", _cmd_validate)
    add("routes", _cmd_routes)
    add("cliques", _cmd_cliques)
    p = add("decompose", _cmd_decompose)
    p.add_argument("--flow", default=None, help="inline JSON or path; random when omitted")
    add("flows", _cmd_flows)
    add("volume", _cmd_volume)
    add("gvectors", _cmd_gvectors)
    add("fan", _cmd_fan)
    add("polytope", _cmd_polytope)
    p = add("shard", _cmd_shard, graph=False)
    p.add_argument("--arc", required=True, help="a:b:A:B, e.g. 1:4:3:2")
    p.add_argument("--ambient", type=int, default=None)
    p = add("family", _cmd_family, graph=False)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--a", required=True, help="comma separated multiplicities")
    p.add_argument("--word", default=None)
    p.set_defaults(cap=200)
    p = add("mutoperhedron", _cmd_mutoperhedron, graph=False)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--fvector", action="store_true")
    p.add_argument("--hvector", action="store_true")
    p.add_argument("--pentagon", action="store_true")
    p.add_argument("--vertices", action="store_true")
    add("svg", _cmd_svg)
    return parser


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # argparse -h
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
