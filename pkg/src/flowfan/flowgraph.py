"""Framed directed multigraphs: routes, minimal cycles, DKK compatibility.

A framing of a full graph is a proper red/blue edge bi-colouring (red before
blue at every internal vertex); acyclic graphs may instead carry explicit
per-vertex in/out orders.  Everything downstream — cliques, integer flows,
g-vectors, fans — is phrased in terms of the canonical route list produced
here: lexicographic on edge-id sequences, cycles rotated to start at their
minimum edge id.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

RED = "red"
BLUE = "blue"

ROUTE_CAP = 10**6


class RouteExplosion(Exception):
    """Route enumeration exceeded the configured cap."""


class NotAmple(Exception):
    """The framing is not (cyclic-)ample, so the requested object is undefined."""


class NotMaximal(Exception):
    """A maximal clique (or maximal string) was required."""


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    colour: str | None = None


@dataclass(frozen=True)
class Route:
    """A source-to-sink edge walk, or a minimal cycle (rotation-canonical)."""

    edges: tuple[str, ...]
    is_cycle: bool = False

    def __len__(self):
        return len(self.edges)


@dataclass
class ValidationReport:
    idle_edges: list
    bad_sources: list
    bad_sinks: list
    isolated: list
    non_full_internal: list
    disconnected: bool

    @property
    def ok(self) -> bool:
        return not (
            self.idle_edges
            or self.bad_sources
            or self.bad_sinks
            or self.isolated
            or self.non_full_internal
            or self.disconnected
        )

    def problems(self) -> list[str]:
        out = []
        for e in self.idle_edges:
            out.append(f"idle edge {e}")
        for v in self.bad_sources:
            out.append(f"source {v} has degree != 1")
        for v in self.bad_sinks:
            out.append(f"sink {v} has degree != 1")
        for v in self.isolated:
            out.append(f"isolated vertex {v}")
        for v in self.non_full_internal:
            out.append(f"internal vertex {v} is not full (indegree/outdegree != 2)")
        if self.disconnected:
            out.append("graph is not weakly connected")
        return out


@dataclass(frozen=True, eq=False)
class FramedGraph:
    """Directed multigraph with a framing (colours, or explicit edge orders).

    ``orders`` maps internal vertices to {"in": [edge ids], "out": [edge ids]}
    and overrides colours when present.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    orders: dict | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate edge ids")
        vs = set(self.vertices)
        for e in self.edges:
            if e.tail not in vs or e.head not in vs:
                raise ValueError(f"edge {e.id} has an undeclared endpoint")

    # ------------------------------------------------------------------
    # structure

    @cached_property
    def edge_map(self) -> dict:
        return {e.id: e for e in self.edges}

    @cached_property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    @cached_property
    def _out(self) -> dict:
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.tail].append(e)
        return out

    @cached_property
    def _in(self) -> dict:
        inc = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.head].append(e)
        return inc

    def out_edges(self, v) -> list[Edge]:
        return self._out[v]

    def in_edges(self, v) -> list[Edge]:
        return self._in[v]

    def indeg(self, v) -> int:
        return len(self._in[v])

    def outdeg(self, v) -> int:
        return len(self._out[v])

    @cached_property
    def sources(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if not self._in[v] and self._out[v])

    @cached_property
    def sinks(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if self._in[v] and not self._out[v])

    @cached_property
    def internal(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if self._in[v] and self._out[v])

    def is_full(self) -> bool:
        return all(self.indeg(v) == 2 and self.outdeg(v) == 2 for v in self.internal)

    @cached_property
    def has_colours(self) -> bool:
        return all(e.colour in (RED, BLUE) for e in self.edges)

    # ------------------------------------------------------------------
    # validation (reports, never throws)

    def validate(self) -> ValidationReport:
        internal = set(self.internal)
        idle = [
            e.id
            for e in self.edges
            if (e.tail in internal and self.outdeg(e.tail) == 1)
            or (e.head in internal and self.indeg(e.head) == 1)
        ]
        bad_sources = [v for v in self.sources if self.outdeg(v) != 1]
        bad_sinks = [v for v in self.sinks if self.indeg(v) != 1]
        isolated = [v for v in self.vertices if not self._in[v] and not self._out[v]]
        non_full = [
            v for v in self.internal if self.indeg(v) != 2 or self.outdeg(v) != 2
        ]
        return ValidationReport(
            idle_edges=idle,
            bad_sources=bad_sources,
            bad_sinks=bad_sinks,
            isolated=isolated,
            non_full_internal=non_full,
            disconnected=not self._weakly_connected(),
        )

    def _weakly_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            adj[e.tail].add(e.head)
            adj[e.head].add(e.tail)
        seen = {self.vertices[0]}
        queue = [self.vertices[0]]
        while queue:
            v = queue.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(self.vertices)

    # ------------------------------------------------------------------
    # framing orders

    def in_order(self, v) -> list[str]:
        """Edge ids entering v, smallest framing position first (red < blue)."""
        if self.orders and v in self.orders:
            return list(self.orders[v]["in"])
        return sorted(
            (e.id for e in self._in[v]),
            key=lambda i: (0 if self.edge_map[i].colour == RED else 1, i),
        )

    def out_order(self, v) -> list[str]:
        if self.orders and v in self.orders:
            return list(self.orders[v]["out"])
        return sorted(
            (e.id for e in self._out[v]),
            key=lambda i: (0 if self.edge_map[i].colour == RED else 1, i),
        )

    def in_pos(self, edge_id, v=None) -> int:
        v = self.edge_map[edge_id].head if v is None else v
        return self.in_order(v).index(edge_id)

    def out_pos(self, edge_id, v=None) -> int:
        v = self.edge_map[edge_id].tail if v is None else v
        return self.out_order(v).index(edge_id)

    # ------------------------------------------------------------------
    # cycles and routes

    @cached_property
    def minimal_cycles(self) -> tuple[Route, ...]:
        """All minimal oriented cycles, rotated to start at their minimum edge id."""
        found = []

        def extend(anchor, v, path, visited):
            for e in self._out[v]:
                if e.id <= anchor.id:
                    continue
                if e.head == anchor.tail:
                    found.append(Route((anchor.id,) + path + (e.id,), True))
                elif e.head not in visited:
                    extend(anchor, e.head, path + (e.id,), visited | {e.head})

        for aid in sorted(self.edge_map):
            a = self.edge_map[aid]
            if a.tail == a.head:
                found.append(Route((aid,), True))
            else:
                extend(a, a.head, (), {a.head})
        found.sort(key=lambda r: r.edges)
        return tuple(found)

    @cached_property
    def is_acyclic(self) -> bool:
        return not self.minimal_cycles

    def is_cyclic_ample(self) -> bool:
        """One red and one blue in and out at each internal vertex, and every
        minimal cycle monochromatic."""
        if not self.has_colours:
            return False
        for v in self.internal:
            for side in (self._in[v], self._out[v]):
                cols = sorted(e.colour for e in side)
                if cols != [BLUE, RED]:
                    return False
        for c in self.minimal_cycles:
            if len({self.edge_map[i].colour for i in c.edges}) != 1:
                return False
        return True

    def enumerate_routes(self, cap: int = ROUTE_CAP) -> list[Route]:
        """All routes in canonical order: for a DAG, every source-to-sink walk;
        for a cyclic-ample graph, every good route plus every minimal cycle.
        """
        if not self.is_acyclic and not self.is_cyclic_ample():
            raise NotAmple("cyclic route enumeration needs a cyclic ample colouring")
        acc: list[Route] = []

        def dfs(v, visited, prefix):
            for e in self._out[v]:
                if not self._out[e.head]:
                    acc.append(Route(prefix + (e.id,)))
                    if len(acc) > cap:
                        raise RouteExplosion(f"more than {cap} routes")
                elif e.head not in visited:
                    dfs(e.head, visited | {e.head}, prefix + (e.id,))

        for s in self.sources:
            dfs(s, {s}, ())
        acc.extend(self.minimal_cycles)
        acc.sort(key=lambda r: r.edges)
        return acc

    def good_routes(self, cap: int = ROUTE_CAP) -> list[Route]:
        return [r for r in self.enumerate_routes(cap) if not r.is_cycle]

    def vertex_sequence(self, route: Route) -> tuple[str, ...]:
        seq = [self.edge_map[route.edges[0]].tail]
        for i in route.edges:
            seq.append(self.edge_map[i].head)
        return tuple(seq)

    # ------------------------------------------------------------------
    # compatibility

    def compatible(self, r1: Route, r2: Route) -> bool:
        """DKK compatibility.  Cycles are compatible with everything; two path
        routes are incompatible iff some maximal common subwalk is entered and
        left in opposite framing order by the two routes."""
        if r1.is_cycle or r2.is_cycle:
            return True
        return not self._crossing(r1.edges, r2.edges)

    def _crossing(self, p, q) -> bool:
        pv = self.vertex_sequence(Route(p))
        qv = self.vertex_sequence(Route(q))
        qpos = {v: j for j, v in enumerate(qv)}
        i = 0
        while i <= len(p):
            v = pv[i]
            j = qpos.get(v)
            if j is None or (i > 0 and j > 0 and p[i - 1] == q[j - 1]):
                i += 1
                continue
            run = 0
            while i + run < len(p) and j + run < len(q) and p[i + run] == q[j + run]:
                run += 1
            if i > 0 and j > 0 and i + run < len(p) and j + run < len(q):
                w_in, w_out = pv[i], pv[i + run]
                s_in = self.in_pos(p[i - 1], w_in) - self.in_pos(q[j - 1], w_in)
                s_out = self.out_pos(p[i + run], w_out) - self.out_pos(q[j + run], w_out)
                if s_in * s_out < 0:
                    return True
            i += run + 1
        return False

    def is_exceptional(self, route: Route, routes=None) -> bool:
        """Compatible with every route; for colourings, monochromatic."""
        if route.is_cycle:
            return True
        if self.has_colours:
            return len({self.edge_map[i].colour for i in route.edges}) == 1
        routes = self.enumerate_routes() if routes is None else routes
        return all(self.compatible(route, r) for r in routes)

    def exceptional_routes(self, routes=None) -> list[Route]:
        routes = self.enumerate_routes() if routes is None else routes
        return [r for r in routes if self.is_exceptional(r, routes)]

    def is_ample(self) -> bool:
        """Acyclic: every edge lies on an exceptional route.  Cyclic: cyclic-ample."""
        if not self.is_acyclic:
            return self.is_cyclic_ample()
        covered = set()
        for r in self.exceptional_routes():
            covered.update(r.edges)
        return covered == set(self.edge_map)

    # ------------------------------------------------------------------
    # serialization

    def to_json(self) -> str:
        payload = {
            "vertices": list(self.vertices),
            "edges": [
                {k: v for k, v in
                 (("id", e.id), ("tail", e.tail), ("head", e.head), ("colour", e.colour))
                 if v is not None}
                for e in self.edges
            ],
        }
        if self.orders is not None:
            payload["orders"] = self.orders
        return json.dumps(payload, indent=2, sort_keys=True)

    @staticmethod
    def from_json(text) -> "FramedGraph":
        data = json.loads(text) if isinstance(text, str) else text
        edges = tuple(
            Edge(e["id"], e["tail"], e["head"], e.get("colour")) for e in data["edges"]
        )
        return FramedGraph(tuple(data["vertices"]), edges, data.get("orders"))

    def to_dot(self) -> str:
        lines = ["digraph G {"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for e in self.edges:
            attrs = f' [label="{e.id}"'
            if e.colour:
                attrs += f', color={e.colour}'
            attrs += "]"
            lines.append(f'  "{e.tail}" -> "{e.head}"{attrs};')
        lines.append("}")
        return "\n".join(lines)


# ----------------------------------------------------------------------
# cyclic ample framings from prescribed exceptional sets


@dataclass(frozen=True)
class FramingFailure:
    condition: str  # "i" | "ii" | "iii"
    detail: str


def _contains_full_cycle(graph: FramedGraph, walk: Route) -> bool:
    for c in graph.minimal_cycles:
        n = len(c.edges)
        if n > len(walk.edges):
            continue
        doubled = c.edges + c.edges
        rotations = {doubled[k : k + n] for k in range(n)}
        for start in range(len(walk.edges) - n + 1):
            if tuple(walk.edges[start : start + n]) in rotations:
                return True
    return False


def framing_from_exceptional_set(graph: FramedGraph, members):
    """The cyclic ample colouring whose exceptional routes are exactly the
    given walks, when one exists.

    Conditions: (i) the set contains every minimal cycle and only good routes,
    (ii) every edge lies in exactly one member, (iii) the adjacency graph on
    members (sharing an internal vertex) is bipartite.  On failure, returns a
    FramingFailure naming the violated condition; the colouring is otherwise
    unique up to swapping colours per adjacency component, pinned down by
    colouring the lexicographically least member of each component red.
    """
    def canonical(r: Route) -> Route:
        if not r.is_cycle or not r.edges:
            return r
        k = r.edges.index(min(r.edges))
        return Route(r.edges[k:] + r.edges[:k], True)

    members = sorted({canonical(m) for m in members}, key=lambda r: r.edges)
    cycles = set(graph.minimal_cycles)
    internal = set(graph.internal)

    got_cycles = {m for m in members if m.is_cycle}
    if got_cycles != cycles:
        return FramingFailure("i", "the set must contain exactly the minimal cycles")
    for m in members:
        if m.is_cycle:
            continue
        seq = graph.vertex_sequence(m)
        if (seq[0] not in graph.sources) or (seq[-1] not in graph.sinks):
            return FramingFailure("i", f"{m.edges} is not a source-to-sink walk")
        for a, b in zip(seq, m.edges):
            if graph.edge_map[b].tail != a:
                return FramingFailure("i", f"{m.edges} is not a walk")
        if _contains_full_cycle(graph, m):
            return FramingFailure("i", f"{m.edges} traverses a full minimal cycle")

    owner = {}
    for idx, m in enumerate(members):
        for e in m.edges:
            if e in owner:
                return FramingFailure("ii", f"edge {e} lies in two members")
            owner[e] = idx
    missing = set(graph.edge_map) - set(owner)
    if missing:
        return FramingFailure("ii", f"edges {sorted(missing)} lie in no member")

    adj = {i: set() for i in range(len(members))}
    for v in internal:
        here = {owner[e.id] for e in graph.in_edges(v)} | {
            owner[e.id] for e in graph.out_edges(v)
        }
        for a in here:
            for b in here:
                if a != b:
                    adj[a].add(b)

    colour_of = {}
    for start in range(len(members)):
        if start in colour_of:
            continue
        colour_of[start] = RED  # lex-least member of the component
        queue = [start]
        while queue:
            a = queue.pop()
            for b in adj[a]:
                want = BLUE if colour_of[a] == RED else RED
                if b not in colour_of:
                    colour_of[b] = want
                    queue.append(b)
                elif colour_of[b] != want:
                    return FramingFailure("iii", "adjacency graph has an odd cycle")

    recoloured = FramedGraph(
        graph.vertices,
        tuple(
            Edge(e.id, e.tail, e.head, colour_of[owner[e.id]]) for e in graph.edges
        ),
    )
    assert recoloured.is_cyclic_ample()
    return recoloured
