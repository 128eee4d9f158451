"""Integer flows with prescribed netflows, volume flows (acyclic and cyclic),
generating-function counting, and the clique-to-flow map Phi.

Netflow convention: netflow(v) = outflow - inflow.  Specs constrain sources
and internal vertices; sinks are always free.
"""

from __future__ import annotations

import graphlib
import itertools
from dataclasses import dataclass

from . import dkk
from .flowgraph import FramedGraph, NotAmple, NotMaximal

FLOW_CAP = 10**6


class FlowExplosion(Exception):
    """Flow enumeration exceeded the configured cap."""


class NotCyclicFlow(Exception):
    """The flow is not a cyclic volume integer flow."""


@dataclass
class NetflowSpec:
    """Prescribed netflows: ``a`` on internal vertices, ``c`` on sources."""

    a: dict
    c: dict

    def as_dict(self) -> dict:
        return {**self.c, **self.a}


@dataclass(frozen=True)
class CyclicVolumeFlow:
    """An integer flow together with its designated zero edge per minimal
    cycle (aligned with the graph's minimal_cycles order)."""

    values: tuple  # sorted (edge id, value) pairs
    zero_edges: tuple

    def as_dict(self) -> dict:
        return dict(self.values)


def _spec_dict(fg: FramedGraph, spec) -> dict:
    if isinstance(spec, NetflowSpec):
        spec = spec.as_dict()
    allowed = set(fg.sources) | set(fg.internal)
    for v in spec:
        if v not in allowed:
            raise ValueError(f"netflow prescribed at non-source/internal vertex {v}")
    return {v: int(spec.get(v, 0)) for v in allowed}


def volume_spec(fg: FramedGraph) -> NetflowSpec:
    """Netflow indeg(v)-1 at internal vertices, 0 at sources."""
    return NetflowSpec(
        a={v: fg.indeg(v) - 1 for v in fg.internal},
        c={s: 0 for s in fg.sources},
    )


def netflow(fg: FramedGraph, values, v):
    return sum(values.get(e.id, 0) for e in fg.out_edges(v)) - sum(
        values.get(e.id, 0) for e in fg.in_edges(v)
    )


def enumerate_integer_flows(fg: FramedGraph, spec, cap: int = FLOW_CAP) -> list:
    """All nonnegative integer flows with the prescribed netflows, canonical
    order (lexicographic in edge declaration order)."""
    if not fg.is_acyclic:
        raise ValueError("integer flow enumeration requires a DAG")
    spec = _spec_dict(fg, spec)
    order = _topological(fg)
    producers = [v for v in order if fg.out_edges(v)]
    flows = []

    def rec(k, assignment):
        if k == len(producers):
            flows.append(dict(assignment))
            if len(flows) > cap:
                raise FlowExplosion(f"more than {cap} flows")
            return
        v = producers[k]
        inflow = sum(assignment[e.id] for e in fg.in_edges(v))
        total = inflow + spec.get(v, 0)
        if total < 0:
            return
        outs = [e.id for e in fg.out_edges(v)]
        for comp in _compositions(total, len(outs)):
            for eid, val in zip(outs, comp):
                assignment[eid] = val
            rec(k + 1, assignment)
        for eid in outs:
            assignment.pop(eid, None)

    rec(0, {})
    flows.sort(key=lambda f: tuple(f[e] for e in fg.edge_ids))
    return flows


def _topological(fg: FramedGraph) -> list:
    ts = graphlib.TopologicalSorter({v: set() for v in fg.vertices})
    for e in fg.edges:
        ts.add(e.head, e.tail)
    return list(ts.static_order())


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def count_flows_gf(fg: FramedGraph, spec) -> int:
    """Coefficient of z^spec in prod over edges (u,v) of 1/(1 - z_u) for sink
    heads and 1/(1 - z_u z_v^{-1}) otherwise, extracted by truncated series
    multiplication over exact integers (variables: non-sink vertices)."""
    if not fg.is_acyclic:
        raise ValueError("generating-function counting requires a DAG")
    spec = _spec_dict(fg, spec)
    variables = [v for v in fg.vertices if fg.out_edges(v)]
    vidx = {v: i for i, v in enumerate(variables)}
    target = tuple(spec.get(v, 0) for v in variables)
    if any(t < 0 for t in target):
        return 0
    bound = sum(max(t, 0) for t in target)

    topo_pos = {v: i for i, v in enumerate(_topological(fg))}
    edges = sorted(fg.edges, key=lambda e: (topo_pos[e.tail], e.id))
    out_left = {v: 0 for v in variables}
    in_left = {v: 0 for v in variables}
    for e in edges:
        out_left[e.tail] += 1
        if e.head in vidx:
            in_left[e.head] += 1

    states = {tuple([0] * len(variables)): 1}
    for e in edges:
        u = vidx[e.tail]
        w = vidx.get(e.head)
        out_left[e.tail] -= 1
        if e.head in vidx:
            in_left[e.head] -= 1
        nxt = {}
        for state, count in states.items():
            for k in range(bound + 1):
                vec = list(state)
                vec[u] += k
                if w is not None:
                    vec[w] -= k
                ok = True
                for v, i in vidx.items():
                    lo = vec[i] - bound * in_left[v]
                    hi = vec[i] + bound * out_left[v]
                    if not (lo <= target[i] <= hi):
                        ok = False
                        break
                if ok:
                    key = tuple(vec)
                    nxt[key] = nxt.get(key, 0) + count
                elif vec[u] > target[u] + bound * in_left[e.tail]:
                    break
        states = nxt
    return states.get(target, 0)


# ----------------------------------------------------------------------
# volume flows


def volume_flows(fg: FramedGraph, cap: int = FLOW_CAP):
    """All volume integer flows.  Acyclic: netflow indeg-1 inside, 0 at
    sources.  Cyclic-ample: per zero-edge selection S, the acyclic volume
    flows of H minus S lifted by +1 on the remaining cycle edges."""
    if fg.is_acyclic:
        return enumerate_integer_flows(fg, volume_spec(fg), cap)
    if not fg.is_cyclic_ample():
        raise NotAmple("cyclic volume flows need a cyclic ample colouring")
    cycles = fg.minimal_cycles
    lifted = []
    for selection in itertools.product(*(c.edges for c in cycles)):
        removed = set(selection)
        sub = FramedGraph(
            fg.vertices, tuple(e for e in fg.edges if e.id not in removed)
        )
        survivors = [e for c in cycles for e in c.edges if e not in removed]
        for g in enumerate_integer_flows(sub, volume_spec(sub), cap):
            values = {e: 0 for e in fg.edge_ids}
            values.update(g)
            for e in survivors:
                values[e] += 1
            lifted.append(
                CyclicVolumeFlow(
                    values=tuple(sorted(values.items())),
                    zero_edges=tuple(selection),
                )
            )
    lifted.sort(key=lambda f: f.values)
    return lifted


def is_cyclic_volume_flow(fg: FramedGraph, values, zero_edges, source_netflows=None) -> bool:
    """Check the defining conditions: one zero edge per cycle (others strictly
    positive), netflow 1 at internal vertices except 0 at zero-edge tails,
    netflow 0 at sources (or as prescribed by source_netflows)."""
    if len(zero_edges) != len(fg.minimal_cycles):
        return False
    source_netflows = source_netflows or {}
    zero_tails = set()
    for cycle, z in zip(fg.minimal_cycles, zero_edges):
        if z not in cycle.edges or values.get(z, 0) != 0:
            return False
        if any(values.get(e, 0) <= 0 for e in cycle.edges if e != z):
            return False
        zero_tails.add(fg.edge_map[z].tail)
    if any(values.get(e, 0) < 0 for e in fg.edge_ids):
        return False
    for v in fg.internal:
        want = 0 if v in zero_tails else 1
        if netflow(fg, values, v) != want:
            return False
    return all(
        netflow(fg, values, s) == source_netflows.get(s, 0) for s in fg.sources
    )


# ----------------------------------------------------------------------
# the bijection Phi: maximal cliques -> volume flows


def phi(fg: FramedGraph, clique, routes=None) -> dict:
    """Phi(K)(e) = (number of distinct prefixes ending at e among the routes
    of K through e) - 1; a cycle's prefix at any of its edges is the cycle
    itself."""
    routes = fg.enumerate_routes() if routes is None else routes
    if not dkk.is_maximal_clique(fg, clique, routes):
        raise NotMaximal("phi is defined on maximal cliques")
    values = {}
    for eid in fg.edge_ids:
        prefixes = set()
        for i in clique:
            r = routes[i]
            if eid not in r.edges:
                continue
            if r.is_cycle:
                prefixes.add(("cycle", r.edges))
            else:
                prefixes.add(r.edges[: r.edges.index(eid) + 1])
        assert prefixes, "a maximal clique uses every edge"
        values[eid] = len(prefixes) - 1
    return values


def phi_is_bijective(fg: FramedGraph) -> bool:
    """Forward-map every maximal clique; images must be pairwise distinct and
    exactly the volume flows."""
    routes = fg.enumerate_routes()
    cliques = dkk.maximal_cliques(fg, routes)
    images = [tuple(sorted(phi(fg, k, routes).items())) for k in cliques]
    if len(set(images)) != len(images):
        return False
    flows = volume_flows(fg)
    if fg.is_acyclic:
        targets = {tuple(sorted(f.items())) for f in flows}
    else:
        targets = {f.values for f in flows}
    return set(images) == targets


def flow_complex_volume(fg: FramedGraph) -> int:
    """Normalized volume of the flow polytope (acyclic) or flow complex
    (cyclic): the number of maximal cliques, asserted equal to the number of
    volume flows."""
    n = len(dkk.maximal_cliques(fg))
    assert n == len(volume_flows(fg))
    return n
