"""DKK triangulation machinery: maximal cliques of compatible routes,
unimodularity certificates, exact flow decomposition, and the reduced fan.

Cliques are tuples of indices into the graph's canonical route list.  All
geometry is exact: lattice bases come from saturated integer kernels, cone
membership from rational elimination, never from floats.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg
from .flowgraph import FramedGraph, NotAmple, NotMaximal, Route

CLIQUE_CAP = 10**7


class CliqueExplosion(Exception):
    """Clique search exceeded the configured cap."""


class UnbalancedFlow(Exception):
    """Flow has nonzero netflow at an internal vertex."""


class NegativeFlow(Exception):
    """Flow has a negative value."""


@dataclass(frozen=True)
class Fan:
    """Simplicial fan: primitive integer rays plus maximal cones as ray-index
    tuples.  ``labels`` optionally records what each ray came from (for DKK
    fans, the route index)."""

    rays: tuple
    cones: tuple
    dim: int
    labels: tuple | None = None

    def ridge_counts(self) -> dict:
        counts = {}
        for cone in self.cones:
            for ridge in itertools.combinations(sorted(cone), len(cone) - 1):
                counts[ridge] = counts.get(ridge, 0) + 1
        return counts

    def is_complete_simplicial(self) -> bool:
        """Every cone simplicial and full-dimensional, every ridge in exactly
        two maximal cones.  For complete simplicial fans this is the standard
        finite certificate."""
        for cone in self.cones:
            if len(cone) != self.dim:
                return False
            if _linalg.rank([list(self.rays[i]) for i in cone]) != self.dim:
                return False
        return all(c == 2 for c in self.ridge_counts().values())

    def polytope_f_vector(self) -> list[int]:
        """(f_0, ..., f_{dim-1}) of a simple polytope with this normal fan:
        f_k = number of distinct (dim-k)-subsets of ray sets of maximal cones."""
        out = []
        for size in range(self.dim, 0, -1):
            faces = set()
            for cone in self.cones:
                faces.update(itertools.combinations(sorted(cone), size))
            out.append(len(faces))
        return out

    def to_jsonable(self) -> dict:
        return {
            "rays": [list(r) for r in self.rays],
            "cones": [list(c) for c in self.cones],
        }


def maximal_cliques(fg: FramedGraph, routes=None, cap: int = CLIQUE_CAP):
    """All inclusion-maximal sets of pairwise compatible routes, as sorted
    index tuples in deterministic order.

    Bron-Kerbosch with pivoting on the non-exceptional routes only;
    exceptional routes are compatible with everything and are appended to
    every result.
    """
    routes = fg.enumerate_routes() if routes is None else routes
    exceptional = [i for i, r in enumerate(routes) if fg.is_exceptional(r, routes)]
    exc_set = set(exceptional)
    rest = [i for i in range(len(routes)) if i not in exc_set]
    neighbours = {i: set() for i in rest}
    for a, b in itertools.combinations(rest, 2):
        if fg.compatible(routes[a], routes[b]):
            neighbours[a].add(b)
            neighbours[b].add(a)

    out = []
    visits = 0

    def expand(clique, candidates, excluded):
        nonlocal visits
        visits += 1
        if visits > cap:
            raise CliqueExplosion(f"more than {cap} search nodes")
        if not candidates and not excluded:
            out.append(tuple(sorted(clique + exceptional)))
            return
        u = next(iter(candidates | excluded))
        for v in sorted(candidates - neighbours[u]):
            expand(clique + [v], candidates & neighbours[v], excluded & neighbours[v])
            candidates = candidates - {v}
            excluded = excluded | {v}

    expand([], set(rest), set())
    out.sort()
    return out


def clique_size(fg: FramedGraph) -> int:
    """Dimension of the flow space: #edges - #internal vertices."""
    return len(fg.edges) - len(fg.internal)


def is_maximal_clique(fg: FramedGraph, clique, routes=None) -> bool:
    routes = fg.enumerate_routes() if routes is None else routes
    members = [routes[i] for i in clique]
    if len(set(clique)) != clique_size(fg):
        return False
    return all(
        fg.compatible(a, b) for a, b in itertools.combinations(members, 2)
    )


def internal_incidence(fg: FramedGraph):
    """Rows = internal vertices, columns = edges (declaration order); entry
    +1 at the tail, -1 at the head (netflow = out - in)."""
    rows = []
    for v in fg.internal:
        row = []
        for e in fg.edges:
            row.append((1 if e.tail == v else 0) - (1 if e.head == v else 0))
        rows.append(row)
    return rows


def flow_lattice_basis(fg: FramedGraph):
    """Saturated integer basis of the flow space {x : netflow(v) = 0 inside}."""
    a = internal_incidence(fg)
    basis = _linalg.integer_kernel_basis(a, ncols=len(fg.edges))
    assert len(basis) == clique_size(fg)
    return basis


def route_indicator(fg: FramedGraph, route: Route):
    vec = [0] * len(fg.edges)
    index = {e: i for i, e in enumerate(fg.edge_ids)}
    for eid in route.edges:
        vec[index[eid]] += 1
    return vec


def _integer_coords(basis, vec):
    coords = _linalg.solve_in_basis(basis, vec)
    assert coords is not None, "vector is not in the flow space"
    out = []
    for c in coords:
        assert c.denominator == 1, "saturated basis must give integer coordinates"
        out.append(int(c))
    return out


def is_unimodular(fg: FramedGraph, clique, routes=None) -> bool:
    """Do the clique's route indicators form a Z-basis of the flow lattice?"""
    routes = fg.enumerate_routes() if routes is None else routes
    basis = flow_lattice_basis(fg)
    if len(clique) != len(basis):
        return False
    mat = [
        _integer_coords(basis, route_indicator(fg, routes[i])) for i in clique
    ]
    return abs(_linalg.det_bareiss(mat)) == 1


# ----------------------------------------------------------------------
# exact flow decomposition


def _check_flow(fg: FramedGraph, f) -> dict:
    values = {e: Fraction(f.get(e, 0)) for e in fg.edge_ids}
    for e, x in values.items():
        if x < 0:
            raise NegativeFlow(f"flow is negative on edge {e}")
    for v in fg.internal:
        net = sum(values[e.id] for e in fg.out_edges(v)) - sum(
            values[e.id] for e in fg.in_edges(v)
        )
        if net != 0:
            raise UnbalancedFlow(f"nonzero netflow at internal vertex {v}")
    return values


def _trace_route(fg: FramedGraph, f) -> tuple:
    """One DKK route of the strip decomposition of the positive flow f.

    Couple the incoming and outgoing flow intervals at each vertex in framing
    order and follow the strip that starts at the top of the smallest-id
    positive edge; forward to a sink, backward to a source.  Returns the edge
    tuple and the bottleneck width, which is a whole coefficient of the
    unique DKK-compatible decomposition.
    """
    start = min(e for e in fg.edge_ids if f[e] > 0)

    def out_height(v, eid, offset):
        h = Fraction(0)
        for other in fg.out_order(v):
            if other == eid:
                return h + offset
            h += f[other]
        raise AssertionError

    def in_height(v, eid, offset):
        h = Fraction(0)
        for other in fg.in_order(v):
            if other == eid:
                return h + offset
            h += f[other]
        raise AssertionError

    def locate(order, x):
        h = Fraction(0)
        for eid in order:
            if h <= x < h + f[eid]:
                return eid, x - h
            h += f[eid]
        raise AssertionError("height outside the active intervals")

    forward = [(start, Fraction(0))]
    while True:
        eid, off = forward[-1]
        v = fg.edge_map[eid].head
        if not fg.out_edges(v):
            break
        x = in_height(v, eid, off)
        forward.append(locate(fg.out_order(v), x))
    backward = []
    eid, off = start, Fraction(0)
    while True:
        v = fg.edge_map[eid].tail
        if not fg.in_edges(v):
            break
        x = out_height(v, eid, off)
        eid, off = locate(fg.in_order(v), x)
        backward.append((eid, off))
    walk = backward[::-1] + forward
    width = min(f[eid] - off for eid, off in walk)
    assert width > 0
    return tuple(eid for eid, _ in walk), width


def decompose_flow(fg: FramedGraph, f, routes=None) -> dict:
    """Write a nonnegative balanced flow as the unique nonnegative combination
    of pairwise compatible routes (cycle coefficients first, then the strip
    decomposition of the acyclic remainder).  Keys are route indices; only
    nonzero coefficients appear.  Integer flows get integer coefficients."""
    routes = fg.enumerate_routes() if routes is None else routes
    index = {r.edges: i for i, r in enumerate(routes)}
    values = _check_flow(fg, f)

    coeffs = {}
    for cycle in fg.minimal_cycles:
        m = min(values[e] for e in cycle.edges)
        if m > 0:
            coeffs[index[cycle.edges]] = m
            for e in cycle.edges:
                values[e] -= m

    while any(values[e] > 0 for e in fg.edge_ids):
        edges, width = _trace_route(fg, values)
        for e in edges:
            values[e] -= width
        i = index.get(edges)
        assert i is not None, f"extracted walk {edges} is not a route"
        coeffs[i] = coeffs.get(i, 0) + width

    support = [routes[i] for i in coeffs]
    for a, b in itertools.combinations(support, 2):
        assert fg.compatible(a, b), "decomposition support must be a clique"
    return coeffs


# ----------------------------------------------------------------------
# triangulation verification and the reduced fan


@dataclass
class TriangulationReport:
    n_cliques: int
    cardinality_ok: bool
    edges_covered_ok: bool
    samples_ok: bool
    cyclic_structure_ok: bool
    seed: int
    n_samples: int
    messages: list

    @property
    def ok(self) -> bool:
        return (
            self.cardinality_ok
            and self.edges_covered_ok
            and self.samples_ok
            and self.cyclic_structure_ok
        )


def verify_triangulation(fg: FramedGraph, n_samples: int = 200, seed: int = 0):
    """Certify the clique complex as a unimodular triangulation of the flow
    cone: cardinalities, edge coverage, Monte-Carlo interior disjointness via
    unique decomposition, and (cyclic case) agreement with the union of
    acyclic triangulations over zero-edge selections."""
    if not fg.is_acyclic:
        if not fg.is_cyclic_ample():
            raise NotAmple("verification needs a cyclic ample colouring")
    elif not fg.is_ample():
        raise NotAmple("verification needs an ample framing")
    routes = fg.enumerate_routes()
    cliques = maximal_cliques(fg, routes)
    messages = []

    want = clique_size(fg)
    cardinality_ok = all(len(k) == want for k in cliques)
    if not cardinality_ok:
        messages.append(f"some clique does not have {want} routes")

    edges_covered_ok = True
    all_edges = set(fg.edge_ids)
    for k in cliques:
        used = set()
        for i in k:
            used.update(routes[i].edges)
        if used != all_edges:
            edges_covered_ok = False
            messages.append(f"clique {k} misses edges {sorted(all_edges - used)}")
            break

    rng = random.Random(seed)
    clique_sets = [frozenset(k) for k in cliques]
    samples_ok = True
    for _ in range(n_samples):
        f = {e: Fraction(0) for e in fg.edge_ids}
        for r in routes:
            if rng.random() < 0.45:
                continue
            c = Fraction(rng.randint(0, 8), rng.randint(1, 5))
            for e in r.edges:
                f[e] += c
        try:
            coeffs = decompose_flow(fg, f, routes)
        except AssertionError as exc:
            samples_ok = False
            messages.append(f"decomposition failed: {exc}")
            break
        rebuilt = {e: Fraction(0) for e in fg.edge_ids}
        for i, c in coeffs.items():
            for e in routes[i].edges:
                rebuilt[e] += c
        if rebuilt != f:
            samples_ok = False
            messages.append("decomposition does not reconstruct the flow")
            break
        support = frozenset(coeffs)
        if not any(support <= k for k in clique_sets):
            samples_ok = False
            messages.append("decomposition support lies in no maximal clique")
            break

    cyclic_structure_ok = True
    if fg.minimal_cycles:
        got = {
            frozenset(routes[i].edges for i in k if not routes[i].is_cycle)
            for k in cliques
        }
        expected = set()
        choices = [c.edges for c in fg.minimal_cycles]
        for selection in itertools.product(*choices):
            removed = set(selection)
            sub = FramedGraph(
                fg.vertices,
                tuple(e for e in fg.edges if e.id not in removed),
            )
            sub_routes = sub.enumerate_routes()
            for k in maximal_cliques(sub, sub_routes):
                expected.add(frozenset(sub_routes[i].edges for i in k))
        if got != expected:
            cyclic_structure_ok = False
            messages.append(
                "cone set differs from the union of zero-edge-selection triangulations"
            )

    return TriangulationReport(
        n_cliques=len(cliques),
        cardinality_ok=cardinality_ok,
        edges_covered_ok=edges_covered_ok,
        samples_ok=samples_ok,
        cyclic_structure_ok=cyclic_structure_ok,
        seed=seed,
        n_samples=n_samples,
        messages=messages,
    )


def reduced_fan(fg: FramedGraph, routes=None) -> Fan:
    """The DKK fan modulo the span of exceptional route indicators.

    Rays are images of non-exceptional route indicators in a saturated basis
    of the quotient lattice; maximal cones are the maximal cliques.  Raises
    NotAmple when the framing is not (cyclic-)ample, e.g. when some edge lies
    on no exceptional route of a DAG."""
    if fg.is_acyclic:
        if not fg.is_ample():
            raise NotAmple("an edge lies on no exceptional route")
    elif not fg.is_cyclic_ample():
        raise NotAmple("cyclic graphs need a cyclic ample colouring")
    routes = fg.enumerate_routes() if routes is None else routes
    basis = flow_lattice_basis(fg)
    exceptional = [i for i, r in enumerate(routes) if fg.is_exceptional(r, routes)]
    rest = [i for i in range(len(routes)) if i not in set(exceptional)]

    w = [_integer_coords(basis, route_indicator(fg, routes[i])) for i in exceptional]
    assert _linalg.rank(w) == len(w), "exceptional indicators must be independent"
    kernel = _linalg.integer_kernel_basis(w, ncols=len(basis))
    dim = len(basis) - len(exceptional)
    assert len(kernel) == dim

    rays = []
    labels = []
    seen = {}
    for i in rest:
        coords = _integer_coords(basis, route_indicator(fg, routes[i]))
        ray = _linalg.primitive([_linalg.dot(k, coords) for k in kernel])
        assert any(ray), "non-exceptional route maps to zero in the quotient"
        assert ray not in seen, "two routes map to the same reduced ray"
        seen[ray] = len(rays)
        rays.append(ray)
        labels.append(i)

    ray_of_route = {i: seen_idx for i, seen_idx in zip(rest, range(len(rays)))}
    cones = []
    for k in maximal_cliques(fg, routes):
        cone = tuple(sorted(ray_of_route[i] for i in k if i not in set(exceptional)))
        assert _linalg.rank([list(rays[j]) for j in cone]) == dim
        cones.append(cone)
    cones.sort()
    return Fan(tuple(rays), tuple(cones), dim, tuple(labels))


def dual_graph(cliques) -> list:
    """Pairs of clique indices whose route sets differ in exactly one route."""
    out = []
    sets = [set(k) for k in cliques]
    for a, b in itertools.combinations(range(len(cliques)), 2):
        if len(sets[a] ^ sets[b]) == 2:
            out.append((a, b))
    return out
