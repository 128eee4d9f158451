"""Face combinatorics of the mutoperhedron and the permutohedron via
bipartitions and signed arc diagrams.

A bipartition (A, B) of [c+1] is drawn as a chain of arcs on the vertex set
[0, c+1]: one arc over each maximal interval of A, one under each maximal
interval of B, alternating.  Permutohedron facets meet when bipartitions are
nested (arc diagrams stacked); mutoperhedron facets meet when the diagrams
neither cross nor interfere.  Both polytopes are simple, so every face is
recorded by its set of facets and counting faces is counting cliques.

Arcs are triples (i, j, sign) with i < j and sign in {+1, -1}; a diagram is
the tuple of its arcs sorted by left endpoint.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .flowgraph import Route

FACE_CAP = 7  # largest c for exhaustive face counts
CHECK_CAP = 6  # largest c for the multiset bijection checks


def all_bipartitions(c: int) -> list:
    """Ordered pairs (A, B) of nonempty sets partitioning [c+1]."""
    ground = frozenset(range(1, c + 2))
    out = []
    for r in range(1, c + 1):
        for combo in itertools.combinations(sorted(ground), r):
            a = frozenset(combo)
            out.append((a, ground - a))
    return out


def parse_bipartition(text: str):
    """\"12|34\" -> (frozenset({1, 2}), frozenset({3, 4}))."""
    left, right = text.split("|")
    return frozenset(int(ch) for ch in left), frozenset(int(ch) for ch in right)


def format_bipartition(part) -> str:
    a, b = part
    return "".join(map(str, sorted(a))) + "|" + "".join(map(str, sorted(b)))


# ----------------------------------------------------------------------
# diagrams


def _intervals(values):
    vals = sorted(values)
    runs = []
    for v in vals:
        if runs and runs[-1][1] == v - 1:
            runs[-1][1] = v
        else:
            runs.append([v, v])
    return runs


def arc_diagram(c: int, part) -> tuple:
    """The arc diagram of a bipartition: over the gaps labelled by the first
    part, under the gaps labelled by the second, one arc per maximal
    interval."""
    a, b = part
    if not a or not b or (a | b) != set(range(1, c + 2)) or (a & b):
        raise ValueError("need a bipartition of [c+1] with both parts nonempty")
    arcs = [(i - 1, j, 1) for i, j in _intervals(a)]
    arcs += [(i - 1, j, -1) for i, j in _intervals(b)]
    return tuple(sorted(arcs))


def diagram_bipartition(diagram) -> tuple:
    """Inverse of arc_diagram: gap g belongs to the first part iff the arc
    covering it goes over."""
    a, b = set(), set()
    for i, j, s in diagram:
        (a if s > 0 else b).update(range(i + 1, j + 1))
    return frozenset(a), frozenset(b)


def is_arc_diagram(c: int, arcs) -> bool:
    arcs = sorted(arcs)
    if not arcs or arcs[0][0] != 0 or arcs[-1][1] != c + 1:
        return False
    for (i, j, s), (k, l, t) in zip(arcs, arcs[1:]):
        if j != k or s == t:
            return False
    return True


def bipartition_arc_roundtrip(c: int, part) -> tuple:
    """Diagram of the bipartition, with the inverse reading checked."""
    diagram = arc_diagram(c, part)
    assert is_arc_diagram(c, diagram)
    assert diagram_bipartition(diagram) == (frozenset(part[0]), frozenset(part[1]))
    return diagram


# ----------------------------------------------------------------------
# crossing, interference, stacking


def cross(arc1, arc2) -> bool:
    """Same-sign arcs (i,j) and (k,l) with i < k cross when i < k <= j < l;
    sharing the middle endpoint counts."""
    (i, j, s), (k, l, t) = sorted([arc1, arc2])
    return s == t and i < k <= j < l


def diagrams_cross(d1, d2) -> bool:
    return any(cross(x, y) for x in d1 for y in d2)


def interfere(d1, d2) -> bool:
    """Do the diagrams run together along a common subpath (possibly a single
    vertex), entered with the same sign from different vertices and left to
    different vertices, with the diagram entering from outside leaving on the
    inside?"""
    in1 = {j: (i, s) for i, j, s in d1}
    out1 = {i: (j, s) for i, j, s in d1}
    in2 = {j: (i, s) for i, j, s in d2}
    out2 = {i: (j, s) for i, j, s in d2}
    for v in set(in1) & set(in2):
        (a, s), (a2, s2) = in1[v], in2[v]
        if s != s2 or a == a2:
            continue
        j = v
        while out1.get(j) is not None and out1.get(j) == out2.get(j):
            j = out1[j][0]
        e1, e2 = out1.get(j), out2.get(j)
        if e1 is None or e2 is None:
            continue
        (b, t), (b2, t2) = e1, e2
        if t == t2 and (a - a2) * (b - b2) > 0:
            return True
    return False


def admissible(d1, d2) -> bool:
    """Mutoperhedron facet intersection: neither cross nor interfere."""
    return not diagrams_cross(d1, d2) and not interfere(d1, d2)


def nested(p1, p2) -> bool:
    a1, a2 = frozenset(p1[0]), frozenset(p2[0])
    return a1 <= a2 or a2 <= a1


def _cover(diagram, gap):
    for i, j, s in diagram:
        if i < gap <= j:
            return (i, j, s)
    raise ValueError("gap not covered")


def weakly_above(d1, d2) -> bool:
    """Is d1 drawn weakly above d2 at every gap?  Over beats under; two over
    arcs compare by nesting (outer is higher), two under arcs the other way
    round."""
    last = max(j for _, j, _ in d1)
    for gap in range(1, last + 1):
        i1, j1, s1 = _cover(d1, gap)
        i2, j2, s2 = _cover(d2, gap)
        if s1 > s2:
            continue
        if s1 < s2:
            return False
        if s1 > 0 and not (i1 <= i2 and j2 <= j1):
            return False
        if s1 < 0 and not (i2 <= i1 and j1 <= j2):
            return False
    return True


def stacked(d1, d2) -> bool:
    """Can the two diagrams be drawn one weakly above the other?  Pairwise
    this is the same as nestedness of the bipartitions."""
    return weakly_above(d1, d2) or weakly_above(d2, d1)


# ----------------------------------------------------------------------
# face counts


def _count_cliques(n, adj, kmax) -> list:
    counts = [0] * (kmax + 1)

    def grow(cand, size):
        counts[size] += 1
        if size == kmax:
            return
        for v in sorted(cand):
            grow({w for w in cand if w > v and w in adj[v]}, size + 1)

    for i in range(n):
        grow({j for j in adj[i] if j > i}, 1)
    return counts[1:]


def _admissibility(c: int, mode: str):
    parts = all_bipartitions(c)
    diagrams = [arc_diagram(c, p) for p in parts]
    if mode == "stacked":
        ok = lambda x, y: stacked(diagrams[x], diagrams[y])
    elif mode == "noninterfering":
        ok = lambda x, y: admissible(diagrams[x], diagrams[y])
    else:
        raise ValueError(f"unknown mode {mode!r}")
    n = len(parts)
    adj = {i: set() for i in range(n)}
    for i, j in itertools.combinations(range(n), 2):
        if ok(i, j):
            adj[i].add(j)
            adj[j].add(i)
    return parts, diagrams, adj


def faces_by_codim(c: int, mode: str) -> list:
    """Number of codimension-k faces for k = 1..c: stacked mode counts the
    permutohedron, noninterfering mode the mutoperhedron, both as k-sets of
    pairwise admissible diagrams."""
    if c > FACE_CAP:
        raise ValueError(f"face census capped at c = {FACE_CAP}")
    _, _, adj = _admissibility(c, mode)
    return _count_cliques(len(adj), adj, c)


def f_vector(c: int, mode: str = "noninterfering") -> tuple:
    """(f_0, ..., f_{c-1}): faces by dimension."""
    return tuple(reversed(faces_by_codim(c, mode)))


def h_vector(c: int, mode: str = "noninterfering") -> tuple:
    """h-polynomial coefficients of the simple c-polytope, from the f-vector
    via f_j = sum_i binom(i, j) h_i."""
    f = list(f_vector(c, mode)) + [1]  # f_c = the whole polytope
    h = [0] * (c + 1)
    for i in range(c, -1, -1):
        h[i] = f[i] - sum(
            _binom(k, i) * h[k] for k in range(i + 1, c + 1)
        )
    return tuple(h)


def _binom(n, k):
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


# ----------------------------------------------------------------------
# consistent multisets and the two reconstructions


def multiset_of(collection) -> Counter:
    total = Counter()
    for diagram in collection:
        total.update(diagram)
    return total


def rank(multiset: Counter) -> int:
    return sum(m for (i, _, _), m in multiset.items() if i == 0)


def is_consistent(c: int, multiset: Counter) -> bool:
    arcs = [a for a in multiset if multiset[a] > 0]
    if any(cross(x, y) for x, y in itertools.combinations(arcs, 2)):
        return False
    for x in range(1, c + 1):
        incoming = sum(m for (i, j, s), m in multiset.items() if j == x)
        outgoing = sum(m for (i, j, s), m in multiset.items() if i == x)
        if incoming != outgoing:
            return False
    return True


def stacked_reconstruction(c: int, multiset: Counter) -> list:
    """Peel the topmost diagram repeatedly: from each vertex take the highest
    remaining arc out (the longest over arc, or failing that the shortest
    under arc)."""
    left = Counter(multiset)
    out = []
    for _ in range(rank(multiset)):
        v, diagram = 0, []
        while v != c + 1:
            avail = [(i, j, s) for (i, j, s), m in left.items() if i == v and m > 0]
            if not avail:
                raise ValueError("multiset is not consistent")
            over = [a for a in avail if a[2] > 0]
            arc = max(over, key=lambda a: a[1]) if over else min(avail, key=lambda a: a[1])
            diagram.append(arc)
            left[arc] -= 1
            v = arc[1]
        out.append(tuple(sorted(diagram)))
    assert not +left
    return out


def routes_reconstruction(c: int, multiset: Counter) -> list:
    """Thread arc copies outside-in: the n-th arc to arrive at a vertex
    continues on the n-th arc to leave it."""
    instances = []
    for arc, m in sorted(multiset.items()):
        instances.extend([arc] * m)
    arriving = {v: [] for v in range(1, c + 1)}
    leaving = {v: [] for v in range(0, c + 1)}
    for idx, (i, j, s) in enumerate(instances):
        if j <= c:
            arriving[j].append(idx)
        if i <= c:
            leaving[i].append(idx)
    for v in arriving:  # longer arcs are further out
        arriving[v].sort(key=lambda idx: instances[idx][0])
    for v in leaving:
        leaving[v].sort(key=lambda idx: -instances[idx][1])

    out = []
    for start in leaving.get(0, []):
        idx, diagram = start, [instances[start]]
        while instances[idx][1] != c + 1:
            v = instances[idx][1]
            pos = arriving[v].index(idx)
            idx = leaving[v][pos]
            diagram.append(instances[idx])
        out.append(tuple(sorted(diagram)))
    return out


def _collections(items, adj, k):
    """All multisets of k items that are pairwise admissible (repeats always
    allowed), as sorted index tuples."""
    out = []

    def grow(chosen, cand, last):
        if len(chosen) == k:
            out.append(tuple(chosen))
            return
        for v in sorted(cand):
            if v >= last:
                grow(chosen + [v], cand & (adj[v] | {v}), v)

    grow([], set(range(len(items))), 0)
    return out


def multiset_bijections_check(c: int, k: int) -> bool:
    """Both reconstruction algorithms invert the arc-multiset map: stacked
    collections and noninterfering collections of size k are each in
    bijection with the same consistent rank-k multisets."""
    if c > CHECK_CAP or k > 5:
        raise ValueError("bijection check capped at c <= 6, k <= 5")
    parts, diagrams, adj_m = _admissibility(c, "noninterfering")
    _, _, adj_s = _admissibility(c, "stacked")

    stacked_sets = _collections(diagrams, adj_s, k)
    routed_sets = _collections(diagrams, adj_m, k)

    seen_s = {}
    for coll in stacked_sets:
        key = frozenset(multiset_of(diagrams[i] for i in coll).items())
        if key in seen_s:
            return False
        seen_s[key] = coll
    seen_r = {}
    for coll in routed_sets:
        key = frozenset(multiset_of(diagrams[i] for i in coll).items())
        if key in seen_r:
            return False
        seen_r[key] = coll
    if set(seen_s) != set(seen_r):
        return False

    index = {d: i for i, d in enumerate(diagrams)}
    for key, coll in seen_s.items():
        multiset = Counter(dict(key))
        if not is_consistent(c, multiset) or rank(multiset) != k:
            return False
        rebuilt = sorted(index[d] for d in stacked_reconstruction(c, multiset))
        if tuple(rebuilt) != coll:
            return False
        rebuilt = sorted(index[d] for d in routes_reconstruction(c, multiset))
        if tuple(rebuilt) != seen_r[key]:
            return False
    return True


# ----------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class PentagonCertificate:
    facet: tuple
    neighbours: tuple
    neighbours_form_cycle: bool
    permutohedron_face_sizes: tuple
    isomorphic: bool


def pentagon_certificate() -> PentagonCertificate:
    """The mutoperhedron facet (12, 34) meets exactly five other facets, so it
    is a pentagon, while every 2-face of the permutohedron with the same
    f-vector is a square or a hexagon."""
    c = 3
    parts, diagrams, adj_m = _admissibility(c, "noninterfering")
    _, _, adj_s = _admissibility(c, "stacked")
    facet = (frozenset({1, 2}), frozenset({3, 4}))
    i0 = parts.index(facet)
    nbrs = sorted(adj_m[i0])
    cycle = all(len(adj_m[v] & set(nbrs)) == 2 for v in nbrs) and _connected(
        nbrs, adj_m
    )
    pi_sizes = tuple(sorted(len(adj_s[i]) for i in range(len(parts))))
    return PentagonCertificate(
        facet=facet,
        neighbours=tuple(parts[i] for i in nbrs),
        neighbours_form_cycle=cycle,
        permutohedron_face_sizes=pi_sizes,
        isomorphic=len(nbrs) in set(pi_sizes),
    )


def _connected(nodes, adj) -> bool:
    nodes = set(nodes)
    seen = {next(iter(nodes))}
    frontier = list(seen)
    while frontier:
        v = frontier.pop()
        for w in adj[v] & nodes:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return seen == nodes


def facet_iso_check(c: int) -> bool:
    """The facet ({1}, rest) of the c-dimensional mutoperhedron carries the
    face structure of the (c-1)-dimensional one: relabelling bipartitions by
    (A, B) -> ({1} + (A+1), B+1) is an admissibility-preserving bijection onto
    the neighbours of ({1}, rest)."""
    parts_small = all_bipartitions(c - 1)
    parts_big, diagrams_big, adj_big = _admissibility(c, "noninterfering")
    base = (frozenset({1}), frozenset(range(2, c + 2)))
    i0 = parts_big.index(base)

    def lift(part):
        a, b = part
        return (frozenset({1}) | frozenset(x + 1 for x in a),
                frozenset(x + 1 for x in b))

    image = [parts_big.index(lift(p)) for p in parts_small]
    if set(image) != adj_big[i0]:
        return False
    small = {p: arc_diagram(c - 1, p) for p in parts_small}
    for p, q in itertools.combinations(parts_small, 2):
        want = admissible(small[p], small[q])
        got = parts_big.index(lift(q)) in adj_big[parts_big.index(lift(p))]
        if want != got:
            return False
    return True


# ----------------------------------------------------------------------
# routes of the doubled-path graphs


def route_of_bipartition(c: int, part) -> Route:
    """The good route of the c-storey two-cycle tower using the column-1
    rung at gaps in the first part and the column-2 rung at gaps in the
    second."""
    a, b = part
    col = {g: 1 if g in a else 2 for g in range(1, c + 2)}
    edges = [f"s0.{col[1]}"]
    for g in range(1, c + 1):
        if col[g] != col[g + 1]:
            edges.append(f"c{g}.{col[g]}")
        edges.append(f"s{g}.{col[g + 1]}")
    return Route(tuple(edges))


def bipartition_of_route(route: Route) -> tuple:
    """Inverse of route_of_bipartition, reading the rung column per gap."""
    a, b = set(), set()
    for e in route.edges:
        if e.startswith("s"):
            level, col = e[1:].split(".")
            (a if col == "1" else b).add(int(level) + 1)
    return frozenset(a), frozenset(b)
