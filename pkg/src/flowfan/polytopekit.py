"""Lattice polytopes attached to strings and arcs, Minkowski normal-fan
certification, projections to the cycle-sum-zero subspace, combinatorial fan
isomorphism, and small exact H-description vertex enumeration.

All geometry is exact (int / Fraction); floats appear only in the SVG
emitter.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import _linalg, dkk, quiverlink
from .flowgraph import RED, FramedGraph
from .quiverlink import LAZY, Quiver, is_lazy, string_vertices


class RepeatedVertex(Exception):
    """The string revisits a vertex, so its module is not thin (out of scope)."""


@dataclass(frozen=True, eq=False)
class LatticePolytope:
    """Ambient dimension plus an exact candidate point set; the points may
    contain non-vertices, hull membership is resolved on demand."""

    ambient: int
    points: tuple

    def __post_init__(self):
        pts = sorted({tuple(Fraction(x) for x in p) for p in self.points})
        assert pts, "a polytope needs at least one point"
        assert all(len(p) == self.ambient for p in pts)
        object.__setattr__(self, "points", tuple(pts))

    @cached_property
    def vertex_set(self) -> frozenset:
        out = []
        for i, p in enumerate(self.points):
            others = [q for j, q in enumerate(self.points) if j != i]
            if not others or not _linalg.in_convex_hull(p, others):
                out.append(p)
        return frozenset(out)

    def translate(self, shift) -> "LatticePolytope":
        return LatticePolytope(
            self.ambient, tuple(tuple(x + s for x, s in zip(p, shift)) for p in self.points)
        )

    def to_jsonable(self) -> dict:
        return {
            "dim": self.ambient,
            "points": [[str(x) if x.denominator != 1 else int(x) for x in p] for p in self.points],
        }


# ----------------------------------------------------------------------
# fence posets and order polytopes


@dataclass(frozen=True)
class FencePoset:
    elements: tuple
    covers: tuple  # (lower, upper) pairs


def downsets(fence: FencePoset) -> list:
    """All order ideals, in a deterministic order (brute force; fences on
    walks are small)."""
    elems = list(fence.elements)
    out = []
    for mask in range(1 << len(elems)):
        s = {e for i, e in enumerate(elems) if mask >> i & 1}
        if all(lo in s for lo, hi in fence.covers if hi in s):
            out.append(frozenset(s))
    return out


def fence_of_walk(fg: FramedGraph, edge_ids) -> FencePoset:
    """Fence of a directed walk in the graph: red edges give head < tail,
    blue edges tail < head."""
    if not edge_ids:
        raise ValueError("use the one-element fence for a lazy walk")
    elems = [fg.edge_map[edge_ids[0]].tail]
    covers = []
    for eid in edge_ids:
        e = fg.edge_map[eid]
        assert e.tail == elems[-1], "not a walk"
        elems.append(e.head)
        covers.append((e.head, e.tail) if e.colour == RED else (e.tail, e.head))
    return FencePoset(tuple(elems), tuple(covers))


def fence_of_string(q: Quiver, word) -> FencePoset:
    """Fence of a string: each letter's arrow contributes target < source,
    regardless of the letter's exponent."""
    verts = string_vertices(q, word)
    if len(set(verts)) != len(verts):
        raise RepeatedVertex("the string revisits a vertex")
    if is_lazy(word):
        return FencePoset(verts, ())
    amap = q.arrow_map
    covers = tuple((amap[aid][2], amap[aid][1]) for aid, _ in word)
    return FencePoset(verts, covers)


def order_polytope(fence: FencePoset, universe) -> LatticePolytope:
    """Indicator vectors of the order ideals, embedded in R^universe."""
    universe = list(universe)
    idx = {v: i for i, v in enumerate(universe)}
    pts = []
    for ideal in downsets(fence):
        vec = [0] * len(universe)
        for v in ideal:
            vec[idx[v]] = 1
        pts.append(tuple(vec))
    return LatticePolytope(len(universe), tuple(pts))


def hn_polytope(q: Quiver, word) -> LatticePolytope:
    """Subrepresentation dimension vectors of the string module: the order
    polytope of the string's fence, in quiver-vertex coordinates."""
    return order_polytope(fence_of_string(q, word), q.vertices)


def dkk_red_summands(fg: FramedGraph) -> list:
    """Order polytopes of all directed vertex-simple walks (lazy ones
    included) inside the internal induced subgraph."""
    internal = set(fg.internal)
    inner = [e for e in fg.edges if e.tail in internal and e.head in internal]
    walks = [[]]

    def extend(walk, seen):
        last = fg.edge_map[walk[-1]].head
        for e in inner:
            if e.tail == last and e.head not in seen:
                walks.append(walk + [e.id])
                extend(walk + [e.id], seen | {e.head})

    for e in inner:
        walks.append([e.id])
        extend([e.id], {e.tail, e.head})

    out = []
    for v in sorted(internal):
        out.append(order_polytope(FencePoset((v,), ()), fg.internal))
    for walk in walks:
        if walk:
            out.append(order_polytope(fence_of_walk(fg, walk), fg.internal))
    return out


# ----------------------------------------------------------------------
# shard polytopes


@dataclass(frozen=True)
class Arc:
    a: int
    b: int
    A: frozenset
    B: frozenset

    def __post_init__(self):
        object.__setattr__(self, "A", frozenset(self.A))
        object.__setattr__(self, "B", frozenset(self.B))
        if not 1 <= self.a < self.b:
            raise ValueError("need 1 <= a < b")
        between = set(range(self.a + 1, self.b))
        if self.A & self.B or self.A | self.B != between:
            raise ValueError("A and B must partition the open interval (a, b)")


def _alternating_matchings(arc: Arc):
    ups = sorted(arc.A | {arc.a})
    downs = sorted(arc.B | {arc.b})

    def extend(matching, lo):
        yield matching
        for x in ups:
            if x < lo:
                continue
            for y in downs:
                if y > x:
                    yield from extend(matching + [(x, y)], y + 1)

    yield from extend([], arc.a)


def shard_polytope(arc: Arc, ambient: int | None = None) -> LatticePolytope:
    """Characteristic vectors of the arc's alternating matchings."""
    ambient = arc.b if ambient is None else ambient
    assert ambient >= arc.b
    pts = []
    for matching in _alternating_matchings(arc):
        vec = [0] * ambient
        for x, y in matching:
            vec[x - 1] += 1
            vec[y - 1] -= 1
        pts.append(tuple(vec))
    return LatticePolytope(ambient, tuple(pts))


def ladder_quiver(n: int) -> Quiver:
    """Vertices [n] with arrows a_i: i-1 -> i and b_i: i -> i-1, and the
    two-cycle relations (a_i b_i) and (b_i a_i)."""
    arrows = []
    relations = set()
    for i in range(2, n + 1):
        arrows.append((f"a{i}", i - 1, i))
        arrows.append((f"b{i}", i, i - 1))
        relations.add((f"a{i}", f"b{i}"))
        relations.add((f"b{i}", f"a{i}"))
    return Quiver(tuple(range(1, n + 1)), tuple(arrows), frozenset(relations))


def string_of_quadruple(n: int, c: int, d: int, C, D):
    """The ladder-quiver string on vertices c..d: step i is the direct letter
    a_i when i is in C and the inverse letter b_i when i is in D."""
    C, D = set(C), set(D)
    if not (1 <= c <= d <= n) or C & D or C | D != set(range(c + 1, d + 1)):
        raise ValueError("need C ⊔ D = {c+1, ..., d} inside [n]")
    if c == d:
        return (LAZY, c)
    return tuple(
        (f"a{i}", 1) if i in C else (f"b{i}", -1) for i in range(c + 1, d + 1)
    )


def iota(point) -> tuple:
    """R^n -> R^(n+1), e_i -> e_i - e_(i+1)."""
    n = len(point)
    return tuple(
        (point[j] if j < n else 0) - (point[j - 1] if j > 0 else 0)
        for j in range(n + 1)
    )


def theta_iota_check(n: int, quadruple) -> bool:
    """Does the embedded HN polytope of the ladder string equal the shard
    polytope of the shifted arc (c, d+1, C, D), as vertex sets?"""
    c, d, C, D = quadruple
    word = string_of_quadruple(n, c, d, C, D)
    hn = hn_polytope(ladder_quiver(n), word)
    embedded = LatticePolytope(n + 1, tuple(iota(p) for p in hn.points))
    shard = shard_polytope(Arc(c, d + 1, frozenset(C), frozenset(D)), ambient=n + 1)
    return embedded.vertex_set == shard.vertex_set


# ----------------------------------------------------------------------
# Minkowski sums and normal fans


def _argmax(points, w):
    """Lexicographically tie-broken maximizer of <w, p>; the tuple comparison
    plays the role of a deterministic (1, eps, eps^2, ...) perturbation, so a
    degenerate functional never needs resampling."""
    return max(points, key=lambda p: (_linalg.dot(w, p), p))


def minkowski_normal_fan(summands, candidate: dkk.Fan):
    """Certify that the candidate fan is the normal fan of the Minkowski sum
    and return it with the per-cone sum vertices.

    For each maximal cone the per-summand maximizers at the ray sum are
    required to maximize at every ray of the cone (support functions add, so
    this pins the argmax tuple on the whole cone); distinct cones must give
    distinct sum vertices, and the fan must be complete.  Raises ValueError
    when certification fails."""
    assert summands, "need at least one summand"
    ambient = summands[0].ambient
    assert all(s.ambient == ambient for s in summands)
    if not candidate.is_complete_simplicial():
        raise ValueError("candidate fan is not complete simplicial")
    vertices = []
    for cone in candidate.cones:
        rays = [candidate.rays[i] for i in cone]
        w0 = tuple(sum(r[k] for r in rays) for k in range(ambient))
        total = [Fraction(0)] * ambient
        for s in summands:
            best = _argmax(s.points, w0)
            for r in rays:
                top = _linalg.dot(r, best)
                if any(_linalg.dot(r, q) > top for q in s.points):
                    raise ValueError(
                        "support function is not linear on a candidate cone"
                    )
            total = [t + x for t, x in zip(total, best)]
        vertices.append(tuple(total))
    if len(set(vertices)) != len(vertices):
        raise ValueError("two cones share a sum vertex")
    return candidate, vertices


def minkowski_sum_points(summands) -> LatticePolytope:
    """All sums of one candidate point per summand (desk scale only)."""
    ambient = summands[0].ambient
    pts = []
    for choice in itertools.product(*[s.points for s in summands]):
        pts.append(tuple(sum(c[k] for c in choice) for k in range(ambient)))
    return LatticePolytope(ambient, tuple(pts))


# ----------------------------------------------------------------------
# the cycle-sum-zero subspace


def project_to_W(fg: FramedGraph, vec):
    """Orthogonal projection of a vector over the internal vertices onto
    W = {x : sum of x over each minimal cycle = 0}, exact."""
    internal = list(fg.internal)
    if isinstance(vec, dict):
        x = [Fraction(vec.get(v, 0)) for v in internal]
        wrap = lambda y: {v: c for v, c in zip(internal, y)}
    else:
        x = [Fraction(c) for c in vec]
        assert len(x) == len(internal)
        wrap = tuple
    rows = []
    for cycle in fg.minimal_cycles:
        verts = {fg.edge_map[e].tail for e in cycle.edges}
        rows.append([1 if v in verts else 0 for v in internal])
    if not rows:
        return wrap(x)
    # x - U^T (U U^T)^{-1} U x, via one exact solve
    ux = [sum(r[i] * x[i] for i in range(len(x))) for r in rows]
    gram = [[sum(a * b for a, b in zip(r1, r2)) for r2 in rows] for r1 in rows]
    coeff = _linalg.rational_solve(gram, ux)
    assert coeff is not None
    y = list(x)
    for c, r in zip(coeff, rows):
        for i in range(len(y)):
            y[i] -= c * r[i]
    return wrap(y)


def phi_image_fan(fg: FramedGraph) -> dkk.Fan:
    """The fan of phi-images of the DKK cliques, in internal coordinates
    (inside W for cyclic-ample graphs)."""
    routes = fg.enumerate_routes()
    internal = list(fg.internal)
    rays = []
    index = {}
    ray_of_route = {}
    for i, r in enumerate(routes):
        if r.is_cycle or fg.is_exceptional(r, routes):
            continue
        img = quiverlink.phi_map(fg, {e: 1 for e in r.edges})
        ray = _linalg.primitive([img[v] for v in internal])
        assert any(ray), "phi must not kill a non-exceptional route"
        if ray not in index:
            index[ray] = len(rays)
            rays.append(ray)
        ray_of_route[i] = index[ray]
    cones = []
    for clique in dkk.maximal_cliques(fg, routes):
        cone = tuple(sorted({ray_of_route[i] for i in clique if i in ray_of_route}))
        cones.append(cone)
    dim = _linalg.rank([list(r) for r in rays])
    assert all(len(c) == dim for c in cones), "phi collapsed a cone"
    return dkk.Fan(tuple(rays), tuple(cones), dim)


# ----------------------------------------------------------------------
# cyclohedron pieces


def delta_polytope(n: int, a: int, b: int) -> LatticePolytope:
    """Conv of 0 and the cyclic suffix sums e_k + ... + e_b for k running
    back from b to a (coordinates over the blossomed-cycle internals)."""
    if not (1 <= a <= n and 1 <= b <= n):
        raise ValueError("need a, b in [n]")
    walk = [b]
    while walk[-1] != a:
        walk.append((walk[-1] - 2) % n + 1)  # previous vertex on the cycle
    pts = [tuple([0] * n)]
    vec = [0] * n
    for k in walk:
        vec[k - 1] += 1
        pts.append(tuple(vec))
    return LatticePolytope(n, tuple(pts))


def cyclohedron_summands(n: int) -> list:
    """The projected suffix-sum polytopes pi_W(Delta_(a,b)) over all pairs
    with b+1 != a mod n, in the internal coordinates of the blossomed
    n-cycle."""
    from .families import blossomed_cycle

    fg = blossomed_cycle(n)
    internal = list(fg.internal)
    out = []
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if (b % n) + 1 == a:
                continue
            pts = []
            for p in delta_polytope(n, a, b).points:
                proj = project_to_W(fg, {f"v{k + 1}": p[k] for k in range(n)})
                pts.append(tuple(proj[v] for v in internal))
            out.append(LatticePolytope(n, tuple(pts)))
    return out


def cyclohedron_fan_cones(n: int) -> list:
    """Maximal noncrossing sets of centrally symmetric diagonal pairs of the
    2n-gon (the cyclohedron's combinatorics), as frozensets of chord pairs."""
    m = 2 * n
    chords = [
        (i, j)
        for i in range(m)
        for j in range(i + 1, m)
        if (j - i) % m not in (1, m - 1)
    ]
    pairs = set()
    for i, j in chords:
        mate = tuple(sorted(((i + n) % m, (j + n) % m)))
        pairs.add(frozenset({(i, j), mate}))
    pairs = sorted(pairs, key=sorted)

    def crosses(c1, c2):
        (a, b), (c, d) = sorted(c1), sorted(c2)
        if len({a, b, c, d}) < 4:
            return False
        return (a < c < b < d) or (c < a < d < b)

    def pair_ok(p1, p2):
        if p1 == p2:
            return False
        return not any(crosses(c1, c2) for c1 in p1 for c2 in p2)

    size = n - 1
    out = []
    for combo in itertools.combinations(range(len(pairs)), size):
        if all(pair_ok(pairs[i], pairs[j]) for i, j in itertools.combinations(combo, 2)):
            out.append(frozenset(combo))
    return out


def braid_fan_cones(n: int) -> list:
    """Maximal braid-fan cones: for each permutation of [n], the chain of its
    proper prefix subsets."""
    out = []
    for perm in itertools.permutations(range(1, n + 1)):
        out.append(
            frozenset(frozenset(perm[: k + 1]) for k in range(n - 1))
        )
    return out


# ----------------------------------------------------------------------
# combinatorial fan isomorphism


def _cone_sets(fan) -> list:
    if isinstance(fan, dkk.Fan):
        return [frozenset(c) for c in fan.cones]
    return [frozenset(c) for c in fan]


def fan_isomorphic(f1, f2) -> bool:
    """Is there a ray bijection carrying maximal cones onto maximal cones?
    Purely combinatorial backtracking with degree pruning; accepts Fan
    objects or bare iterables of maximal cones."""
    cones1, cones2 = _cone_sets(f1), _cone_sets(f2)
    rays1 = sorted({r for c in cones1 for r in c}, key=repr)
    rays2 = sorted({r for c in cones2 for r in c}, key=repr)
    if len(rays1) != len(rays2) or len(cones1) != len(cones2):
        return False
    if sorted(map(len, cones1)) != sorted(map(len, cones2)):
        return False

    def degree(r, cones):
        return sum(1 for c in cones if r in c)

    deg1 = {r: degree(r, cones1) for r in rays1}
    deg2 = {r: degree(r, cones2) for r in rays2}
    if sorted(deg1.values()) != sorted(deg2.values()):
        return False
    cones2_set = set(cones2)
    order = sorted(rays1, key=lambda r: -deg1[r])

    def extend(i, image, used):
        if i == len(order):
            return {frozenset(image[r] for r in c) for c in cones1} == cones2_set
        r = order[i]
        for s in rays2:
            if s in used or deg2[s] != deg1[r]:
                continue
            image[r] = s
            ok = True
            for c in cones1:
                if r not in c:
                    continue
                mapped = {image[x] for x in c if x in image}
                if not any(mapped <= c2 for c2 in cones2_set):
                    ok = False
                    break
            if ok and extend(i + 1, image, used | {s}):
                return True
            del image[r]
        return False

    return extend(0, {}, set())


# ----------------------------------------------------------------------
# H-description vertex enumeration


# Explicit realisation of the c=3 facial interval polytope inside the
# hyperplane x1+x2+x3+x4 = 26: one upper bound sum(x_i, i in I) <= z_I per
# proper nonempty subset I of {1,2,3,4}.
_Z3 = {
    (1,): 11,
    (2,): 12,
    (3,): 12,
    (4,): 11,
    (1, 2): 18,
    (1, 3): 18,
    (1, 4): 19,
    (2, 3): 19,
    (2, 4): 18,
    (3, 4): 18,
    (1, 2, 3): 24,
    (1, 2, 4): 25,
    (1, 3, 4): 25,
    (2, 3, 4): 24,
}
MUTOPERHEDRON_3 = (
    26,
    tuple(
        (tuple(1 if i in I else 0 for i in range(1, 5)), z)
        for I, z in sorted(_Z3.items(), key=lambda kv: (len(kv[0]), kv[0]))
    ),
)


def h_description_vertices(total, inequalities) -> list:
    """Vertices of {x : sum x_i = total, c . x <= r for (c, r) given}: exact
    brute force over (ambient-1)-subsets of tight inequalities."""
    ambient = len(inequalities[0][0])
    ones = [1] * ambient
    verts = set()
    for combo in itertools.combinations(inequalities, ambient - 1):
        mat = [ones] + [list(c) for c, _ in combo]
        rhs = [total] + [r for _, r in combo]
        if _linalg.rank(mat) != ambient:
            continue
        x = _linalg.rational_solve(mat, rhs)
        if x is None:
            continue
        if all(
            sum(c * v for c, v in zip(coeffs, x)) <= r for coeffs, r in inequalities
        ):
            verts.add(tuple(x))
    return sorted(verts)


def h_description_f_vector(total, inequalities) -> tuple:
    """(vertices, edges, facets) of the 3-polytope cut out in the hyperplane,
    assuming simplicity: two vertices are adjacent when they share all but
    one tight inequality."""
    verts = h_description_vertices(total, inequalities)
    tight = []
    for x in verts:
        tight.append(
            frozenset(
                i
                for i, (coeffs, r) in enumerate(inequalities)
                if sum(c * v for c, v in zip(coeffs, x)) == r
            )
        )
    assert all(len(t) == 3 for t in tight), "vertex is not simple"
    edges = sum(
        1
        for i, j in itertools.combinations(range(len(verts)), 2)
        if len(tight[i] & tight[j]) == 2
    )
    facets = len({i for t in tight for i in t})
    return (len(verts), edges, facets)


# ----------------------------------------------------------------------
# SVG (display only; geometry stays exact upstream)


def fan_to_svg(fan: dkk.Fan) -> str:
    """Unit-circle drawing of a rank-2 fan: shaded cone sectors plus rays as
    unit segments, in a fixed (-1.2, -1.2, 2.4, 2.4) view box."""
    basis = _plane_basis(fan.rays)
    pts = []
    for r in fan.rays:
        u, v = _plane_coords(r, basis)
        norm = math.hypot(u, v)
        pts.append((u / norm, v / norm))
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.2 -1.2 2.4 2.4">'
    ]
    for cone in fan.cones:
        (x1, y1), (x2, y2) = pts[cone[0]], pts[cone[1]]
        parts.append(
            f'<path d="M 0 0 L {x1:.4f} {y1:.4f} L {x2:.4f} {y2:.4f} Z" '
            'fill="#88aadd" fill-opacity="0.25" stroke="none"/>'
        )
    for x, y in pts:
        parts.append(
            f'<line x1="0" y1="0" x2="{x:.4f}" y2="{y:.4f}" '
            'stroke="#223355" stroke-width="0.02"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def _plane_basis(rays):
    vecs = [list(map(Fraction, r)) for r in rays]
    assert _linalg.rank(vecs) == 2, "SVG drawing needs a rank-2 fan"
    basis = []
    for v in vecs:
        cand = basis + [v]
        if _linalg.rank(cand) > len(basis):
            basis.append(v)
        if len(basis) == 2:
            break
    # Gram-Schmidt (exact) so angles are faithful
    b1 = basis[0]
    d11 = sum(x * x for x in b1)
    proj = sum(x * y for x, y in zip(b1, basis[1]))
    b2 = [y - proj * x / d11 for x, y in zip(b1, basis[1])]
    return b1, b2


def _plane_coords(r, basis):
    b1, b2 = basis
    d11 = sum(x * x for x in b1)
    d22 = sum(x * x for x in b2)
    u = sum(Fraction(x) * y for x, y in zip(r, b1)) / d11
    v = sum(Fraction(x) * y for x, y in zip(r, b2)) / d22
    return float(u) * math.sqrt(float(d11)), float(v) * math.sqrt(float(d22))
