"""Quivers from framed graphs and the string calculus on top of them:
g-vectors, the flow-to-g linear map, module labels for routes, and kissing.

A string is a tuple of letters (arrow id, +1 or -1), or the lazy path
("lazy", vertex).  Exponent +1 traverses the arrow forward, -1 backward.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .flowgraph import RED, FramedGraph, NotMaximal, Route


class NotFull(Exception):
    """The graph has an internal vertex without two inputs and two outputs."""


class ExceptionalRoute(Exception):
    """The operation is only defined for non-exceptional routes."""


LAZY = "lazy"


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # (id, source, target)
    relations: frozenset  # pairs (first arrow id, second arrow id)
    blossoms: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        object.__setattr__(
            self, "relations", frozenset(tuple(r) for r in self.relations)
        )
        object.__setattr__(self, "blossoms", frozenset(self.blossoms))

    @property
    def arrow_map(self) -> dict:
        return {a[0]: a for a in self.arrows}

    def arrows_from(self, v) -> list:
        return [a for a in self.arrows if a[1] == v]

    def arrows_to(self, v) -> list:
        return [a for a in self.arrows if a[2] == v]

    def to_jsonable(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"id": a[0], "s": a[1], "t": a[2]} for a in self.arrows],
            "relations": sorted([x, y] for x, y in self.relations),
        }


def quiver_from_graph(fg: FramedGraph):
    """Blossoming and restricted quivers of a full coloured graph: arrows are
    the edges with blue ones reversed, relations the non-monochromatic
    composable length-2 arrow paths."""
    if not fg.has_colours:
        raise ValueError("quiver construction needs a colouring framing")
    if not fg.is_full():
        raise NotFull("every internal vertex must have two inputs and two outputs")

    def arrow(e):
        return (e.id, e.head, e.tail) if e.colour != RED else (e.id, e.tail, e.head)

    arrows = tuple(arrow(e) for e in fg.edges)
    colour = {e.id: e.colour for e in fg.edges}
    relations = frozenset(
        (a[0], b[0])
        for a in arrows
        for b in arrows
        if a[2] == b[1] and a[0] != b[0] and colour[a[0]] != colour[b[0]]
    )
    internal = set(fg.internal)
    blossoming = Quiver(fg.vertices, arrows, relations, frozenset(fg.vertices) - internal)
    kept = tuple(a for a in arrows if a[1] in internal and a[2] in internal)
    kept_ids = {a[0] for a in kept}
    restricted = Quiver(
        tuple(v for v in fg.vertices if v in internal),
        kept,
        frozenset(r for r in relations if r[0] in kept_ids and r[1] in kept_ids),
    )
    return blossoming, restricted


def is_locally_gentle(q: Quiver) -> bool:
    """The four at-most-one conditions on continuations and precedings of
    every arrow, with and without a relation."""
    for a in q.arrows:
        nxt = [b for b in q.arrows if b[1] == a[2]]
        prv = [b for b in q.arrows if b[2] == a[1]]
        if len([b for b in nxt if (a[0], b[0]) in q.relations]) > 1:
            return False
        if len([b for b in nxt if (a[0], b[0]) not in q.relations]) > 1:
            return False
        if len([b for b in prv if (b[0], a[0]) in q.relations]) > 1:
            return False
        if len([b for b in prv if (b[0], a[0]) not in q.relations]) > 1:
            return False
    return True


def is_gentle(q: Quiver) -> bool:
    """Locally gentle with no relation-free oriented cycle of arrows."""
    if not is_locally_gentle(q):
        return False
    free = {
        a[0]: [b[0] for b in q.arrows if b[1] == a[2] and (a[0], b[0]) not in q.relations]
        for a in q.arrows
    }
    seen = {}  # arrow id -> 0 active, 1 done

    def dfs(x):
        seen[x] = 0
        for y in free[x]:
            if seen.get(y) == 0 or (y not in seen and dfs(y)):
                return True
        seen[x] = 1
        return False

    return not any(dfs(a[0]) for a in q.arrows if a[0] not in seen)


# ----------------------------------------------------------------------
# strings


def is_lazy(word) -> bool:
    return len(word) == 2 and word[0] == LAZY


def reverse_word(word):
    if is_lazy(word):
        return word
    return tuple((aid, -exp) for aid, exp in reversed(word))


def canonical_word(word):
    return word if is_lazy(word) else min(word, reverse_word(word))


def string_vertices(q: Quiver, word) -> tuple:
    """The k+1 visited vertices; asserts the letters chain into a walk."""
    if is_lazy(word):
        return (word[1],)
    amap = q.arrow_map
    out = []
    for aid, exp in word:
        _, s, t = amap[aid]
        start, end = (s, t) if exp == 1 else (t, s)
        if not out:
            out.append(start)
        assert out[-1] == start, "letters do not chain"
        out.append(end)
    return tuple(out)


def _pair_ok(q: Quiver, first, second) -> bool:
    """Can letter `second` follow letter `first` in a string?"""
    (a, ea), (b, eb) = first, second
    if a == b and ea == -eb:
        return False
    if ea == 1 and eb == 1:
        return (a, b) not in q.relations
    if ea == -1 and eb == -1:
        return (b, a) not in q.relations
    return True


def is_string(q: Quiver, word) -> bool:
    if is_lazy(word):
        return word[1] in q.vertices
    try:
        string_vertices(q, word)
    except AssertionError:
        return False
    return all(_pair_ok(q, word[i], word[i + 1]) for i in range(len(word) - 1))


def _extensions(q: Quiver, word, at_end: bool):
    verts = string_vertices(q, word)
    v = verts[-1] if at_end else verts[0]
    candidates = [(a[0], 1) for a in (q.arrows_from(v) if at_end else q.arrows_to(v))]
    candidates += [(a[0], -1) for a in (q.arrows_to(v) if at_end else q.arrows_from(v))]
    for letter in candidates:
        if is_lazy(word):
            yield letter
        elif at_end and _pair_ok(q, word[-1], letter):
            yield letter
        elif not at_end and _pair_ok(q, letter, word[0]):
            yield letter


def is_maximal_string(q: Quiver, word) -> bool:
    if not is_string(q, word):
        return False
    return not any(True for _ in _extensions(q, word, True)) and not any(
        True for _ in _extensions(q, word, False)
    )


def peaks_and_valleys(q: Quiver, word):
    """Vertex positions that are peaks / valleys of the string (multiset
    semantics: a vertex visited twice can appear twice)."""
    verts = string_vertices(q, word)
    k = 0 if is_lazy(word) else len(word)
    peaks, valleys = [], []
    for i, v in enumerate(verts):
        before_inv = i == 0 or word[i - 1][1] == -1
        before_dir = i == 0 or word[i - 1][1] == 1
        after_dir = i == k or word[i][1] == 1
        after_inv = i == k or word[i][1] == -1
        if before_inv and after_dir:
            peaks.append(v)
        if before_dir and after_inv:
            valleys.append(v)
    return peaks, valleys


def route_to_string(fg: FramedGraph, route: Route) -> tuple:
    """Letters of the route in the blossoming quiver: exponent +1 on red
    edges, -1 on blue ones."""
    if route.is_cycle:
        raise ExceptionalRoute("cycle routes have no finite string")
    return tuple(
        (eid, 1 if fg.edge_map[eid].colour == RED else -1) for eid in route.edges
    )


def g_vector(q: Quiver, word) -> dict:
    """Sum of peaks minus valleys over non-blossom vertices, for a maximal
    string of the blossoming quiver."""
    if not is_maximal_string(q, word):
        raise NotMaximal("g-vectors are defined for maximal strings")
    peaks, valleys = peaks_and_valleys(q, word)
    g = {v: 0 for v in q.vertices if v not in q.blossoms}
    for v in peaks:
        if v in g:
            g[v] += 1
    for v in valleys:
        if v in g:
            g[v] -= 1
    return g


def phi_map(fg: FramedGraph, values) -> dict:
    """The linear map taking e_e to half the tail-minus-head difference on
    red edges (the opposite on blue), projected to internal coordinates."""
    out = {v: Fraction(0) for v in fg.internal}
    for e in fg.edges:
        x = Fraction(values.get(e.id, 0))
        sign = 1 if e.colour == RED else -1
        if e.tail in out:
            out[e.tail] += sign * x / 2
        if e.head in out:
            out[e.head] -= sign * x / 2
    return out


# ----------------------------------------------------------------------
# module labels


@dataclass(frozen=True)
class Projective:
    vertex: object


@dataclass(frozen=True)
class ShiftedProjective:
    vertex: object


@dataclass(frozen=True)
class StringModule:
    word: tuple


def projective_string(q: Quiver, v) -> tuple:
    """The string of the projective at v in a locally gentle quiver: the at
    most two maximal relation-free direct paths out of v, glued at the peak."""

    def path(first):
        walk = [first]
        while True:
            nxt = [
                b
                for b in q.arrows_from(walk[-1][2])
                if (walk[-1][0], b[0]) not in q.relations
            ]
            if not nxt:
                return walk
            assert len(nxt) == 1
            walk.append(nxt[0])

    starts = sorted(q.arrows_from(v))
    assert len(starts) <= 2
    if not starts:
        return (LAZY, v)
    left = path(starts[0])
    right = path(starts[1]) if len(starts) == 2 else []
    word = tuple((a[0], -1) for a in reversed(left)) + tuple((a[0], 1) for a in right)
    return word


def gamma(fg: FramedGraph, route: Route):
    """Module label of a non-exceptional good route of an amply framed DAG:
    an all-red prefix followed by an all-blue suffix gives the shifted
    projective at the switch vertex; otherwise the string module on the word
    strictly inside the red window, upgraded to a projective label when the
    word coincides with a projective string."""
    if not fg.is_acyclic:
        raise ValueError("module labels are defined for acyclic graphs")
    if route.is_cycle or fg.is_exceptional(route):
        raise ExceptionalRoute("exceptional routes carry no module")
    _, restricted = quiver_from_graph(fg)
    colours = [fg.edge_map[eid].colour for eid in route.edges]
    k = len(colours)
    lead = 0
    while lead < k and colours[lead] == RED:
        lead += 1
    if all(c != RED for c in colours[lead:]):
        # red^a blue^(k-a) with both blocks nonempty
        switch = fg.edge_map[route.edges[lead - 1]].head
        return ShiftedProjective(switch)
    last_red = max(i for i, c in enumerate(colours) if c == RED) + 1  # 1-based
    inner = route.edges[lead + 1 : last_red - 1]
    if inner:
        word = tuple(
            (eid, 1 if fg.edge_map[eid].colour == RED else -1) for eid in inner
        )
    else:
        word = (LAZY, fg.edge_map[route.edges[lead]].head)
    for v in sorted(set(string_vertices(restricted, word))):
        if canonical_word(word) == canonical_word(projective_string(restricted, v)):
            return Projective(v)
    return StringModule(word)


# ----------------------------------------------------------------------
# kissing


def _substrings(word, on_top: bool):
    """Substrings occurring on top (or at bottom) of a string, as
    (canonical word, vertex index range) pairs; includes lazy positions."""
    k = 0 if is_lazy(word) else len(word)
    out = []
    for t in range(k + 1):
        before = t == 0 or word[t - 1][1] == (-1 if on_top else 1)
        after = t == k or word[t][1] == (1 if on_top else -1)
        if before and after:
            out.append((None, t, t))
    for i in range(1, k + 1):
        for j in range(i, k + 1):
            before = i == 1 or word[i - 2][1] == (-1 if on_top else 1)
            after = j == k or word[j][1] == (1 if on_top else -1)
            if before and after:
                out.append((word[i - 1 : j], i - 1, j))
    return out


def _marked(q: Quiver, word, on_top: bool) -> set:
    """Top0 / Bot0: the substrings all of whose vertices avoid blossoms,
    canonicalized up to reversal."""
    verts = string_vertices(q, word)
    out = set()
    for sub, lo, hi in _substrings(word, on_top):
        if any(v in q.blossoms for v in verts[lo : hi + 1]):
            continue
        if sub is None:
            out.add((LAZY, verts[lo]))
        else:
            out.add(canonical_word(sub))
    return out


def kisses(q: Quiver, rho, mu) -> bool:
    return bool(_marked(q, rho, True) & _marked(q, mu, False))


def kissing(q: Quiver, sigma, tau) -> bool:
    """Symmetric closure: sigma kisses tau or tau kisses sigma."""
    return kisses(q, sigma, tau) or kisses(q, tau, sigma)
