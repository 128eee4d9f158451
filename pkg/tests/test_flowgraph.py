"""Framed graph structure: validation, routes, compatibility, framings."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from flowfan import families
from flowfan.flowgraph import (
    BLUE,
    RED,
    Edge,
    FramedGraph,
    NotAmple,
    Route,
    framing_from_exceptional_set,
)

X_ROUTES = [
    ("e1", "e4"),
    ("e1", "e5", "e6"),
    ("e1", "e5", "e7"),
    ("e2", "e4"),
    ("e2", "e5", "e6"),
    ("e2", "e5", "e7"),
    ("e3", "e6"),
    ("e3", "e7"),
]
X_EXCEPTIONAL = {2, 3, 6}

BUILTINS = [
    families.x_graph(),
    families.xx_graph(),
    families.blossomed_cycle(3),
    families.blossomed_cycle(4),
    families.h_cp(2, 2),
]

# two cyclic graphs admitting no cyclic ample framing: two bridged 2-cycles
# with a shared apex, and a 2-cycle whose exit edges share their head
LEFT_V = ("s1", "s2", "s3", "v1", "v2", "v3", "v4", "v5", "t4", "t5a", "t5b")
LEFT_E = (
    ("in1", "s1", "v1"),
    ("in2", "s2", "v2"),
    ("in3", "s3", "v3"),
    ("cl1", "v1", "v2"),
    ("cl2", "v2", "v1"),
    ("cr1", "v3", "v4"),
    ("cr2", "v4", "v3"),
    ("bot", "v2", "v4"),
    ("top1", "v1", "v5"),
    ("top3", "v3", "v5"),
    ("out4", "v4", "t4"),
    ("out5a", "v5", "t5a"),
    ("out5b", "v5", "t5b"),
)
RIGHT_V = ("s1", "s2", "v1", "v2", "v3", "t1", "t2")
RIGHT_E = (
    ("in1", "s1", "v1"),
    ("in2", "s2", "v2"),
    ("c1", "v1", "v2"),
    ("c2", "v2", "v1"),
    ("e13", "v1", "v3"),
    ("e23", "v2", "v3"),
    ("out1", "v3", "t1"),
    ("out2", "v3", "t2"),
)


def uncoloured(vertices, edge_data):
    return FramedGraph(vertices, tuple(Edge(i, t, h) for i, t, h in edge_data))


def recolour(fg, colours):
    return FramedGraph(
        fg.vertices,
        tuple(Edge(e.id, e.tail, e.head, c) for e, c in zip(fg.edges, colours)),
        fg.orders,
    )


def test_x_routes_canonical_order():
    fg = families.x_graph()
    assert [r.edges for r in fg.enumerate_routes()] == [tuple(r) for r in X_ROUTES]


def test_x_exceptional_routes():
    fg = families.x_graph()
    routes = fg.enumerate_routes()
    exc = {i for i, r in enumerate(routes) if fg.is_exceptional(r, routes)}
    assert exc == X_EXCEPTIONAL


def test_exceptional_means_compatible_with_all():
    fg = families.x_graph()
    routes = fg.enumerate_routes()
    for i, r in enumerate(routes):
        agrees = all(fg.compatible(r, s) for s in routes)
        assert agrees == (i in X_EXCEPTIONAL)


@pytest.mark.parametrize("fg", BUILTINS, ids=lambda g: f"{len(g.edges)}edges")
def test_compatibility_symmetric(fg):
    routes = fg.enumerate_routes()
    for r, s in itertools.combinations(routes, 2):
        assert fg.compatible(r, s) == fg.compatible(s, r)


@pytest.mark.parametrize("fg", BUILTINS, ids=lambda g: f"{len(g.edges)}edges")
def test_compatibility_flip_invariant(fg):
    """Swapping red and blue everywhere leaves compatibility unchanged."""
    flip = {RED: BLUE, BLUE: RED, None: None}
    flipped = recolour(fg, [flip[e.colour] for e in fg.edges])
    routes = fg.enumerate_routes()
    flipped_routes = flipped.enumerate_routes()
    assert [r.edges for r in routes] == [r.edges for r in flipped_routes]
    for r, s in itertools.combinations(routes, 2):
        assert fg.compatible(r, s) == flipped.compatible(r, s)


@pytest.mark.parametrize("fg", BUILTINS, ids=lambda g: f"{len(g.edges)}edges")
def test_good_routes_avoid_full_cycles(fg):
    cycles = [set(c.edges) for c in fg.minimal_cycles]
    for r in fg.enumerate_routes():
        if r.is_cycle:
            continue
        counted = set(r.edges)
        assert not any(c <= counted for c in cycles)


@pytest.mark.parametrize("fg", BUILTINS, ids=lambda g: f"{len(g.edges)}edges")
def test_json_round_trip(fg):
    back = FramedGraph.from_json(fg.to_json())
    assert back.vertices == fg.vertices
    assert back.edges == fg.edges
    assert [r.edges for r in back.enumerate_routes()] == [
        r.edges for r in fg.enumerate_routes()
    ]


def test_validation_flags_idle_edge():
    fg = FramedGraph(
        ("s", "a", "t1", "t2"),
        (
            Edge("e1", "s", "a"),
            Edge("e2", "a", "t1"),
            Edge("e3", "a", "t2"),
        ),
    )
    report = fg.validate()
    assert "e1" in report.idle_edges
    assert not report.ok


def test_validation_accepts_builtins():
    for fg in BUILTINS:
        assert fg.validate().ok


def test_cycle_graph_minimal_cycles():
    for n in (3, 4, 5):
        fg = families.blossomed_cycle(n)
        cycles = fg.minimal_cycles
        assert len(cycles) == 1
        assert len(cycles[0].edges) == n


def test_hcp_minimal_cycles_count():
    for c, p in [(1, 2), (2, 2), (3, 2), (2, 3)]:
        assert len(families.h_cp(c, p).minimal_cycles) == c


def test_route_enumeration_needs_ample_framing():
    # colour the 3-cycle so the cycle is bichromatic: enumeration must refuse
    fg = families.blossomed_cycle(3)
    cycle_edges = set(fg.minimal_cycles[0].edges)
    colours = []
    flipped_one = False
    for e in fg.edges:
        c = e.colour
        if e.id in cycle_edges and not flipped_one:
            c = BLUE if c == RED else RED
            flipped_one = True
        colours.append(c)
    bad = recolour(fg, colours)
    assert not bad.is_cyclic_ample()
    with pytest.raises(NotAmple):
        bad.enumerate_routes()


def _admits_cyclic_ample(vertices, edge_data):
    for colours in itertools.product((RED, BLUE), repeat=len(edge_data)):
        fg = FramedGraph(
            vertices,
            tuple(Edge(i, t, h, c) for (i, t, h), c in zip(edge_data, colours)),
        )
        if fg.is_cyclic_ample():
            return True
    return False


def test_no_cyclic_ample_framing_exists():
    """Both counterexample graphs are full and valid, yet no red/blue
    colouring of either is cyclic ample."""
    for vertices, edge_data in [(LEFT_V, LEFT_E), (RIGHT_V, RIGHT_E)]:
        fg = uncoloured(vertices, edge_data)
        assert fg.validate().ok
        assert fg.is_full()
        assert not _admits_cyclic_ample(vertices, edge_data)


@pytest.mark.parametrize("c,p", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_framing_recovered_from_exceptional_set(c, p):
    fg = families.h_cp(c, p)
    routes = fg.enumerate_routes()
    exc = [r for r in routes if fg.is_exceptional(r, routes)]
    recovered = framing_from_exceptional_set(fg, exc)
    assert isinstance(recovered, FramedGraph)
    assert {e.id: e.colour for e in recovered.edges} == {
        e.id: e.colour for e in fg.edges
    }


def test_framing_recovery_rejects_partial_cover():
    fg = families.h_cp(2, 2)
    routes = fg.enumerate_routes()
    exc = [r for r in routes if fg.is_exceptional(r, routes)]
    result = framing_from_exceptional_set(fg, exc[:-1])
    assert not isinstance(result, FramedGraph)


@given(st.integers(min_value=3, max_value=6))
@settings(max_examples=10, deadline=None)
def test_blossomed_cycle_route_census(n):
    fg = families.blossomed_cycle(n)
    routes = fg.enumerate_routes()
    non_cycle = [r for r in routes if not r.is_cycle]
    # one route per ordered pair of entry/exit blossoms, plus the cycle
    assert len(non_cycle) == n * n
    assert sum(r.is_cycle for r in routes) == 1
    exceptional = [r for r in routes if fg.is_exceptional(r, routes)]
    assert len(exceptional) == n + 1


def test_route_is_cycle_flag():
    fg = families.blossomed_cycle(3)
    for r in fg.enumerate_routes():
        starts = fg.edge_map[r.edges[0]].tail
        ends = fg.edge_map[r.edges[-1]].head
        if r.is_cycle:
            assert starts == ends
        else:
            assert starts in fg.sources and ends in fg.sinks
