"""Arc diagrams of bipartitions, interference, and the mutoperhedron faces."""

import itertools
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from flowfan import arcfaces, families
from flowfan.arcfaces import (
    all_bipartitions,
    arc_diagram,
    admissible,
    bipartition_arc_roundtrip,
    bipartition_of_route,
    cross,
    diagram_bipartition,
    f_vector,
    faces_by_codim,
    facet_iso_check,
    format_bipartition,
    h_vector,
    interfere,
    is_consistent,
    multiset_bijections_check,
    multiset_of,
    nested,
    parse_bipartition,
    pentagon_certificate,
    rank,
    route_of_bipartition,
    routes_reconstruction,
    stacked,
    stacked_reconstruction,
)

# a pair of length-5 diagrams that interfere without crossing, and the
# same pattern one gap longer (common subpath of length 0 resp. 1)
TEAL_0 = ((0, 2, 1), (2, 3, -1), (3, 4, 1))
ORANGE_0 = ((0, 1, -1), (1, 2, 1), (2, 4, -1))
TEAL_1 = ((0, 2, 1), (2, 3, -1), (3, 4, 1), (4, 5, -1))
ORANGE_1 = ((0, 1, -1), (1, 2, 1), (2, 3, -1), (3, 5, 1))

# f-vectors (f_0, ..., f_{c-1}) of the small mutoperhedra
F_M3 = (24, 36, 14)
F_M4 = (120, 240, 150, 30)
H_M3 = (1, 11, 11, 1)

PENTAGON_NEIGHBOURS = {"123|4", "124|3", "1|234", "24|13", "2|134"}

# a consistent multiset whose two reconstructions disagree
STACKED_TRIPLE = ("2|134", "12|34", "124|3")
ROUTED_TRIPLE = ("12|34", "12|34", "24|13")


def diagrams_of(strings, c=3):
    return [arc_diagram(c, parse_bipartition(s)) for s in strings]


def test_bipartition_count():
    for c in range(1, 7):
        assert len(all_bipartitions(c)) == 2 ** (c + 1) - 2


def test_parse_format_roundtrip():
    for c in range(1, 6):
        for part in all_bipartitions(c):
            assert parse_bipartition(format_bipartition(part)) == part


def test_arc_diagram_roundtrip():
    for c in range(1, 7):
        for part in all_bipartitions(c):
            bipartition_arc_roundtrip(c, part)


def test_arc_diagram_example():
    # 12|34 over the first two gaps, under the last two
    assert arc_diagram(3, parse_bipartition("12|34")) == ((0, 2, 1), (2, 4, -1))


def test_cross_examples():
    assert cross((0, 2, 1), (1, 3, 1))
    assert not cross((0, 2, 1), (1, 3, -1))  # opposite signs never cross
    assert cross((0, 2, 1), (2, 4, 1))  # sharing the middle endpoint counts
    assert not cross((0, 2, 1), (2, 4, -1))
    assert not cross((0, 1, 1), (2, 4, 1))


def test_interference_examples():
    assert interfere(TEAL_0, ORANGE_0)
    assert interfere(ORANGE_0, TEAL_0)
    assert interfere(TEAL_1, ORANGE_1)
    assert interfere(ORANGE_1, TEAL_1)
    assert not any(cross(x, y) for x in TEAL_0 for y in ORANGE_0)
    assert not any(cross(x, y) for x in TEAL_1 for y in ORANGE_1)


def test_no_self_interference():
    for c in range(1, 6):
        for part in all_bipartitions(c):
            d = arc_diagram(c, part)
            assert not interfere(d, d)


def test_stacked_iff_nested():
    """Two diagrams stack exactly when their over-parts are nested."""
    for c in range(1, 6):
        parts = all_bipartitions(c)
        diagrams = {p: arc_diagram(c, p) for p in parts}
        for p1, p2 in itertools.combinations(parts, 2):
            assert stacked(diagrams[p1], diagrams[p2]) == nested(p1, p2)


def test_neither_admissibility_contains_the_other():
    """Stacked pairs may interfere and noninterfering pairs may be unnested;
    with equal face counts this is what keeps the two polytopes distinct."""
    c = 3
    parts = all_bipartitions(c)
    diagrams = {p: arc_diagram(c, p) for p in parts}
    stacked_not_adm = adm_not_stacked = 0
    for p1, p2 in itertools.combinations(parts, 2):
        s = stacked(diagrams[p1], diagrams[p2])
        m = admissible(diagrams[p1], diagrams[p2])
        stacked_not_adm += s and not m
        adm_not_stacked += m and not s
    assert stacked_not_adm > 0
    assert adm_not_stacked > 0


def test_small_face_vectors():
    assert f_vector(3, "noninterfering") == F_M3
    assert f_vector(3, "stacked") == F_M3
    assert f_vector(4, "noninterfering") == F_M4
    assert h_vector(3) == H_M3


@pytest.mark.parametrize("c", range(1, 7))
def test_face_counts_match_permutohedron(c):
    """Both modes count the faces of the (c+1)-permutohedron, by codimension
    (k+1)! * S(c+1, k+1) of them in codimension c - k."""
    want = [
        oracles.permutohedron_codim_faces(c + 1, k) for k in range(1, c + 1)
    ]
    assert faces_by_codim(c, "stacked") == want
    assert faces_by_codim(c, "noninterfering") == want


@pytest.mark.parametrize("c", range(1, 7))
def test_h_vector_is_eulerian(c):
    assert h_vector(c) == tuple(oracles.eulerian(c + 1, k) for k in range(c + 1))


def test_h_from_f_oracle_agrees():
    for c in range(2, 6):
        assert h_vector(c) == oracles.h_from_f(f_vector(c))


def test_bad_mode_rejected():
    with pytest.raises(ValueError):
        faces_by_codim(3, "interleaved")
    with pytest.raises(ValueError):
        faces_by_codim(arcfaces.FACE_CAP + 1, "stacked")


def test_pentagon_certificate():
    cert = pentagon_certificate()
    assert format_bipartition(cert.facet) == "12|34"
    assert {format_bipartition(p) for p in cert.neighbours} == PENTAGON_NEIGHBOURS
    assert len(cert.neighbours) == 5
    assert cert.neighbours_form_cycle
    assert Counter(cert.permutohedron_face_sizes) == {4: 6, 6: 8}
    assert not cert.isomorphic


@pytest.mark.parametrize("c", [3, 4])
def test_facet_recursion(c):
    assert facet_iso_check(c)


def test_multiset_rank_and_consistency():
    coll = diagrams_of(STACKED_TRIPLE)
    ms = multiset_of(coll)
    assert rank(ms) == 3
    assert is_consistent(3, ms)
    # crossing arcs make a multiset inconsistent
    assert not is_consistent(3, Counter({(0, 2, 1): 1, (1, 3, 1): 1}))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_multiset_bijections(k):
    assert multiset_bijections_check(3, k)


def test_multiset_bijections_cap():
    with pytest.raises(ValueError):
        multiset_bijections_check(arcfaces.CHECK_CAP + 1, 2)


def test_reconstructions_differ():
    """The same consistent multiset is realised by a stacked collection and
    by a different noninterfering one."""
    coll = diagrams_of(STACKED_TRIPLE)
    for d1, d2 in itertools.combinations(coll, 2):
        assert stacked(d1, d2)
    ms = multiset_of(coll)

    back = stacked_reconstruction(3, ms)
    assert sorted(format_bipartition(diagram_bipartition(d)) for d in back) == sorted(
        STACKED_TRIPLE
    )

    routed = routes_reconstruction(3, ms)
    got = sorted(format_bipartition(diagram_bipartition(d)) for d in routed)
    assert got == sorted(ROUTED_TRIPLE)
    assert multiset_of(routed) == ms
    routed_diagrams = diagrams_of(ROUTED_TRIPLE)
    for d1, d2 in itertools.combinations(routed_diagrams, 2):
        assert admissible(d1, d2)


def test_inconsistent_multiset_rejected():
    ms = Counter({(0, 2, 1): 1})  # dead end at gap 2
    with pytest.raises(ValueError):
        stacked_reconstruction(3, ms)


@pytest.mark.parametrize("c", [2, 3, 4])
def test_routes_match_bipartitions(c):
    """Good non-cycle routes of the two-column tower are exactly the routes
    of bipartitions of [c+1]."""
    fg = families.h_cp(c, 2)
    routes = fg.enumerate_routes()
    non_exc = [
        r for r in routes if not r.is_cycle and not fg.is_exceptional(r, routes)
    ]
    assert len(non_exc) == 2 ** (c + 1) - 2
    expected = {route_of_bipartition(c, p) for p in all_bipartitions(c)}
    assert set(non_exc) == expected
    for part in all_bipartitions(c):
        a, b = part
        got = bipartition_of_route(route_of_bipartition(c, part))
        assert got == (frozenset(a), frozenset(b))


@given(st.integers(min_value=1, max_value=5))
@settings(max_examples=20, deadline=None)
def test_diagram_arcs_alternate(c):
    for part in all_bipartitions(c):
        diagram = arc_diagram(c, part)
        signs = [s for _, _, s in diagram]
        assert all(x != y for x, y in zip(signs, signs[1:]))
        assert diagram[0][0] == 0 and diagram[-1][1] == c + 1
