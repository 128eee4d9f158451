"""Integer flows: volume flows, generating function counts, the flow-clique
correspondence."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from flowfan import dkk, families, intflow

# the five volume integer flows of the X graph (zero entries omitted), keyed
# by the non-exceptional pair of the clique that maps to each under phi
X_FLOW_BY_PAIR = {
    (0, 1): {"e4": 1, "e6": 1},
    (1, 4): {"e5": 1, "e6": 2},
    (4, 5): {"e5": 1, "e6": 1, "e7": 1},
    (5, 7): {"e5": 1, "e7": 2},
    (0, 7): {"e4": 1, "e7": 1},
}
X_EXCEPTIONAL = {2, 3, 6}

HCP_CASES = [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2), (4, 2)]


def _support(flow) -> dict:
    return {e: v for e, v in flow.items() if v}


def test_x_volume_flows_match_figure():
    flows = intflow.volume_flows(families.x_graph())
    got = {frozenset(_support(f).items()) for f in flows}
    want = {frozenset(f.items()) for f in X_FLOW_BY_PAIR.values()}
    assert got == want


def test_x_phi_images_by_clique():
    fg = families.x_graph()
    routes = fg.enumerate_routes()
    for clique in dkk.maximal_cliques(fg, routes):
        pair = tuple(sorted(set(clique) - X_EXCEPTIONAL))
        image = _support(intflow.phi(fg, clique, routes))
        assert image == X_FLOW_BY_PAIR[pair]


@pytest.mark.parametrize(
    "fg",
    [
        families.x_graph(),
        families.xx_graph(),
        families.blossomed_cycle(3),
        families.blossomed_cycle(4),
        families.h_cp(2, 2),
    ],
    ids=["x", "xx", "cycle3", "cycle4", "hcp22"],
)
def test_phi_is_bijective(fg):
    assert intflow.phi_is_bijective(fg)


def test_xx_three_counts_agree():
    fg = families.xx_graph()
    n_cliques = len(dkk.maximal_cliques(fg))
    n_flows = len(intflow.volume_flows(fg))
    gf = intflow.count_flows_gf(fg, intflow.volume_spec(fg))
    assert n_cliques == n_flows == gf == 42


@pytest.mark.parametrize("c,p", HCP_CASES)
def test_hcp_volume_flow_counts(c, p):
    fg = families.h_cp(c, p)
    flows = intflow.volume_flows(fg)
    expected = oracles.multinomial([p - 1] * (c + 1))
    assert len(flows) == expected
    assert len(flows) == families.multinomial_volume(c, p)


def test_hcp_special_cases():
    from math import comb, factorial

    for p in (2, 3, 4):
        assert families.multinomial_volume(1, p) == comb(2 * p - 2, p - 1)
    for c in (1, 2, 3, 4):
        assert families.multinomial_volume(c, 2) == factorial(c + 1)


def test_cyclic_volume_flows_are_valid():
    fg = families.blossomed_cycle(3)
    flows = intflow.volume_flows(fg)
    for f in flows:
        values = dict(f.values)
        assert intflow.is_cyclic_volume_flow(fg, values, f.zero_edges)
        assert all(values[e] == 0 for e in f.zero_edges)


def test_volume_equals_clique_count():
    for fg in (families.x_graph(), families.h_cp(2, 2), families.blossomed_cycle(4)):
        assert intflow.flow_complex_volume(fg) == len(dkk.maximal_cliques(fg))


def test_gf_count_matches_enumeration_on_x():
    fg = families.x_graph()
    spec = intflow.volume_spec(fg)
    assert intflow.count_flows_gf(fg, spec) == len(
        intflow.enumerate_integer_flows(fg, spec)
    )


@given(st.tuples(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=3)))
@settings(max_examples=20, deadline=None)
def test_gf_matches_enumeration_custom_netflow(netflows):
    """Generating-function coefficient equals explicit enumeration for
    arbitrary small internal netflow targets on the X graph."""
    fg = families.x_graph()
    spec = intflow.volume_spec(fg)
    base = spec.as_dict() if hasattr(spec, "as_dict") else dict(spec)
    internal = list(fg.internal)
    custom = dict(base)
    for v, d in zip(internal, netflows):
        custom[v] = d
    flows = intflow.enumerate_integer_flows(fg, custom)
    assert intflow.count_flows_gf(fg, custom) == len(flows)


def test_route_indicator_sums_are_flows():
    fg = families.x_graph()
    routes = fg.enumerate_routes()
    for combo in itertools.combinations(range(len(routes)), 2):
        flow = {}
        for i in combo:
            for e in routes[i].edges:
                flow[e] = flow.get(e, 0) + 1
        for v in fg.internal:
            assert intflow.netflow(fg, flow, v) == 0
        total_out = sum(intflow.netflow(fg, flow, v) for v in fg.sources)
        assert total_out == len(combo)


def test_enumerated_flows_meet_spec():
    fg = families.x_graph()
    spec = intflow.volume_spec(fg)
    target = spec.as_dict() if hasattr(spec, "as_dict") else dict(spec)
    for flow in intflow.enumerate_integer_flows(fg, spec):
        for v, want in target.items():
            assert intflow.netflow(fg, flow, v) == want
        assert all(x >= 0 for x in flow.values())
