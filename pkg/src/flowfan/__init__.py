"""Triangulations of flow cones of framed directed graphs.

Framed graphs, their routes and cliques of pairwise-compatible routes, the
induced unimodular triangulations of the flow cone, exact flow decomposition,
g-vectors of the attached (locally) gentle quivers, lattice polytopes whose
normal fans realise the reduced triangulation fans, closed-form volume counts
for several graph families, and the arc-diagram face model behind them.
"""

from . import arcfaces, dkk, families, flowgraph, intflow, polytopekit, quiverlink
from .dkk import decompose_flow, maximal_cliques, reduced_fan, verify_triangulation
from .families import blossomed_cycle, h_cp, path_of_full_graphs, x_graph, xx_graph
from .flowgraph import BLUE, RED, Edge, FramedGraph, Route
from .intflow import count_flows_gf, enumerate_integer_flows, flow_complex_volume, volume_flows

__all__ = [
    "arcfaces",
    "dkk",
    "families",
    "flowgraph",
    "intflow",
    "polytopekit",
    "quiverlink",
    "decompose_flow",
    "maximal_cliques",
    "reduced_fan",
    "verify_triangulation",
    "blossomed_cycle",
    "h_cp",
    "path_of_full_graphs",
    "x_graph",
    "xx_graph",
    "BLUE",
    "RED",
    "Edge",
    "FramedGraph",
    "Route",
    "count_flows_gf",
    "enumerate_integer_flows",
    "flow_complex_volume",
    "volume_flows",
]
