import logging
from itertools import product
from typing import Dict, Optional

import numpy

from core.errors import InputError
from core.multigraph import (
    AttributeKind,
    EdgeClass,
    LabeledGraph,
    classify_edge,
    components_nullity,
    contract,
    delete,
    spanning_subgraphs,
)
from core.polyring import (
    DEFAULT_REGISTRY,
    RESERVED_NAMES,
    MultiPoly,
    VarRegistry,
    exact_div,
    substitute,
)
from utils.limiter import limiter

logger = logging.getLogger(__name__)


def register_labels(graph: LabeledGraph, registry: Optional[VarRegistry] = None) -> Dict[str, MultiPoly]:
    """
    Register every edge label of a labeled graph as a variable

    Args:
        graph: Labeled graph
        registry: Registry receiving the labels

    Returns:
        Map from edge id to its label variable
    """
    if graph.edges and graph.kind is not AttributeKind.LABEL:
        raise InputError("chain/sheaf polynomials need a labeled graph", field="edges")
    registry = registry if registry is not None else DEFAULT_REGISTRY
    labels: Dict[str, MultiPoly] = {}
    for position, edge in enumerate(graph.edges):
        if edge.attr in RESERVED_NAMES:
            raise InputError(f"label {edge.attr!r} collides with a reserved variable",
                             field=f"edges[{position}].label")
        labels[edge.id] = MultiPoly.var(edge.attr, registry)
    return labels


def ch_poly(graph: LabeledGraph, registry: Optional[VarRegistry] = None) -> MultiPoly:
    """
    Chain polynomial Ch[G]

    Ch[E_n] = 1; a loop a gives (a - w)Ch[G-a]; any other edge gives
    (a - 1)Ch[G-a] + Ch[G/a].
    """
    registry = registry if registry is not None else DEFAULT_REGISTRY
    labels = register_labels(graph, registry)
    return _ch_step(graph, labels, MultiPoly.var("w", registry))


def _ch_step(graph: LabeledGraph, labels: Dict[str, MultiPoly], w: MultiPoly) -> MultiPoly:
    if not graph.edges:
        return MultiPoly.one(w.registry)
    eid = graph.edge_ids()[0]
    a = labels[eid]
    if graph.edge(eid).is_loop:
        return (a - w) * _ch_step(delete(graph, eid), labels, w)
    return (a - 1) * _ch_step(delete(graph, eid), labels, w) + _ch_step(contract(graph, eid), labels, w)


def sh_poly(graph: LabeledGraph, registry: Optional[VarRegistry] = None) -> MultiPoly:
    """
    Sheaf polynomial Sh[G]

    Sh[E_n] = 1; a bridge a gives (a - w)Sh[G/a]; any other edge gives
    (a - 1)Sh[G/a] + Sh[G-a], where contracting a loop deletes it.
    """
    registry = registry if registry is not None else DEFAULT_REGISTRY
    labels = register_labels(graph, registry)
    return _sh_step(graph, labels, MultiPoly.var("w", registry))


def _sh_step(graph: LabeledGraph, labels: Dict[str, MultiPoly], w: MultiPoly) -> MultiPoly:
    if not graph.edges:
        return MultiPoly.one(w.registry)
    eid = graph.edge_ids()[0]
    a = labels[eid]
    if classify_edge(graph, eid) is EdgeClass.BRIDGE:
        return (a - w) * _sh_step(contract(graph, eid), labels, w)
    return (a - 1) * _sh_step(contract(graph, eid), labels, w) + _sh_step(delete(graph, eid), labels, w)


def flow_poly(graph: LabeledGraph, registry: Optional[VarRegistry] = None) -> MultiPoly:
    """Nowhere-zero flow polynomial F[G](q)"""
    registry = registry if registry is not None else DEFAULT_REGISTRY
    return _flow_step(graph, MultiPoly.var("q", registry))


def _flow_step(graph: LabeledGraph, q: MultiPoly) -> MultiPoly:
    if not graph.edges:
        return MultiPoly.one(q.registry)
    eid = graph.edge_ids()[0]
    kind = classify_edge(graph, eid)
    if kind is EdgeClass.BRIDGE:
        return MultiPoly.zero(q.registry)
    if kind is EdgeClass.LOOP:
        return (q - 1) * _flow_step(delete(graph, eid), q)
    return _flow_step(contract(graph, eid), q) - _flow_step(delete(graph, eid), q)


def chromatic_poly(graph: LabeledGraph, registry: Optional[VarRegistry] = None) -> MultiPoly:
    """Chromatic polynomial P(G, q)"""
    registry = registry if registry is not None else DEFAULT_REGISTRY
    return _chromatic_step(graph, MultiPoly.var("q", registry))


def _chromatic_step(graph: LabeledGraph, q: MultiPoly) -> MultiPoly:
    if not graph.edges:
        return q ** graph.vertices
    eid = graph.edge_ids()[0]
    if graph.edge(eid).is_loop:
        return MultiPoly.zero(q.registry)
    return _chromatic_step(delete(graph, eid), q) - _chromatic_step(contract(graph, eid), q)


def tension_poly(graph: LabeledGraph, registry: Optional[VarRegistry] = None) -> MultiPoly:
    """Nowhere-zero tension polynomial T[G](q) = P(G, q) / q^k(G)"""
    registry = registry if registry is not None else DEFAULT_REGISTRY
    k, _ = components_nullity(graph)
    return exact_div(chromatic_poly(graph, registry), MultiPoly.var("q", registry) ** k)


def _incidence(graph: LabeledGraph) -> numpy.ndarray:
    """Oriented incidence matrix, each edge running u -> v; loops are zero columns"""
    matrix = numpy.zeros((graph.vertices, len(graph.edges)), dtype=int)
    for column, edge in enumerate(graph.edges):
        if not edge.is_loop:
            matrix[edge.u, column] -= 1
            matrix[edge.v, column] += 1
    return matrix


def count_nowhere_zero_flows(graph: LabeledGraph, q: int) -> int:
    """Brute-force count of nowhere-zero Z_q flows"""
    if q < 1:
        raise InputError("q must be a positive integer", field="q")
    limiter.check(len(graph.edges), "flow enumeration")
    if not graph.edges:
        return 1
    values = list(product(range(1, q), repeat=len(graph.edges)))
    if not values:
        return 0
    assignments = numpy.array(values, dtype=int)
    boundary = (_incidence(graph) @ assignments.T) % q
    return int(numpy.count_nonzero(~boundary.any(axis=0)))


def count_nowhere_zero_tensions(graph: LabeledGraph, q: int) -> int:
    """Brute-force count of nowhere-zero Z_q tensions, each induced tension counted once"""
    if q < 1:
        raise InputError("q must be a positive integer", field="q")
    limiter.check(graph.vertices, "tension enumeration", unit="vertices")
    if not graph.edges:
        return 1
    potentials = numpy.array(list(product(range(q), repeat=graph.vertices)), dtype=int)
    tensions = (potentials @ _incidence(graph)) % q
    nowhere_zero = tensions[tensions.all(axis=1)]
    return len({tuple(row) for row in nowhere_zero.tolist()})


def _subset_sum(graph: LabeledGraph, registry: VarRegistry, contract_subset: bool,
                cap: Optional[int]) -> MultiPoly:
    labels = register_labels(graph, registry)
    w = MultiPoly.var("w", registry)
    at_one_minus_w = {"q": 1 - w}
    total = MultiPoly.zero(registry)
    for report in spanning_subgraphs(graph, cap):
        minor = graph
        for eid in sorted(report.edges):
            minor = contract(minor, eid) if contract_subset else delete(minor, eid)
        base = tension_poly(minor, registry) if contract_subset else flow_poly(minor, registry)
        term = substitute(base, at_one_minus_w)
        for eid in report.edges:
            term = term * labels[eid]
        total = total + term
    return total


def ch_from_definition(graph: LabeledGraph, registry: Optional[VarRegistry] = None,
                       cap: Optional[int] = None) -> MultiPoly:
    """Ch[G] as the sum over Y of F[G-Y](1-w) times the product of labels in Y"""
    registry = registry if registry is not None else DEFAULT_REGISTRY
    return _subset_sum(graph, registry, contract_subset=False, cap=cap)


def sh_from_definition(graph: LabeledGraph, registry: Optional[VarRegistry] = None,
                       cap: Optional[int] = None) -> MultiPoly:
    """Sh[G] as the sum over Y of T[G/Y](1-w) times the product of labels in Y"""
    registry = registry if registry is not None else DEFAULT_REGISTRY
    return _subset_sum(graph, registry, contract_subset=True, cap=cap)
