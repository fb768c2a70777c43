import logging
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple

from core.errors import InputError, UnknownColorError, VerificationError
from core.multigraph import (
    AttributeKind,
    EdgeClass,
    LabeledGraph,
    classify_edge,
    components_nullity,
    contract,
    delete,
    disjoint_union,
    one_point_union,
    spanning_forests_with_activities,
    spanning_subgraphs,
)
from core.polyring import DEFAULT_REGISTRY, MultiPoly, VarRegistry, canonical_string, parse_poly

logger = logging.getLogger(__name__)

Weight = Tuple[MultiPoly, MultiPoly]


@dataclass(frozen=True)
class ColorWeights:
    """Color name -> (x, y) weight pair"""

    weights: Mapping[str, Weight]

    def __getitem__(self, color: str) -> Weight:
        try:
            return self.weights[color]
        except KeyError:
            raise UnknownColorError(f"color {color!r} has no weights", field="colors") from None

    def check_graph(self, graph: LabeledGraph):
        """Every color used by the graph must have an entry"""
        if graph.edges and graph.kind is not AttributeKind.COLOR:
            raise InputError("W-polynomial needs a colored graph", field="edges")
        for position, edge in enumerate(graph.edges):
            if edge.attr not in self.weights:
                raise UnknownColorError(f"color {edge.attr!r} has no weights",
                                        field=f"edges[{position}].color")

    @classmethod
    def symbolic(cls, colors: Sequence[str], registry: Optional[VarRegistry] = None) -> "ColorWeights":
        """Generic weights x_<color>, y_<color> as fresh variables"""
        return cls({
            color: (MultiPoly.var(f"x_{color}", registry), MultiPoly.var(f"y_{color}", registry))
            for color in colors
        })


@dataclass(frozen=True)
class WParams:
    t: MultiPoly
    z1: MultiPoly
    z2: MultiPoly

    @classmethod
    def symbolic(cls, registry: Optional[VarRegistry] = None) -> "WParams":
        return cls(MultiPoly.var("t", registry), MultiPoly.var("z1", registry),
                   MultiPoly.var("z2", registry))

    @classmethod
    def uniform(cls, value: MultiPoly) -> "WParams":
        """t = z1 = z2 = value"""
        return cls(value, value, value)


def color_weights_from_document(document: Dict[str, Any],
                                registry: Optional[VarRegistry] = None) -> ColorWeights:
    """
    Parse a ColorWeights JSON document

    Args:
        document: {"<color>": {"x": "<poly>", "y": "<poly>"}, ...}
        registry: Registry for the weight polynomials

    Returns:
        The parsed weights
    """
    registry = registry if registry is not None else DEFAULT_REGISTRY
    if not isinstance(document, dict) or not document:
        raise InputError("color weights must be a nonempty JSON object", field="colors")
    weights: Dict[str, Weight] = {}
    for color, entry in document.items():
        if not isinstance(entry, dict):
            raise InputError("weight entry must be an object", field=f"colors.{color}")
        pair = []
        for key in ("x", "y"):
            text = entry.get(key)
            if not isinstance(text, str):
                raise InputError(f"missing weight {key!r}", field=f"colors.{color}.{key}")
            try:
                pair.append(parse_poly(text, registry))
            except InputError as e:
                raise InputError(e.message, field=f"colors.{color}.{key}") from None
        weights[color] = (pair[0], pair[1])
    return ColorWeights(weights)


def _empty_value(graph: LabeledGraph, params: WParams) -> MultiPoly:
    return params.t ** (graph.vertices - 1)


def w_recursive(graph: LabeledGraph, cw: ColorWeights, params: WParams,
                bridges_first: bool = True) -> MultiPoly:
    """
    W(G)(t, z1, z2) by deletion-contraction

    Loops are stripped first, then bridges are contracted, then the
    smallest-id remaining edge is split with the ordinary rule. With
    bridges_first=False bridges also take the ordinary rule, which is only
    valid when z1 == t.

    Args:
        graph: Colored graph
        cw: Color weights covering every color of the graph
        params: Values of t, z1, z2
        bridges_first: Apply the bridge rule before the ordinary rule

    Returns:
        The W-polynomial value
    """
    cw.check_graph(graph)
    return _w_step(graph, cw, params, bridges_first)


def _w_step(graph: LabeledGraph, cw: ColorWeights, params: WParams,
            bridges_first: bool) -> MultiPoly:
    if not graph.edges:
        return _empty_value(graph, params)

    loops = [e for e in graph.edges if e.is_loop]
    if loops:
        factor = MultiPoly.one(params.t.registry)
        rest = graph
        for edge in loops:
            x, y = cw[edge.attr]
            factor = factor * (x * params.z2 + y)
            rest = delete(rest, edge.id)
        return factor * _w_step(rest, cw, params, bridges_first)

    ids = graph.edge_ids()
    if bridges_first:
        for eid in ids:
            if classify_edge(graph, eid) is EdgeClass.BRIDGE:
                x, y = cw[graph.edge(eid).attr]
                return (x + params.z1 * y) * _w_step(contract(graph, eid), cw, params, bridges_first)

    eid = ids[0]
    x, y = cw[graph.edge(eid).attr]
    return (x * _w_step(contract(graph, eid), cw, params, bridges_first)
            + y * _w_step(delete(graph, eid), cw, params, bridges_first))


def w_state_sum(graph: LabeledGraph, cw: ColorWeights, params: WParams,
                cap: Optional[int] = None) -> MultiPoly:
    """W(G) as the sum over all spanning subgraphs"""
    cw.check_graph(graph)
    registry = params.t.registry
    k, _ = components_nullity(graph)
    total = MultiPoly.zero(registry)
    for report in spanning_subgraphs(graph, cap):
        term = (params.z1 ** (report.components - k)) * (params.z2 ** report.nullity)
        for edge in graph.edges:
            x, y = cw[edge.attr]
            term = term * (x if edge.id in report.edges else y)
        total = total + term
    return params.t ** (k - 1) * total


def w_forest_expansion(graph: LabeledGraph, cw: ColorWeights, params: WParams,
                       order: Optional[Sequence[str]] = None, cap: Optional[int] = None) -> MultiPoly:
    """
    W(G) as the activity expansion over spanning forests

    Holds for arbitrary t, z1, z2. Each internally active edge contributes
    x + z1*y, each externally active edge x*z2 + y, each internally inactive
    edge x and each externally inactive edge y.

    Args:
        graph: Colored graph
        cw: Color weights
        params: Values of t, z1, z2
        order: Edge ids from smallest to largest (defaults to lexicographic)
        cap: Enumeration cap override

    Returns:
        The W-polynomial value
    """
    cw.check_graph(graph)
    registry = params.t.registry
    k, _ = components_nullity(graph)
    total = MultiPoly.zero(registry)
    forests = 0
    for activity in spanning_forests_with_activities(graph, order, cap):
        forests += 1
        term = MultiPoly.one(registry)
        for edge in graph.edges:
            x, y = cw[edge.attr]
            if edge.id in activity.internally_active:
                term = term * (x + params.z1 * y)
            elif edge.id in activity.externally_active:
                term = term * (x * params.z2 + y)
            elif edge.id in activity.internally_inactive:
                term = term * x
            else:
                term = term * y
        total = total + term
    logger.debug(f"Forest expansion summed {forests} spanning forests")
    return params.t ** (k - 1) * total


def w_product_laws(first: LabeledGraph, second: LabeledGraph, cw: ColorWeights, params: WParams,
                   operation: str = "disjoint", at_first: int = 0, at_second: int = 0) -> MultiPoly:
    """
    W of a disjoint or one-point union, checked against the product laws

    Args:
        first: First operand
        second: Second operand
        cw: Color weights covering both operands
        params: Values of t, z1, z2
        operation: "disjoint" (W = t*W1*W2) or "one_point" (W = W1*W2)
        at_first: Gluing vertex of the first operand for "one_point"
        at_second: Gluing vertex of the second operand for "one_point"

    Returns:
        W of the combined graph

    Raises:
        VerificationError: If the product law fails
    """
    if operation == "disjoint":
        combined = disjoint_union(first, second)
        factor = params.t
    elif operation == "one_point":
        combined = one_point_union(first, second, at_first, at_second)
        factor = MultiPoly.one(params.t.registry)
    else:
        raise InputError(f"unknown graph product {operation!r}", field="operation")

    value = w_recursive(combined, cw, params)
    expected = factor * w_recursive(first, cw, params) * w_recursive(second, cw, params)
    if value != expected:
        raise VerificationError(
            f"{operation} product law failed: {canonical_string(value)} != {canonical_string(expected)}",
            field="operation",
        )
    return value
