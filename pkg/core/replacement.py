import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional, Tuple

from core.chain_sheaf import ch_poly, sh_poly
from core.colored_tutte import ColorWeights, WParams, w_recursive
from core.errors import InputError, ReplacementRingError, ZeroReplacementError
from core.multigraph import (
    AttributeKind,
    Edge,
    EdgeClass,
    LabeledGraph,
    Sign,
    classify_edge,
    components_nullity,
    contract,
    delete,
    relabel,
)
from core.polyring import (
    DEFAULT_REGISTRY,
    KauffmanSymbols,
    MultiPoly,
    VarRegistry,
    exact_div,
    substitute,
)
from core.signed_tutte import q_poly

logger = logging.getLogger(__name__)


class DirectiveKind(str, Enum):
    CHAIN = "chain"
    SHEAF = "sheaf"


@dataclass(frozen=True)
class Directive:
    """Replace an edge by a chain of length n or a sheaf of width n"""

    kind: DirectiveKind
    n: int

    def __post_init__(self):
        if self.n == 0:
            raise ZeroReplacementError("replacement length/width must be nonzero", field="n")

    @classmethod
    def chain(cls, n: int) -> "Directive":
        return cls(DirectiveKind.CHAIN, n)

    @classmethod
    def sheaf(cls, n: int) -> "Directive":
        return cls(DirectiveKind.SHEAF, n)


@dataclass(frozen=True)
class ReplacementSpec:
    directives: Mapping[str, Directive]

    def directive(self, eid: str) -> Directive:
        try:
            return self.directives[eid]
        except KeyError:
            raise InputError(f"no directive for edge {eid!r}", field="spec") from None

    def check_graph(self, graph: LabeledGraph):
        """The spec must name every edge of the graph and nothing else"""
        missing = sorted(set(graph.edge_ids()) - set(self.directives))
        extra = sorted(set(self.directives) - set(graph.edge_ids()))
        if missing:
            raise InputError(f"no directive for edges {', '.join(missing)}", field="spec")
        if extra:
            raise InputError(f"directives for unknown edges {', '.join(extra)}", field="spec")

    def is_homogeneous(self, kind: DirectiveKind) -> bool:
        return all(d.kind is kind for d in self.directives.values())

    def has_negative(self) -> bool:
        return any(d.n < 0 for d in self.directives.values())

    def amounts(self) -> Dict[str, int]:
        return {eid: d.n for eid, d in self.directives.items()}

    @classmethod
    def uniform(cls, graph: LabeledGraph, kind: DirectiveKind, n: int) -> "ReplacementSpec":
        return cls({eid: Directive(kind, n) for eid in graph.edge_ids()})


def spec_from_document(document: Dict[str, Any]) -> ReplacementSpec:
    """
    Parse a ReplacementSpec JSON document

    Args:
        document: {"e1": {"kind": "chain", "n": 2}, ...}

    Returns:
        The parsed spec
    """
    if not isinstance(document, dict):
        raise InputError("replacement spec must be a JSON object", field="spec")
    directives: Dict[str, Directive] = {}
    for eid, entry in document.items():
        where = f"spec.{eid}"
        if not isinstance(entry, dict):
            raise InputError("directive must be an object", field=where)
        try:
            kind = DirectiveKind(entry.get("kind"))
        except ValueError:
            raise InputError("kind must be 'chain' or 'sheaf'", field=f"{where}.kind") from None
        n = entry.get("n")
        if not isinstance(n, int) or isinstance(n, bool):
            raise InputError("n must be an integer", field=f"{where}.n")
        if n == 0:
            raise ZeroReplacementError("replacement length/width must be nonzero", field=f"{where}.n")
        directives[eid] = Directive(kind, n)
    return ReplacementSpec(directives)


def spec_to_document(spec: ReplacementSpec) -> Dict[str, Any]:
    return {eid: {"kind": d.kind.value, "n": d.n} for eid, d in sorted(spec.directives.items())}


@dataclass(frozen=True)
class ReplacedGraph:
    graph: LabeledGraph
    provenance: Mapping[str, str]  # new edge id -> original edge id


def build_replaced(graph: LabeledGraph, spec: ReplacementSpec) -> ReplacedGraph:
    """
    Build the replaced graph

    Chain(n) and Sheaf(n) put |n| edges in series or in parallel, carrying
    the original sign when n > 0 and the opposite sign when n < 0. A chain on
    a loop closes into a cycle through new vertices. New edges are named
    "<edge>.<i>".

    Args:
        graph: Signed graph
        spec: Directive for every edge

    Returns:
        The replaced graph with its provenance map
    """
    if graph.edges and graph.kind is not AttributeKind.SIGN:
        raise InputError("replacement needs a signed graph", field="edges")
    spec.check_graph(graph)
    vertices = graph.vertices
    edges: List[Edge] = []
    provenance: Dict[str, str] = {}
    for edge in graph.edges:
        directive = spec.directive(edge.id)
        count = abs(directive.n)
        sign = edge.attr if directive.n > 0 else edge.attr.flipped()
        if directive.kind is DirectiveKind.SHEAF:
            stops = [(edge.u, edge.v)] * count
        else:
            path = [edge.u] + list(range(vertices, vertices + count - 1)) + [edge.v]
            vertices += count - 1
            stops = list(zip(path, path[1:]))
        for i, (u, v) in enumerate(stops, start=1):
            new_id = f"{edge.id}.{i}"
            edges.append(Edge(new_id, u, v, sign))
            provenance[new_id] = edge.id
    replaced = LabeledGraph(vertices, tuple(edges), AttributeKind.SIGN)
    logger.debug(f"Replaced {len(graph.edges)} edges by {len(edges)} ({vertices} vertices)")
    return ReplacedGraph(replaced, provenance)


def _check_ring(directive: Directive, symbols: KauffmanSymbols):
    if directive.n < 0 and not symbols.specialized:
        raise ReplacementRingError(
            f"{directive.kind.value}({directive.n}) needs the bracket-specialized ring", field="n")


def replacement_weights(directive: Directive, sign: Sign,
                        symbols: KauffmanSymbols) -> Tuple[MultiPoly, MultiPoly]:
    """
    Color weights (x, y) of a replaced edge

    The effective length is L = sign * n. Chains weigh (A^L, (X^L - A^L)/d)
    and sheaves ((Y^L - B^L)/d, B^L). In the bracket ring L is used as is;
    in the full ring a negative L takes the mirror weights, exchanging A
    with B and X with Y.

    Args:
        directive: Chain or sheaf directive
        sign: Sign of the original edge
        symbols: Ring constants

    Returns:
        Tuple of (x, y)
    """
    _check_ring(directive, symbols)
    A, B, X, Y, d = symbols.A, symbols.B, symbols.X, symbols.Y, symbols.d
    length = int(sign) * directive.n
    if length < 0 and not symbols.specialized:
        A, B, X, Y = B, A, Y, X
        length = -length
    if directive.kind is DirectiveKind.CHAIN:
        return A ** length, exact_div(X ** length - A ** length, d)
    return exact_div(Y ** length - B ** length, d), B ** length


def _symbols(specialized: bool, registry: Optional[VarRegistry]) -> KauffmanSymbols:
    registry = registry if registry is not None else DEFAULT_REGISTRY
    return KauffmanSymbols.bracket(registry) if specialized else KauffmanSymbols.full(registry)


def _check_spec_ring(spec: ReplacementSpec, specialized: bool):
    if not specialized:
        for eid, directive in sorted(spec.directives.items()):
            if directive.n < 0:
                raise ReplacementRingError(
                    f"{directive.kind.value}({directive.n}) needs the bracket-specialized ring",
                    field=f"spec.{eid}.n")


def q_hat_via_recursion(graph: LabeledGraph, spec: ReplacementSpec, specialized: bool = False,
                        registry: Optional[VarRegistry] = None) -> MultiPoly:
    """Q of the explicitly built replaced graph"""
    _check_spec_ring(spec, specialized)
    symbols = _symbols(specialized, registry)
    value = q_poly(build_replaced(graph, spec).graph, symbols.A.registry)
    return symbols.specialize(value) if specialized else value


def q_hat_via_w(graph: LabeledGraph, spec: ReplacementSpec, specialized: bool = False,
                registry: Optional[VarRegistry] = None) -> MultiPoly:
    """
    Q of the replaced graph as W(G)(d, d, d) under the replacement weights

    Args:
        graph: Signed base graph
        spec: Directive for every edge
        specialized: Work in the bracket ring (required for negative n)
        registry: Variable registry

    Returns:
        Q of the replaced graph, specialized when requested
    """
    spec.check_graph(graph)
    _check_spec_ring(spec, specialized)
    symbols = _symbols(specialized, registry)
    weights = {
        e.id: replacement_weights(spec.directive(e.id), e.attr, symbols) for e in graph.edges
    }
    colored = relabel(graph, lambda e: e.id, AttributeKind.COLOR)
    return w_recursive(colored, ColorWeights(weights), WParams.uniform(symbols.d))


@dataclass(frozen=True)
class Reduction:
    """Q[G^] = deletion * Q[(G-e)^] + contraction * Q[(G/e)^]"""

    deletion: MultiPoly
    contraction: MultiPoly


def _reduce(graph: LabeledGraph, eid: str, directive: Directive,
            symbols: KauffmanSymbols) -> Reduction:
    edge = graph.edge(eid)
    x, y = replacement_weights(directive, edge.attr, symbols)
    delta = symbols.d if classify_edge(graph, eid) is EdgeClass.LOOP else MultiPoly.one(symbols.A.registry)
    return Reduction(deletion=y, contraction=x * delta)


def chain_reduce(graph: LabeledGraph, eid: str, n: int, symbols: KauffmanSymbols) -> Reduction:
    """
    One reduction step for an edge replaced by a chain of length n

    A + edge gives ((X^n - A^n)/d, A^n * delta) with delta = d for a loop
    and 1 otherwise; a - edge takes the mirror constants.
    """
    return _reduce(graph, eid, Directive.chain(n), symbols)


def sheaf_reduce(graph: LabeledGraph, eid: str, n: int, symbols: KauffmanSymbols) -> Reduction:
    """
    One reduction step for an edge replaced by a sheaf of width n

    A + edge gives (B^n, (Y^n - B^n)/d * delta) with delta = d for a loop
    and 1 otherwise; a - edge takes the mirror constants.
    """
    return _reduce(graph, eid, Directive.sheaf(n), symbols)


def q_hat_via_lemmas(graph: LabeledGraph, spec: ReplacementSpec, specialized: bool = False,
                     registry: Optional[VarRegistry] = None) -> MultiPoly:
    """Q of the replaced graph by chain/sheaf reduction steps on the base graph"""
    spec.check_graph(graph)
    _check_spec_ring(spec, specialized)
    symbols = _symbols(specialized, registry)
    return _lemma_step(graph, spec, symbols)


def _lemma_step(graph: LabeledGraph, spec: ReplacementSpec, symbols: KauffmanSymbols) -> MultiPoly:
    if not graph.edges:
        return symbols.d ** (graph.vertices - 1)
    eid = graph.edge_ids()[0]
    directive = spec.directive(eid)
    if directive.kind is DirectiveKind.CHAIN:
        step = chain_reduce(graph, eid, directive.n, symbols)
    else:
        step = sheaf_reduce(graph, eid, directive.n, symbols)
    deleted = _lemma_step(delete(graph, eid), spec, symbols)
    if graph.edge(eid).is_loop:
        return (step.deletion + step.contraction) * deleted
    return step.deletion * deleted + step.contraction * _lemma_step(contract(graph, eid), spec, symbols)


def _label_name(position: int) -> str:
    return f"lbl{position}"


def _divide_by_d_power(value: MultiPoly, exponent: int, d: MultiPoly) -> MultiPoly:
    if exponent <= 0:
        return value * d ** (-exponent)
    return exact_div(value, d ** exponent)


def _corollary_route(graph: LabeledGraph, amounts: Mapping[str, int], kind: DirectiveKind,
                     specialize: bool, registry: Optional[VarRegistry]) -> MultiPoly:
    if graph.edges and graph.kind is not AttributeKind.SIGN:
        raise InputError("replacement needs a signed graph", field="edges")
    spec = ReplacementSpec({eid: Directive(kind, n) for eid, n in amounts.items()})
    spec.check_graph(graph)
    _check_spec_ring(spec, specialize)
    registry = registry if registry is not None else DEFAULT_REGISTRY
    symbols = KauffmanSymbols.full(registry)
    A, B, X, Y, d = symbols.A, symbols.B, symbols.X, symbols.Y, symbols.d

    names = {eid: _label_name(position) for position, eid in enumerate(graph.edge_ids())}
    labeled = relabel(graph, lambda e: names[e.id], AttributeKind.LABEL)
    base = ch_poly(labeled, registry) if kind is DirectiveKind.CHAIN else sh_poly(labeled, registry)

    prefactor = MultiPoly.one(registry)
    bindings = {"w": 1 - d * d}
    for edge in graph.edges:
        length = int(edge.attr) * amounts[edge.id]
        count = abs(length)
        # chains: + uses (A, X), - uses (B, Y); sheaves the other way round
        use_a = (length > 0) == (kind is DirectiveKind.CHAIN)
        unit, twin = (A, X) if use_a else (B, Y)
        prefactor = prefactor * unit ** count
        bindings[names[edge.id]] = unit ** (-count) * twin ** count
    value = prefactor * substitute(base, bindings)

    p = graph.vertices
    if kind is DirectiveKind.CHAIN:
        exponent = len(graph.edges) - p + 1
    else:
        k, _ = components_nullity(graph)
        exponent = p - 2 * k + 1
    value = _divide_by_d_power(value, exponent, d)
    return KauffmanSymbols.bracket(registry).specialize(value) if specialize else value


def q_gc_via_chain_poly(graph: LabeledGraph, lengths: Mapping[str, int], specialize: bool = False,
                        registry: Optional[VarRegistry] = None) -> MultiPoly:
    """
    Q of the all-chain replacement from the chain polynomial

    Ch[G] is evaluated at w = 1 - d^2 and each label at (X/A)^n, scaled by
    A^(sum n) and divided by d^(q-p+1). Minus edges take the mirror
    constants. The value is computed in the full ring and specialized last.

    Args:
        graph: Signed base graph
        lengths: Chain length per edge
        specialize: Return the bracket specialization (allows negative lengths)
        registry: Variable registry

    Returns:
        Q of the replaced graph
    """
    return _corollary_route(graph, lengths, DirectiveKind.CHAIN, specialize, registry)


def q_gs_via_sheaf_poly(graph: LabeledGraph, widths: Mapping[str, int], specialize: bool = False,
                        registry: Optional[VarRegistry] = None) -> MultiPoly:
    """Q of the all-sheaf replacement from the sheaf polynomial, dividing by d^(p-2k+1)"""
    return _corollary_route(graph, widths, DirectiveKind.SHEAF, specialize, registry)
