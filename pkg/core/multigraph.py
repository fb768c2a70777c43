import logging
from dataclasses import dataclass, field, replace
from enum import Enum, IntEnum
from itertools import combinations
from typing import Any, Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy
from networkx.utils import UnionFind

from core.errors import InputError, UnknownEdgeError
from utils.limiter import limiter

logger = logging.getLogger(__name__)


class Sign(IntEnum):
    """Edge sign; + is identified with +1 and - with -1"""

    PLUS = 1
    MINUS = -1

    @classmethod
    def parse(cls, text: Any) -> "Sign":
        if isinstance(text, bool):
            raise InputError(f"invalid sign {text!r} (expected '+' or '-')", field="sign")
        if text in ("+", "+1", 1):
            return cls.PLUS
        if text in ("-", "-1", -1):
            return cls.MINUS
        raise InputError(f"invalid sign {text!r} (expected '+' or '-')", field="sign")

    def flipped(self) -> "Sign":
        return Sign(-self.value)

    def __str__(self) -> str:
        return "+" if self is Sign.PLUS else "-"


class AttributeKind(str, Enum):
    SIGN = "sign"
    COLOR = "color"
    LABEL = "label"


class EdgeClass(str, Enum):
    LOOP = "loop"
    BRIDGE = "bridge"
    ORDINARY = "ordinary"


Attribute = Union[Sign, str]


@dataclass(frozen=True)
class Edge:
    id: str
    u: int
    v: int
    attr: Attribute

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class LabeledGraph:
    """Multigraph with loops and parallel edges; every edge carries one attribute kind"""

    vertices: int
    edges: Tuple[Edge, ...] = ()
    kind: AttributeKind = AttributeKind.SIGN
    _by_id: Dict[str, Edge] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.vertices < 0:
            raise InputError("vertex count must be nonnegative", field="vertices")
        by_id: Dict[str, Edge] = {}
        for position, edge in enumerate(self.edges):
            if edge.id in by_id:
                raise InputError(f"duplicate edge id {edge.id!r}", field=f"edges[{position}].id")
            for end in ("u", "v"):
                value = getattr(edge, end)
                if not 0 <= value < self.vertices:
                    raise InputError(f"endpoint {value} out of range 0..{self.vertices - 1}",
                                     field=f"edges[{position}].{end}")
            by_id[edge.id] = edge
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "_by_id", by_id)

    def edge(self, eid: str) -> Edge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise UnknownEdgeError(f"unknown edge id {eid!r}", field="edge") from None

    def edge_ids(self) -> List[str]:
        """Edge ids in the default (lexicographic) order"""
        return sorted(self._by_id)

    def has_edge(self, eid: str) -> bool:
        return eid in self._by_id

    def degree_sequence(self) -> List[int]:
        degrees = [0] * self.vertices
        for edge in self.edges:
            degrees[edge.u] += 1
            degrees[edge.v] += 1
        return sorted(degrees, reverse=True)

    def canonical_key(self) -> str:
        """Labeling-dependent normal form used as a memoization key.

        Edge ids are dropped, so two graphs that differ only in edge naming
        share a key.
        """
        pairs = sorted((min(e.u, e.v), max(e.u, e.v), str(e.attr)) for e in self.edges)
        degrees = ",".join(map(str, self.degree_sequence()))
        body = ";".join(f"{u}-{v}{a}" for u, v, a in pairs)
        return f"{self.vertices}|{degrees}|{body}"

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.vertices))
        for edge in self.edges:
            graph.add_edge(edge.u, edge.v, key=edge.id, attr=edge.attr)
        return graph

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class SubgraphReport:
    edges: FrozenSet[str]
    components: int
    nullity: int


@dataclass(frozen=True)
class ForestActivities:
    forest: FrozenSet[str]
    internally_active: FrozenSet[str]
    internally_inactive: FrozenSet[str]
    externally_active: FrozenSet[str]
    externally_inactive: FrozenSet[str]


def count_components(vertices: int, pairs: Sequence[Tuple[int, int]]) -> int:
    """Component count of the spanning graph on `vertices` with the given edges"""
    uf = UnionFind(range(vertices))
    for u, v in pairs:
        uf.union(u, v)
    return len({uf[x] for x in range(vertices)})


def components_nullity(graph: LabeledGraph) -> Tuple[int, int]:
    """Return (k, n) with n = |E| - |V| + k"""
    k = count_components(graph.vertices, [(e.u, e.v) for e in graph.edges])
    return k, len(graph.edges) - graph.vertices + k


def classify_edge(graph: LabeledGraph, eid: str) -> EdgeClass:
    """Loop iff the endpoints agree; bridge iff deleting it adds a component"""
    edge = graph.edge(eid)
    if edge.is_loop:
        return EdgeClass.LOOP
    rest = [(e.u, e.v) for e in graph.edges if e.id != eid]
    uf = UnionFind(range(graph.vertices))
    for u, v in rest:
        uf.union(u, v)
    if uf[edge.u] != uf[edge.v]:
        return EdgeClass.BRIDGE
    return EdgeClass.ORDINARY


def delete(graph: LabeledGraph, eid: str) -> LabeledGraph:
    graph.edge(eid)
    return LabeledGraph(graph.vertices, tuple(e for e in graph.edges if e.id != eid), graph.kind)


def contract(graph: LabeledGraph, eid: str) -> LabeledGraph:
    """
    Contract an edge, keeping every other edge

    The larger endpoint is merged into the smaller one and the remaining
    vertices keep their relative order. Contracting a loop deletes it.

    Args:
        graph: Input graph
        eid: Edge to contract

    Returns:
        The contracted graph
    """
    edge = graph.edge(eid)
    if edge.is_loop:
        return delete(graph, eid)
    keep, gone = min(edge.u, edge.v), max(edge.u, edge.v)

    def remap(x: int) -> int:
        if x == gone:
            return keep
        return x - 1 if x > gone else x

    edges = tuple(replace(e, u=remap(e.u), v=remap(e.v)) for e in graph.edges if e.id != eid)
    return LabeledGraph(graph.vertices - 1, edges, graph.kind)


def spanning_subgraphs(graph: LabeledGraph, cap: Optional[int] = None) -> Iterator[SubgraphReport]:
    """
    Enumerate every spanning subgraph <S> with k<S> and n<S>

    Args:
        graph: Input graph
        cap: Maximum edge count (defaults to the process-wide limiter)

    Yields:
        One SubgraphReport per edge subset, in binary-counter order over the sorted edge ids
    """
    limiter.check(len(graph.edges), "spanning subgraph enumeration", cap)
    ids = graph.edge_ids()
    edges = [graph.edge(eid) for eid in ids]
    for mask in range(1 << len(edges)):
        chosen = [edges[i] for i in range(len(edges)) if mask >> i & 1]
        k = count_components(graph.vertices, [(e.u, e.v) for e in chosen])
        yield SubgraphReport(
            edges=frozenset(e.id for e in chosen),
            components=k,
            nullity=len(chosen) - graph.vertices + k,
        )


def _order_rank(graph: LabeledGraph, order: Optional[Sequence[str]]) -> Dict[str, int]:
    ids = list(order) if order is not None else graph.edge_ids()
    if sorted(ids) != graph.edge_ids():
        raise InputError("edge order must list every edge exactly once", field="order")
    return {eid: position for position, eid in enumerate(ids)}


def spanning_forests_with_activities(graph: LabeledGraph, order: Optional[Sequence[str]] = None,
                                     cap: Optional[int] = None) -> Iterator[ForestActivities]:
    """
    Enumerate spanning forests with internal/external activities

    Args:
        graph: Input graph
        order: Edge ids from smallest to largest (defaults to lexicographic)
        cap: Maximum edge count (defaults to the process-wide limiter)

    Yields:
        ForestActivities for every spanning forest
    """
    limiter.check(len(graph.edges), "spanning forest enumeration", cap)
    rank = _order_rank(graph, order)
    k, _ = components_nullity(graph)
    size = graph.vertices - k
    candidates = [e for e in graph.edges if not e.is_loop]

    for chosen in combinations(candidates, size):
        uf = UnionFind(range(graph.vertices))
        acyclic = True
        for e in chosen:
            if uf[e.u] == uf[e.v]:
                acyclic = False
                break
            uf.union(e.u, e.v)
        if not acyclic:
            continue
        forest_ids = frozenset(e.id for e in chosen)
        forest_graph = nx.Graph()
        forest_graph.add_nodes_from(range(graph.vertices))
        for e in chosen:
            forest_graph.add_edge(e.u, e.v, id=e.id)

        ia, ii, ea, ei = set(), set(), set(), set()
        for e in chosen:
            split = UnionFind(range(graph.vertices))
            for f in chosen:
                if f.id != e.id:
                    split.union(f.u, f.v)
            sides = {split[e.u], split[e.v]}
            cut = [g.id for g in graph.edges
                   if not g.is_loop and {split[g.u], split[g.v]} == sides]
            (ia if min(cut, key=rank.__getitem__) == e.id else ii).add(e.id)

        for g in graph.edges:
            if g.id in forest_ids:
                continue
            if g.is_loop:
                cycle = [g.id]
            else:
                path = nx.shortest_path(forest_graph, g.u, g.v)
                cycle = [g.id] + [forest_graph.edges[a, b]["id"] for a, b in zip(path, path[1:])]
            (ea if min(cycle, key=rank.__getitem__) == g.id else ei).add(g.id)

        yield ForestActivities(
            forest=forest_ids,
            internally_active=frozenset(ia),
            internally_inactive=frozenset(ii),
            externally_active=frozenset(ea),
            externally_inactive=frozenset(ei),
        )


def kirchhoff_forest_count(graph: LabeledGraph) -> int:
    """Number of spanning forests by the matrix-tree theorem, per component"""
    nxg = graph.to_networkx()
    total = 1
    for component in nx.connected_components(nxg):
        nodes = sorted(component)
        if len(nodes) == 1:
            continue
        position = {v: i for i, v in enumerate(nodes)}
        laplacian = numpy.zeros((len(nodes), len(nodes)), dtype=int)
        for edge in graph.edges:
            if edge.is_loop or edge.u not in position:
                continue
            a, b = position[edge.u], position[edge.v]
            laplacian[a, a] += 1
            laplacian[b, b] += 1
            laplacian[a, b] -= 1
            laplacian[b, a] -= 1
        total *= int(round(numpy.linalg.det(laplacian[1:, 1:])))
    return total


# Builders

def make_graph(vertices: int, edges: Sequence[Tuple[str, int, int, Attribute]],
               kind: AttributeKind = AttributeKind.SIGN) -> LabeledGraph:
    return LabeledGraph(vertices, tuple(Edge(eid, u, v, attr) for eid, u, v, attr in edges), kind)


def relabel(graph: LabeledGraph, attr_fn: Callable[[Edge], Attribute],
            kind: Optional[AttributeKind] = None) -> LabeledGraph:
    """Map every edge attribute through attr_fn"""
    edges = tuple(replace(e, attr=attr_fn(e)) for e in graph.edges)
    return LabeledGraph(graph.vertices, edges, kind or graph.kind)


def mirror(graph: LabeledGraph) -> LabeledGraph:
    """Negate every sign"""
    return relabel(graph, lambda e: e.attr.flipped())


def disjoint_union(first: LabeledGraph, second: LabeledGraph) -> LabeledGraph:
    shift = first.vertices
    edges = first.edges + tuple(replace(e, u=e.u + shift, v=e.v + shift) for e in second.edges)
    return LabeledGraph(first.vertices + second.vertices, edges, first.kind)


def one_point_union(first: LabeledGraph, second: LabeledGraph,
                    at_first: int = 0, at_second: int = 0) -> LabeledGraph:
    """Glue vertex at_second of `second` onto vertex at_first of `first`"""
    if not 0 <= at_first < first.vertices:
        raise InputError("gluing vertex out of range", field="at_first")
    if not 0 <= at_second < second.vertices:
        raise InputError("gluing vertex out of range", field="at_second")
    shift = first.vertices

    def remap(x: int) -> int:
        if x == at_second:
            return at_first
        return shift + (x - 1 if x > at_second else x)

    edges = first.edges + tuple(replace(e, u=remap(e.u), v=remap(e.v)) for e in second.edges)
    return LabeledGraph(first.vertices + second.vertices - 1, edges, first.kind)


def empty_graph(vertices: int, kind: AttributeKind = AttributeKind.SIGN) -> LabeledGraph:
    return LabeledGraph(vertices, (), kind)


# JSON documents

def graph_from_document(document: Dict[str, Any]) -> LabeledGraph:
    """
    Build a LabeledGraph from its JSON document

    Args:
        document: {"vertices": N, "edges": [{"id", "u", "v", one of "sign"/"color"/"label"}]}

    Returns:
        The validated graph
    """
    if not isinstance(document, dict):
        raise InputError("graph document must be a JSON object", field="graph")
    vertices = document.get("vertices")
    if not isinstance(vertices, int) or isinstance(vertices, bool):
        raise InputError("missing or non-integer vertex count", field="vertices")
    raw_edges = document.get("edges", [])
    if not isinstance(raw_edges, list):
        raise InputError("edges must be a list", field="edges")

    kinds = set()
    edges: List[Edge] = []
    for position, raw in enumerate(raw_edges):
        where = f"edges[{position}]"
        if not isinstance(raw, dict):
            raise InputError("edge must be a JSON object", field=where)
        for key in ("id", "u", "v"):
            if key not in raw:
                raise InputError(f"missing {key!r}", field=f"{where}.{key}")
        present = [kind for kind in AttributeKind if kind.value in raw]
        if len(present) != 1:
            raise InputError("edge needs exactly one of sign/color/label", field=where)
        kind = present[0]
        kinds.add(kind)
        value = raw[kind.value]
        if kind is AttributeKind.SIGN:
            try:
                attr: Attribute = Sign.parse(value)
            except InputError as e:
                raise InputError(e.message, field=f"{where}.sign") from None
        else:
            if not isinstance(value, str) or not value:
                raise InputError(f"{kind.value} must be a nonempty string", field=f"{where}.{kind.value}")
            attr = value
        u, v = raw["u"], raw["v"]
        if not isinstance(u, int) or not isinstance(v, int):
            raise InputError("endpoints must be integers", field=where)
        edges.append(Edge(str(raw["id"]), u, v, attr))

    if len(kinds) > 1:
        raise InputError("a graph document may use only one attribute kind", field="edges")
    kind = kinds.pop() if kinds else AttributeKind.SIGN
    return LabeledGraph(vertices, tuple(edges), kind)


def graph_to_document(graph: LabeledGraph) -> Dict[str, Any]:
    return {
        "vertices": graph.vertices,
        "edges": [
            {"id": e.id, "u": e.u, "v": e.v, graph.kind.value: str(e.attr)}
            for e in graph.edges
        ],
    }
