import logging
import random
from itertools import combinations_with_replacement, product
from typing import Dict, Iterator, List, Sequence, Tuple

import networkx as nx

from core.multigraph import (
    Attribute,
    AttributeKind,
    LabeledGraph,
    Sign,
    make_graph,
    relabel,
)
from core.polyring import RESERVED_NAMES

logger = logging.getLogger(__name__)

_LETTERS = [c for c in "abcdefghijklmnopqrstuvxyz" if c not in RESERVED_NAMES]


def label_names(count: int) -> List[str]:
    """Label variables a, b, c, e, ... skipping reserved names"""
    names = list(_LETTERS)
    index = 1
    while len(names) < count:
        names.extend(f"{c}{index}" for c in _LETTERS)
        index += 1
    return names[:count]


def _shape(vertices: int, pairs: Sequence[Tuple[int, int]]) -> LabeledGraph:
    return make_graph(vertices, [(f"e{i + 1}", u, v, Sign.PLUS) for i, (u, v) in enumerate(pairs)])


def shape_corpus(max_edges: int = 4, max_vertices: int = 4) -> List[LabeledGraph]:
    """
    Every multigraph shape up to isomorphism

    Loops, parallel edges and isolated vertices are allowed. Shapes carry
    + signs and edge ids e1, e2, ...

    Args:
        max_edges: Largest edge count
        max_vertices: Largest vertex count (at least one vertex)

    Returns:
        One representative per isomorphism class
    """
    shapes: List[LabeledGraph] = []
    buckets: Dict[Tuple, List[nx.MultiGraph]] = {}
    for vertices in range(1, max_vertices + 1):
        pairs = [(u, v) for u in range(vertices) for v in range(u, vertices)]
        for size in range(max_edges + 1):
            for chosen in combinations_with_replacement(pairs, size):
                graph = _shape(vertices, chosen)
                nxg = graph.to_networkx()
                loops = sum(1 for u, v in chosen if u == v)
                key = (vertices, size, loops, tuple(graph.degree_sequence()))
                seen = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(nxg, other) for other in seen):
                    continue
                seen.append(nxg)
                shapes.append(graph)
    logger.debug(f"Shape corpus: {len(shapes)} shapes with <= {max_edges} edges, "
                 f"<= {max_vertices} vertices")
    return shapes


def sign_patterns(shape: LabeledGraph) -> Iterator[LabeledGraph]:
    """Every assignment of signs to the edges of a shape"""
    ids = shape.edge_ids()
    for signs in product((Sign.PLUS, Sign.MINUS), repeat=len(ids)):
        chosen = dict(zip(ids, signs))
        yield relabel(shape, lambda e: chosen[e.id])


def with_labels(shape: LabeledGraph) -> LabeledGraph:
    """Distinct label variables on every edge, in edge-id order"""
    names = dict(zip(shape.edge_ids(), label_names(len(shape.edges))))
    return relabel(shape, lambda e: names[e.id], AttributeKind.LABEL)


def with_colors(shape: LabeledGraph, colors: Sequence[str], rng: random.Random) -> LabeledGraph:
    return relabel(shape, lambda e: rng.choice(list(colors)), AttributeKind.COLOR)


def random_multigraph(rng: random.Random, max_edges: int, max_vertices: int = 5,
                      min_edges: int = 0, loop_weight: float = 0.15,
                      signed: bool = True) -> LabeledGraph:
    """
    Random multigraph with random signs

    Args:
        rng: Seeded random source
        max_edges: Largest edge count
        max_vertices: Largest vertex count
        min_edges: Smallest edge count
        loop_weight: Probability that an edge is a loop
        signed: Draw random signs (otherwise all +)

    Returns:
        The generated graph
    """
    vertices = rng.randint(1, max_vertices)
    count = rng.randint(min_edges, max_edges)
    edges: List[Tuple[str, int, int, Attribute]] = []
    for i in range(count):
        u = rng.randrange(vertices)
        if vertices == 1 or rng.random() < loop_weight:
            v = u
        else:
            v = rng.choice([x for x in range(vertices) if x != u])
        sign = rng.choice((Sign.PLUS, Sign.MINUS)) if signed else Sign.PLUS
        edges.append((f"e{i + 1}", u, v, sign))
    return make_graph(vertices, edges)
