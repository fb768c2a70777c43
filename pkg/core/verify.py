import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from core.chain_sheaf import (
    ch_from_definition,
    ch_poly,
    count_nowhere_zero_flows,
    count_nowhere_zero_tensions,
    flow_poly,
    sh_from_definition,
    sh_poly,
    tension_poly,
)
from core.colored_tutte import ColorWeights, WParams, w_forest_expansion, w_recursive, w_state_sum
from core.corpus import random_multigraph, shape_corpus, sign_patterns, with_colors, with_labels
from core.errors import OracleMismatchError
from core.multigraph import Edge, LabeledGraph, contract, delete, mirror
from core.polyring import DEFAULT_REGISTRY, MultiPoly, VarRegistry, canonical_string, eval_int
from core.rational_links import (
    RationalWord,
    bracket_rational,
    bracket_theta,
    bracket_theta_via_oracle,
    bracket_twist,
    bracket_via_oracle,
    transfer_bracket,
    words,
)
from core.replacement import (
    Directive,
    DirectiveKind,
    ReplacementSpec,
    q_gc_via_chain_poly,
    q_gs_via_sheaf_poly,
    q_hat_via_lemmas,
    q_hat_via_recursion,
    q_hat_via_w,
)
from core.signed_tutte import kauffman_bracket, q_poly, q_via_state_sum

logger = logging.getLogger(__name__)

DualPair = Tuple[str, LabeledGraph, LabeledGraph]


class Suite(str, Enum):
    SMALL = "small"
    FULL = "full"


@dataclass(frozen=True)
class SuiteScale:
    """Instance counts of one suite"""

    corpus_edges: int
    corpus_vertices: int
    random_q: int
    random_q_edges: int
    random_w: int
    random_w_edges: int
    replacement: int
    corollary: int
    chain_corpus_edges: int
    count_corpus_edges: int
    word_exhaustive_length: int
    word_sampled_lengths: Tuple[int, ...]
    word_samples: int
    word_random: int
    twist_range: int
    theta_range: int
    theta_random: int
    mirror: int


SCALES: Dict[Suite, SuiteScale] = {
    Suite.SMALL: SuiteScale(
        corpus_edges=3, corpus_vertices=3, random_q=20, random_q_edges=6,
        random_w=20, random_w_edges=5, replacement=15, corollary=10,
        chain_corpus_edges=3, count_corpus_edges=3,
        word_exhaustive_length=3, word_sampled_lengths=(4, 5), word_samples=10, word_random=10,
        twist_range=2, theta_range=2, theta_random=5, mirror=20,
    ),
    Suite.FULL: SuiteScale(
        corpus_edges=4, corpus_vertices=4, random_q=200, random_q_edges=8,
        random_w=200, random_w_edges=6, replacement=200, corollary=100,
        chain_corpus_edges=5, count_corpus_edges=6,
        word_exhaustive_length=7, word_sampled_lengths=(), word_samples=0, word_random=50,
        twist_range=3, theta_range=3, theta_random=20, mirror=100,
    ),
}


@dataclass
class SuiteReport:
    suite: Suite
    cases: int = 0
    checks: Dict[str, int] = field(default_factory=dict)

    def add(self, check: str, cases: int):
        self.checks[check] = cases
        self.cases += cases

    def summary(self) -> str:
        return f"{self.suite.value}: ok ({self.cases} cases)"


def expect_equal(check: str, subject: str, got: MultiPoly, want: MultiPoly):
    """Raise OracleMismatchError unless both routes agree exactly"""
    if got != want:
        raise OracleMismatchError(
            f"{canonical_string(got)} != {canonical_string(want)}", field=f"{check} ({subject})")


def expect_count(check: str, subject: str, got: Fraction, want: int):
    if got != want:
        raise OracleMismatchError(f"{got} != {want}", field=f"{check} ({subject})")


def _describe(graph: LabeledGraph) -> str:
    return graph.canonical_key()


def check_q_routes(scale: SuiteScale, rng: random.Random, registry: VarRegistry) -> int:
    cases = 0
    for shape in shape_corpus(scale.corpus_edges, scale.corpus_vertices):
        for graph in sign_patterns(shape):
            expect_equal("q routes", _describe(graph), q_poly(graph, registry),
                         q_via_state_sum(graph, registry))
            cases += 1
    for _ in range(scale.random_q):
        graph = random_multigraph(rng, scale.random_q_edges)
        expect_equal("q routes", _describe(graph), q_poly(graph, registry),
                     q_via_state_sum(graph, registry))
        cases += 1
    return cases


def check_w_routes(scale: SuiteScale, rng: random.Random, registry: VarRegistry) -> int:
    colors = ("r", "g", "b")
    weights = ColorWeights.symbolic(colors, registry)
    params = WParams.symbolic(registry)
    t_equals_z1 = WParams(params.t, params.t, params.z2)
    for _ in range(scale.random_w):
        graph = with_colors(random_multigraph(rng, scale.random_w_edges, max_vertices=4), colors, rng)
        subject = _describe(graph)
        recursive = w_recursive(graph, weights, params)
        expect_equal("w state sum", subject, w_state_sum(graph, weights, params), recursive)
        expect_equal("w forests", subject, w_forest_expansion(graph, weights, params), recursive)
        reversed_order = list(reversed(graph.edge_ids()))
        expect_equal("w forest order", subject,
                     w_forest_expansion(graph, weights, params, order=reversed_order), recursive)
        expect_equal("w bridge rule", subject,
                     w_recursive(graph, weights, t_equals_z1, bridges_first=False),
                     w_recursive(graph, weights, t_equals_z1))
    return scale.random_w


def _random_spec(graph: LabeledGraph, rng: random.Random, amounts: Sequence[int],
                 kind: Optional[DirectiveKind] = None) -> ReplacementSpec:
    return ReplacementSpec({
        eid: Directive(kind or rng.choice(list(DirectiveKind)), rng.choice(list(amounts)))
        for eid in graph.edge_ids()
    })


def check_replacement(scale: SuiteScale, rng: random.Random, registry: VarRegistry) -> int:
    positive = range(1, 5)
    both = [n for n in range(-4, 5) if n]
    for _ in range(scale.replacement):
        graph = random_multigraph(rng, 4, max_vertices=3)
        spec = _random_spec(graph, rng, positive)
        subject = _describe(graph)
        direct = q_hat_via_recursion(graph, spec, registry=registry)
        expect_equal("replacement via w", subject, q_hat_via_w(graph, spec, registry=registry), direct)
        expect_equal("replacement via lemmas", subject,
                     q_hat_via_lemmas(graph, spec, registry=registry), direct)

        spec = _random_spec(graph, rng, both)
        direct = q_hat_via_recursion(graph, spec, specialized=True, registry=registry)
        expect_equal("bracket replacement via w", subject,
                     q_hat_via_w(graph, spec, specialized=True, registry=registry), direct)
    return 2 * scale.replacement


def check_corollaries(scale: SuiteScale, rng: random.Random, registry: VarRegistry) -> int:
    positive = range(1, 5)
    both = [n for n in range(-3, 4) if n]
    routes = ((DirectiveKind.CHAIN, q_gc_via_chain_poly), (DirectiveKind.SHEAF, q_gs_via_sheaf_poly))
    for _ in range(scale.corollary):
        graph = random_multigraph(rng, 4, max_vertices=3)
        subject = _describe(graph)
        for kind, route in routes:
            spec = _random_spec(graph, rng, positive, kind)
            expect_equal(f"{kind.value} polynomial route", subject,
                         route(graph, spec.amounts(), registry=registry),
                         q_hat_via_w(graph, spec, registry=registry))
            spec = _random_spec(graph, rng, both, kind)
            expect_equal(f"{kind.value} polynomial bracket route", subject,
                         route(graph, spec.amounts(), specialize=True, registry=registry),
                         q_hat_via_w(graph, spec, specialized=True, registry=registry))
    return 4 * scale.corollary


def check_chain_sheaf(scale: SuiteScale, rng: random.Random, registry: VarRegistry) -> int:
    cases = 0
    for shape in shape_corpus(scale.chain_corpus_edges, 4):
        graph = with_labels(shape)
        subject = _describe(shape)
        expect_equal("chain definition", subject, ch_from_definition(graph, registry),
                     ch_poly(graph, registry))
        expect_equal("sheaf definition", subject, sh_from_definition(graph, registry),
                     sh_poly(graph, registry))
        cases += 1
    for shape in shape_corpus(scale.count_corpus_edges, 4):
        flows, tensions = flow_poly(shape, registry), tension_poly(shape, registry)
        for q in (2, 3, 4, 5):
            subject = f"{_describe(shape)} at q={q}"
            expect_count("flow count", subject, eval_int(flows, {"q": q}),
                         count_nowhere_zero_flows(shape, q))
            expect_count("tension count", subject, eval_int(tensions, {"q": q}),
                         count_nowhere_zero_tensions(shape, q))
        cases += 1
    return cases


def check_rational(scale: SuiteScale, rng: random.Random, registry: VarRegistry) -> int:
    values = (-2, -1, 1, 2)
    batch = words(range(1, scale.word_exhaustive_length + 1), values)
    for _ in range(scale.word_samples):
        length = rng.choice(scale.word_sampled_lengths)
        batch.append(RationalWord(tuple(rng.choice(values) for _ in range(length))))
    for _ in range(scale.word_random):
        length = rng.randint(1, scale.word_exhaustive_length)
        batch.append(RationalWord(tuple(rng.choice((-3, -2, -1, 1, 2, 3)) for _ in range(length))))
    for word in batch:
        subject = f"word {word}"
        fast = bracket_rational(word, registry).poly
        expect_equal("transfer vs oracle", subject, fast, bracket_via_oracle(word, registry).poly)
        if len(word) <= 2:
            expect_equal("closed form vs transfer", subject, fast, transfer_bracket(word, registry).poly)

    span = [m for m in range(-scale.twist_range, scale.twist_range + 1) if m]
    for m1, m2 in product(span, repeat=2):
        word = RationalWord((m1, m2))
        subject = f"twist {word}"
        closed = bracket_twist(m1, m2, registry).poly
        expect_equal("twist vs transfer", subject, closed, transfer_bracket(word, registry).poly)
        expect_equal("twist vs oracle", subject, closed, bracket_via_oracle(word, registry).poly)
    return len(batch) + len(span) ** 2


def check_theta(scale: SuiteScale, rng: random.Random, registry: VarRegistry) -> int:
    triples = list(product(range(1, scale.theta_range + 1), repeat=3))
    signed = [m for m in range(-3, 4) if m]
    triples += [tuple(rng.choice(signed) for _ in range(3)) for _ in range(scale.theta_random)]
    for m1, m2, m3 in triples:
        expect_equal("theta", f"({m1},{m2},{m3})", bracket_theta(m1, m2, m3, registry).poly,
                     bracket_theta_via_oracle(m1, m2, m3, registry).poly)
    return len(triples)


def check_duality(pairs: Sequence[DualPair], registry: VarRegistry) -> int:
    for name, graph, dual in pairs:
        expect_equal("duality", name, q_poly(graph, registry), q_poly(dual, registry))
    return len(pairs)


def with_parallel_twin(graph: LabeledGraph, eid: str) -> LabeledGraph:
    """Add an opposite-sign edge parallel to eid"""
    edge = graph.edge(eid)
    twin = Edge(f"{eid}.twin", edge.u, edge.v, edge.attr.flipped())
    return LabeledGraph(graph.vertices, graph.edges + (twin,), graph.kind)


def with_series_twin(graph: LabeledGraph, eid: str) -> LabeledGraph:
    """Subdivide eid into two edges of opposite signs through a new vertex"""
    edge = graph.edge(eid)
    middle = graph.vertices
    edges = tuple(e for e in graph.edges if e.id != eid) + (
        Edge(eid, edge.u, middle, edge.attr),
        Edge(f"{eid}.twin", middle, edge.v, edge.attr.flipped()),
    )
    return LabeledGraph(graph.vertices + 1, edges, graph.kind)


def check_reidemeister2(scale: SuiteScale, rng: random.Random, registry: VarRegistry) -> int:
    """A +/- pair in parallel brackets like a deletion, in series like a contraction"""
    cases = 0
    while cases < scale.mirror:
        graph = random_multigraph(rng, 5, max_vertices=4, min_edges=1)
        eid = rng.choice(graph.edge_ids())
        subject = f"{_describe(graph)} at {eid}"
        expect_equal("parallel cancellation", subject,
                     kauffman_bracket(with_parallel_twin(graph, eid), registry).poly,
                     kauffman_bracket(delete(graph, eid), registry).poly)
        if not graph.edge(eid).is_loop:
            expect_equal("series cancellation", subject,
                         kauffman_bracket(with_series_twin(graph, eid), registry).poly,
                         kauffman_bracket(contract(graph, eid), registry).poly)
        cases += 1
    return cases


def check_mirror(scale: SuiteScale, rng: random.Random, registry: VarRegistry) -> int:
    for _ in range(scale.mirror):
        graph = random_multigraph(rng, 6, max_vertices=4)
        expect_equal("graph mirror", _describe(graph), kauffman_bracket(mirror(graph), registry).poly,
                     kauffman_bracket(graph, registry).mirrored().poly)
        word = RationalWord(tuple(rng.choice((-3, -2, -1, 1, 2, 3)) for _ in range(rng.randint(1, 6))))
        expect_equal("word mirror", f"word {word}", bracket_rational(word.mirrored(), registry).poly,
                     bracket_rational(word, registry).mirrored().poly)
    return 2 * scale.mirror


def run_suite(suite: Suite, seed: int, dual_pairs: Sequence[DualPair] = (),
              registry: Optional[VarRegistry] = None) -> SuiteReport:
    """
    Run every oracle-equivalence check at the scale of the suite

    Args:
        suite: small or full
        seed: Seed of the randomized checks
        dual_pairs: Stored dual-pair fixtures
        registry: Variable registry

    Returns:
        Case counts per check

    Raises:
        OracleMismatchError: On the first disagreement
    """
    registry = registry if registry is not None else DEFAULT_REGISTRY
    scale = SCALES[suite]
    rng = random.Random(seed)
    report = SuiteReport(suite)
    checks: List[Tuple[str, Callable[[], int]]] = [
        ("q routes", lambda: check_q_routes(scale, rng, registry)),
        ("w routes", lambda: check_w_routes(scale, rng, registry)),
        ("replacement", lambda: check_replacement(scale, rng, registry)),
        ("corollaries", lambda: check_corollaries(scale, rng, registry)),
        ("chain/sheaf", lambda: check_chain_sheaf(scale, rng, registry)),
        ("rational", lambda: check_rational(scale, rng, registry)),
        ("theta", lambda: check_theta(scale, rng, registry)),
        ("duality", lambda: check_duality(dual_pairs, registry)),
        ("mirror", lambda: check_mirror(scale, rng, registry)),
        ("reidemeister II", lambda: check_reidemeister2(scale, rng, registry)),
    ]
    for name, check in checks:
        cases = check()
        report.add(name, cases)
        logger.info(f"[{suite.value}] {name}: {cases} cases ok")
    return report
