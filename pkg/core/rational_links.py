import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import List, Optional, Sequence, Tuple

import numpy

from core.errors import InputError, OracleMismatchError, ZeroReplacementError
from core.multigraph import LabeledGraph, Sign, make_graph
from core.polyring import DEFAULT_REGISTRY, KauffmanSymbols, VarRegistry, exact_div
from core.replacement import Directive, ReplacementSpec, build_replaced
from core.signed_tutte import BracketValue, JonesValue, jones, kauffman_bracket, q_cache
from utils.limiter import TimingCalculator

logger = logging.getLogger(__name__)


class Parity(str, Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


@dataclass(frozen=True)
class RationalWord:
    """Half-twist counts m1...mk of a rational link"""

    terms: Tuple[int, ...]

    def __post_init__(self):
        if not self.terms:
            raise InputError("a rational word needs at least one term", field="word")
        for position, m in enumerate(self.terms):
            if m == 0:
                raise ZeroReplacementError("rational word terms must be nonzero",
                                           field=f"word[{position}]")
        object.__setattr__(self, "terms", tuple(self.terms))

    @property
    def parity(self) -> Parity:
        return Parity.HORIZONTAL if len(self.terms) % 2 else Parity.VERTICAL

    def mirrored(self) -> "RationalWord":
        return RationalWord(tuple(-m for m in self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        return ",".join(map(str, self.terms))


def _validate(*terms: int):
    RationalWord(terms)


def _symbols(registry: Optional[VarRegistry]) -> KauffmanSymbols:
    return KauffmanSymbols.bracket(registry if registry is not None else DEFAULT_REGISTRY)


def transfer_matrix(chain_m: int, sheaf_m: int, s: KauffmanSymbols) -> numpy.ndarray:
    """
    Transfer matrix of one chain/sheaf stage

    Rows are the incoming state, columns the outgoing one; state 1 means
    the apex u and the current end vertex are disconnected, state 2 that
    they are connected.
    """
    Xc, Ac = s.X ** chain_m, s.A ** chain_m
    Ys, Bs = s.Y ** sheaf_m, s.B ** sheaf_m
    sheaf_x = exact_div(Ys - Bs, s.d)
    return numpy.array([
        [Xc * Bs * s.d, Xc * sheaf_x],
        [(Xc - Ac) * Bs * s.d, (Xc - Ac) * sheaf_x + Ac * Ys * s.d],
    ], dtype=object)


def initial_state(word: RationalWord, s: KauffmanSymbols) -> Tuple[numpy.ndarray, int]:
    """
    Boundary vector and the number of transfer stages it leaves

    Returns:
        Tuple of (X0, index of the first term handled by the transfer stages)
    """
    m = word.terms
    if word.parity is Parity.HORIZONTAL:
        Bm = s.B ** m[0]
        return numpy.array([Bm * s.d ** 2, s.Y ** m[0] - Bm], dtype=object), 1
    chain_y = s.X ** m[0] - s.A ** m[0]
    start = numpy.array([
        chain_y * s.B ** m[1] * s.d ** 2,
        s.A ** m[0] * s.Y ** m[1] * s.d ** 2 + chain_y * (s.Y ** m[1] - s.B ** m[1]),
    ], dtype=object)
    return start, 2


def transfer_bracket(word: RationalWord, registry: Optional[VarRegistry] = None) -> BracketValue:
    """
    Bracket of a rational link by the transfer-matrix product

    <w> = d^-(n+1) X0^T (A_1 ... A_n) J for horizontal words of length 2n+1
    and d^-(n+2) X0^T (A_1 ... A_n) J for vertical words of length 2n+2.
    Valid for every length, including n = 0.

    Args:
        word: Rational word
        registry: Variable registry

    Returns:
        The Kauffman bracket
    """
    s = _symbols(registry)
    state, first = initial_state(word, s)
    terms = word.terms
    stages = (len(terms) - first) // 2
    for i in range(stages):
        chain_m, sheaf_m = terms[first + 2 * i], terms[first + 2 * i + 1]
        state = state @ transfer_matrix(chain_m, sheaf_m, s)
    total = state[0] + state[1]
    exponent = stages + (1 if word.parity is Parity.HORIZONTAL else 2)
    return BracketValue(exact_div(total, s.d ** exponent))


def bracket_torus2(m1: int, registry: Optional[VarRegistry] = None) -> BracketValue:
    """Bracket of the (m1, 2)-torus link: (Y^m1 - B^m1)/d + B^m1 d"""
    _validate(m1)
    s = _symbols(registry)
    return BracketValue(exact_div(s.Y ** m1 - s.B ** m1, s.d) + s.B ** m1 * s.d)


def bracket_twist(m1: int, m2: int, registry: Optional[VarRegistry] = None) -> BracketValue:
    """Bracket of the twist link m1 m2 in closed form"""
    _validate(m1, m2)
    s = _symbols(registry)
    A = s.A
    minus_a4 = -(A ** 4)
    minus_a_inv4 = -(A ** -4)
    shift = A ** (m1 - m2)
    first = shift * (minus_a_inv4 ** m1 + minus_a4 ** m2 - 1)
    numerator = minus_a_inv4 ** (m1 - m2) - minus_a_inv4 ** m1 - minus_a4 ** m2 + 1
    second = shift * exact_div(numerator, A ** -4 + 2 + A ** 4)
    return BracketValue(first + second)


def bracket_rational(word: RationalWord, registry: Optional[VarRegistry] = None) -> BracketValue:
    """Bracket of a rational link; one- and two-term words use the closed forms"""
    if len(word) == 1:
        return bracket_torus2(word.terms[0], registry)
    if len(word) == 2:
        return bracket_twist(word.terms[0], word.terms[1], registry)
    return transfer_bracket(word, registry)


def build_rational_graph(word: RationalWord) -> Tuple[LabeledGraph, ReplacementSpec]:
    """
    Base graph and replacement spec of a rational link

    Vertex 0 is the apex u and vertices 1.. are v0, v1, .... Horizontal words
    put Sheaf(m1) on u-v0; vertical words put Chain(m1) and Sheaf(m2) in
    parallel on u-v0. Every later pair adds Chain on v(i-1)-v(i) and Sheaf
    on v(i)-u. All base edges are positive.
    """
    terms = word.terms
    edges: List[Tuple[str, int, int, Sign]] = []
    directives = {}

    def add(kind: str, m: int, u: int, v: int):
        eid = f"e{len(edges) + 1}"
        edges.append((eid, u, v, Sign.PLUS))
        directives[eid] = Directive.chain(m) if kind == "chain" else Directive.sheaf(m)

    if word.parity is Parity.HORIZONTAL:
        add("sheaf", terms[0], 0, 1)
        rest = terms[1:]
    else:
        add("chain", terms[0], 0, 1)
        add("sheaf", terms[1], 0, 1)
        rest = terms[2:]
    end = 1
    for i in range(0, len(rest), 2):
        add("chain", rest[i], end, end + 1)
        end += 1
        add("sheaf", rest[i + 1], end, 0)
    return make_graph(end + 1, edges), ReplacementSpec(directives)


def bracket_via_oracle(word: RationalWord, registry: Optional[VarRegistry] = None) -> BracketValue:
    """Bracket of the explicitly replaced graph by deletion-contraction"""
    graph, spec = build_rational_graph(word)
    return kauffman_bracket(build_replaced(graph, spec).graph, registry)


def theta_graph(m1: int, m2: int, m3: int) -> Tuple[LabeledGraph, ReplacementSpec]:
    """Three parallel edges carrying Chain(m1), Sheaf(m2), Chain(m3)"""
    graph = make_graph(2, [("e1", 0, 1, Sign.PLUS), ("e2", 0, 1, Sign.PLUS), ("e3", 0, 1, Sign.PLUS)])
    spec = ReplacementSpec({
        "e1": Directive.chain(m1),
        "e2": Directive.sheaf(m2),
        "e3": Directive.chain(m3),
    })
    return graph, spec


def bracket_theta(m1: int, m2: int, m3: int, registry: Optional[VarRegistry] = None) -> BracketValue:
    """
    Bracket of the theta-graph link family in closed form

    X^m1 B^m2 (X^m3 - A^m3)/d
      + (A^m1 d + (X^m1 - A^m1)/d) (Y^m2 - B^m2)/d (X^m3 - A^m3)/d
      + ((d^2 - 1) A^m1 + X^m1) Y^m2 A^m3 / d
    """
    _validate(m1, m2, m3)
    s = _symbols(registry)
    A, B, X, Y, d = s.A, s.B, s.X, s.Y, s.d
    chain1_y = exact_div(X ** m1 - A ** m1, d)
    chain3_y = exact_div(X ** m3 - A ** m3, d)
    sheaf_x = exact_div(Y ** m2 - B ** m2, d)
    first = X ** m1 * B ** m2 * chain3_y
    second = (A ** m1 * d + chain1_y) * sheaf_x * chain3_y
    third = exact_div(((d * d - 1) * A ** m1 + X ** m1) * Y ** m2 * A ** m3, d)
    return BracketValue(first + second + third)


def bracket_theta_via_oracle(m1: int, m2: int, m3: int,
                             registry: Optional[VarRegistry] = None) -> BracketValue:
    graph, spec = theta_graph(m1, m2, m3)
    return kauffman_bracket(build_replaced(graph, spec).graph, registry)


def jones_rational(word: RationalWord, writhe: int, registry: Optional[VarRegistry] = None) -> JonesValue:
    return jones(bracket_rational(word, registry), writhe)


@dataclass(frozen=True)
class BenchmarkResult:
    word: RationalWord
    transfer_seconds: float
    oracle_seconds: float

    @property
    def speedup(self) -> float:
        return TimingCalculator.speedup(self.transfer_seconds, self.oracle_seconds)


def benchmark(word: RationalWord, repeat: int = 3, registry: Optional[VarRegistry] = None) -> BenchmarkResult:
    """
    Time the transfer route against the deletion-contraction oracle

    The Q memo table is cleared before every oracle run so each run starts cold.
    """
    fast_value, fast = TimingCalculator.time_call(transfer_bracket, word, registry, repeat=repeat)

    def cold_oracle(w: RationalWord, r: Optional[VarRegistry]) -> BracketValue:
        q_cache.clear()
        return bracket_via_oracle(w, r)

    slow_value, slow = TimingCalculator.time_call(cold_oracle, word, registry, repeat=1)
    if fast_value != slow_value:
        raise OracleMismatchError(f"transfer and oracle brackets differ: {fast_value} != {slow_value}",
                                  field=f"word {word}")
    result = BenchmarkResult(word, fast, slow)
    logger.info(f"Benchmark {word}: transfer {fast * 1000:.2f} ms, oracle {slow * 1000:.2f} ms, "
                f"speedup {result.speedup:.1f}x")
    return result


def words(lengths: Sequence[int], values: Sequence[int]) -> List[RationalWord]:
    """Every word of the given lengths over the given term values"""
    return [RationalWord(terms) for k in lengths for terms in product(values, repeat=k)]
