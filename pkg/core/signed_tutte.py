import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional

from core.colored_tutte import ColorWeights, WParams, w_state_sum
from core.errors import InputError
from core.multigraph import AttributeKind, LabeledGraph, Sign, contract, delete, relabel
from core.polyring import (
    DEFAULT_REGISTRY,
    KauffmanSymbols,
    MultiPoly,
    VarRegistry,
    canonical_string,
    substitute,
)
from utils.cache import MemoCache

logger = logging.getLogger(__name__)

# keys hold their registry; the LRU bound releases stale ones
Q_CACHE_ENTRIES = 100_000
q_cache = MemoCache("q_poly", max_entries=Q_CACHE_ENTRIES)


def _check_signed(graph: LabeledGraph):
    if graph.edges and graph.kind is not AttributeKind.SIGN:
        raise InputError("Q-polynomial needs a signed graph", field="edges")


def q_poly(graph: LabeledGraph, registry: Optional[VarRegistry] = None) -> MultiPoly:
    """
    Q[G] in A, B, d by deletion-contraction

    Loops are stripped first (Y per + loop, X per - loop); then the
    smallest-id edge e is split: Q = A*Q[G/e] + B*Q[G-e] for a + edge and
    Q = A*Q[G-e] + B*Q[G/e] for a - edge. Q[E_n] = d^(n-1).

    Args:
        graph: Signed graph
        registry: Variable registry of the result

    Returns:
        The Q-polynomial
    """
    _check_signed(graph)
    registry = registry if registry is not None else DEFAULT_REGISTRY
    symbols = KauffmanSymbols.full(registry)
    value = _q_step(graph, symbols)
    q_cache.log_stats()
    return value


def _q_step(graph: LabeledGraph, symbols: KauffmanSymbols) -> MultiPoly:
    if not graph.edges:
        return symbols.d ** (graph.vertices - 1)

    loops = [e for e in graph.edges if e.is_loop]
    if loops:
        factor = MultiPoly.one(symbols.A.registry)
        rest = graph
        for edge in loops:
            factor = factor * (symbols.Y if edge.attr is Sign.PLUS else symbols.X)
            rest = delete(rest, edge.id)
        return factor * _q_cached(rest, symbols)

    eid = graph.edge_ids()[0]
    contracted = _q_cached(contract(graph, eid), symbols)
    deleted = _q_cached(delete(graph, eid), symbols)
    if graph.edge(eid).attr is Sign.PLUS:
        return symbols.A * contracted + symbols.B * deleted
    return symbols.A * deleted + symbols.B * contracted


def _q_cached(graph: LabeledGraph, symbols: KauffmanSymbols) -> MultiPoly:
    key = (symbols.A.registry, graph.canonical_key())
    return q_cache.get_or_compute(key, lambda: _q_step(graph, symbols))


SIGN_COLORS = {Sign.PLUS: "+", Sign.MINUS: "-"}


def sign_color_weights(registry: Optional[VarRegistry] = None) -> ColorWeights:
    """Calibrated weights: + -> (x=A, y=B), - -> (x=B, y=A)"""
    symbols = KauffmanSymbols.full(registry)
    return ColorWeights({"+": (symbols.A, symbols.B), "-": (symbols.B, symbols.A)})


def q_via_state_sum(graph: LabeledGraph, registry: Optional[VarRegistry] = None,
                    cap: Optional[int] = None) -> MultiPoly:
    """Q[G] as the W state sum at t = z1 = z2 = d under the sign colors"""
    _check_signed(graph)
    registry = registry if registry is not None else DEFAULT_REGISTRY
    colored = relabel(graph, lambda e: SIGN_COLORS[e.attr], AttributeKind.COLOR)
    d = MultiPoly.var("d", registry)
    return w_state_sum(colored, sign_color_weights(registry), WParams.uniform(d), cap)


@dataclass(frozen=True)
class BracketValue:
    """Kauffman bracket, a Laurent polynomial in A only"""

    poly: MultiPoly

    def mirrored(self) -> "BracketValue":
        """The bracket of the mirror diagram (A -> A^-1)"""
        A = MultiPoly.var("A", self.poly.registry)
        return BracketValue(substitute(self.poly, {"A": A ** -1}))

    def __str__(self) -> str:
        return canonical_string(self.poly)


def kauffman_bracket(graph: LabeledGraph, registry: Optional[VarRegistry] = None) -> BracketValue:
    """<D> = Q[G] at B = A^-1, d = -A^2 - A^-2"""
    registry = registry if registry is not None else DEFAULT_REGISTRY
    symbols = KauffmanSymbols.bracket(registry)
    return BracketValue(symbols.specialize(q_poly(graph, registry)))


def normalized_bracket(bracket: BracketValue, writhe: int) -> MultiPoly:
    """(-A^3)^(-writhe) * <D>"""
    A = MultiPoly.var("A", bracket.poly.registry)
    return (-(A ** 3)) ** (-writhe) * bracket.poly


def _format_exponent(quarters: int) -> str:
    value = Fraction(quarters, 4)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class JonesValue:
    """Jones polynomial with exponents stored in units of t^(1/4)"""

    exponents: Dict[int, int]

    def coefficient(self, power: Fraction) -> int:
        quarters = power * 4
        if quarters.denominator != 1:
            return 0
        return self.exponents.get(int(quarters), 0)

    def __str__(self) -> str:
        if not self.exponents:
            return "0"
        pieces = []
        for position, quarters in enumerate(sorted(self.exponents, reverse=True)):
            coeff = self.exponents[quarters]
            if quarters == 0:
                body = ""
            elif quarters == 4:
                body = "t"
            else:
                body = f"t^{_format_exponent(quarters)}"
            magnitude = abs(coeff)
            if not body:
                text = str(magnitude)
            elif magnitude == 1:
                text = body
            else:
                text = f"{magnitude}*{body}"
            if position == 0:
                pieces.append(f"-{text}" if coeff < 0 else text)
            else:
                pieces.append(f"- {text}" if coeff < 0 else f"+ {text}")
        return " ".join(pieces)

    def to_json_terms(self) -> Dict[str, int]:
        return {_format_exponent(q): self.exponents[q] for q in sorted(self.exponents, reverse=True)}


def jones(bracket: BracketValue, writhe: int) -> JonesValue:
    """
    V(t) = (-A^3)^(-writhe) <D> at A = t^(-1/4)

    Args:
        bracket: Kauffman bracket of the diagram
        writhe: Writhe of the oriented diagram (user input)

    Returns:
        The Jones polynomial
    """
    normalized = normalized_bracket(bracket, writhe)
    registry = normalized.registry
    a_index = registry.index("A")
    exponents: Dict[int, int] = {}
    for mono, coeff in normalized.items():
        if any(exp for index, exp in enumerate(mono) if index != a_index):
            raise InputError("bracket must be a polynomial in A only", field="bracket")
        a_exp = mono[a_index] if a_index < len(mono) else 0
        exponents[-a_exp] = coeff
    return JonesValue(exponents)
