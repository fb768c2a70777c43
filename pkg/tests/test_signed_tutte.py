from fractions import Fraction

import pytest

from conftest import signed
from core.errors import EnumerationCapError, InputError
from core.multigraph import disjoint_union, graph_from_document, mirror, one_point_union
from core.polyring import MultiPoly, canonical_string
from core.signed_tutte import (
    BracketValue,
    jones,
    kauffman_bracket,
    normalized_bracket,
    q_cache,
    q_poly,
    q_via_state_sum,
)

HOPF = signed(2, (0, 1, "+"), (0, 1, "+"))
TREFOIL = signed(2, (0, 1, "+"), (0, 1, "+"), (0, 1, "+"))


def test_q_of_edgeless_graph(reg):
    assert canonical_string(q_poly(signed(3), reg)) == "d^2"
    assert q_poly(signed(1), reg) == 1


@pytest.mark.parametrize("graph, expected", [
    (signed(2, (0, 1, "+")), "A + B*d"),
    (signed(2, (0, 1, "-")), "A*d + B"),
    (signed(1, (0, 0, "+")), "A*d + B"),
    (signed(1, (0, 0, "-")), "A + B*d"),
    (HOPF, "A^2*d + 2*A*B + B^2*d"),
    (signed(2, (0, 1, "-"), (0, 1, "-")), "A^2*d + 2*A*B + B^2*d"),
])
def test_q_small_graphs(reg, poly, graph, expected):
    assert q_poly(graph, reg) == poly(expected)


def test_q_needs_signed_graph(reg):
    colored = graph_from_document({"vertices": 2, "edges": [{"id": "e1", "u": 0, "v": 1, "color": "r"}]})
    with pytest.raises(InputError):
        q_poly(colored, reg)


@pytest.mark.parametrize("graph", [
    signed(3, (0, 1, "+"), (1, 2, "-"), (2, 0, "+")),
    signed(3, (0, 1, "+"), (0, 1, "-"), (1, 1, "-"), (1, 2, "+")),
    signed(4, (0, 1, "-"), (2, 3, "+"), (3, 3, "+")),
])
def test_recursion_matches_state_sum(reg, graph):
    assert q_poly(graph, reg) == q_via_state_sum(graph, reg)


def test_state_sum_respects_cap(reg):
    with pytest.raises(EnumerationCapError):
        q_via_state_sum(TREFOIL, reg, cap=2)


def test_product_laws(reg):
    first = signed(2, (0, 1, "+"), (1, 1, "-"))
    second = graph_from_document({"vertices": 2, "edges": [
        {"id": "f1", "u": 0, "v": 1, "sign": "-"},
        {"id": "f2", "u": 0, "v": 1, "sign": "+"},
    ]})
    d = MultiPoly.var("d", reg)
    q1, q2 = q_poly(first, reg), q_poly(second, reg)
    assert q_poly(disjoint_union(first, second), reg) == d * q1 * q2
    assert q_poly(one_point_union(first, second, 1, 0), reg) == q1 * q2


def test_memoization_does_not_change_results(reg):
    graph = signed(4, (0, 1, "+"), (1, 2, "-"), (2, 3, "+"), (3, 0, "-"), (0, 2, "+"))
    cached = q_poly(graph, reg)
    assert q_cache.stats()["entries"] > 0
    q_cache.clear()
    q_cache.enabled = False
    assert q_poly(graph, reg) == cached
    assert len(q_cache) == 0


def test_hopf_and_trefoil_brackets(reg):
    assert str(kauffman_bracket(HOPF, reg)) == "-A^4 - A^-4"
    assert str(kauffman_bracket(TREFOIL, reg)) == "A^7 - A^3 - A^-5"


def test_bracket_of_mirror_inverts_a(reg):
    bracket = kauffman_bracket(TREFOIL, reg)
    assert kauffman_bracket(mirror(TREFOIL), reg) == bracket.mirrored()
    assert str(bracket.mirrored()) == "-A^5 - A^-3 + A^-7"


def test_normalized_bracket(reg, poly):
    assert normalized_bracket(kauffman_bracket(HOPF, reg), -2) == poly("-A^10 - A^2")


def test_jones_hopf(reg):
    value = jones(kauffman_bracket(HOPF, reg), writhe=-2)
    assert str(value) == "-t^-1/2 - t^-5/2"
    assert value.coefficient(Fraction(-5, 2)) == -1
    assert value.coefficient(Fraction(1, 3)) == 0
    assert value.to_json_terms() == {"-1/2": -1, "-5/2": -1}


def test_jones_trefoil(reg):
    assert str(jones(kauffman_bracket(TREFOIL, reg), writhe=-3)) == "t^-1 + t^-3 - t^-4"


def test_jones_unknot(reg):
    assert str(jones(kauffman_bracket(signed(1), reg), writhe=0)) == "1"


def test_jones_rejects_other_variables(reg, poly):
    with pytest.raises(InputError):
        jones(BracketValue(poly("A + d")), 0)
