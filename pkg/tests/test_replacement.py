import pytest

from conftest import MINUS, PLUS, signed
from core.errors import InputError, ReplacementRingError, ZeroReplacementError
from core.polyring import KauffmanSymbols
from core.replacement import (
    Directive,
    DirectiveKind,
    ReplacementSpec,
    build_replaced,
    chain_reduce,
    q_gc_via_chain_poly,
    q_gs_via_sheaf_poly,
    q_hat_via_lemmas,
    q_hat_via_recursion,
    q_hat_via_w,
    replacement_weights,
    sheaf_reduce,
    spec_from_document,
    spec_to_document,
)
from core.signed_tutte import q_poly

GRAPHS = [
    signed(2, (0, 1, "+")),
    signed(1, (0, 0, "-")),
    signed(2, (0, 1, "+"), (0, 1, "-")),
    signed(3, (0, 1, "+"), (1, 2, "-"), (2, 0, "+")),
    signed(3, (0, 1, "-"), (1, 1, "+"), (1, 2, "+")),
]


def mixed_spec(graph, amounts):
    kinds = (DirectiveKind.CHAIN, DirectiveKind.SHEAF)
    return ReplacementSpec({
        eid: Directive(kinds[i % 2], amounts[i % len(amounts)]) for i, eid in enumerate(graph.edge_ids())
    })


def test_build_replaced_chain_and_sheaf():
    graph = signed(2, (0, 1, "+"), (0, 1, "-"))
    spec = ReplacementSpec({"e1": Directive.chain(3), "e2": Directive.sheaf(-2)})
    replaced = build_replaced(graph, spec)
    assert replaced.graph.vertices == 4
    assert [(e.id, e.u, e.v, e.attr) for e in replaced.graph.edges] == [
        ("e1.1", 0, 2, PLUS), ("e1.2", 2, 3, PLUS), ("e1.3", 3, 1, PLUS),
        ("e2.1", 0, 1, PLUS), ("e2.2", 0, 1, PLUS),
    ]
    assert replaced.provenance["e1.2"] == "e1"
    assert replaced.provenance["e2.2"] == "e2"


def test_chain_on_loop_closes_a_cycle():
    graph = signed(1, (0, 0, "-"))
    replaced = build_replaced(graph, ReplacementSpec({"e1": Directive.chain(2)})).graph
    assert replaced.vertices == 2
    assert [(e.u, e.v, e.attr) for e in replaced.edges] == [(0, 1, MINUS), (1, 0, MINUS)]


def test_zero_directive():
    with pytest.raises(ZeroReplacementError):
        Directive.chain(0)


def test_spec_must_match_graph():
    graph = signed(2, (0, 1, "+"), (0, 1, "+"))
    with pytest.raises(InputError):
        ReplacementSpec({"e1": Directive.chain(1)}).check_graph(graph)
    with pytest.raises(InputError):
        ReplacementSpec.uniform(graph, DirectiveKind.CHAIN, 1).check_graph(signed(2, (0, 1, "+")))


def test_spec_documents():
    spec = spec_from_document({"e2": {"kind": "sheaf", "n": -1}, "e1": {"kind": "chain", "n": 2}})
    assert spec.directive("e1") == Directive.chain(2)
    assert spec.has_negative()
    assert spec_to_document(spec) == {"e1": {"kind": "chain", "n": 2}, "e2": {"kind": "sheaf", "n": -1}}


@pytest.mark.parametrize("document, error, field", [
    ({"e1": {"kind": "braid", "n": 1}}, InputError, "spec.e1.kind"),
    ({"e1": {"kind": "chain", "n": 0}}, ZeroReplacementError, "spec.e1.n"),
    ({"e1": {"kind": "chain", "n": "2"}}, InputError, "spec.e1.n"),
    ({"e1": 3}, InputError, "spec.e1"),
    ([], InputError, "spec"),
])
def test_bad_spec_documents(document, error, field):
    with pytest.raises(error) as excinfo:
        spec_from_document(document)
    assert excinfo.value.field == field


def test_unit_replacement_weights_are_the_sign_weights(reg):
    s = KauffmanSymbols.full(reg)
    for directive in (Directive.chain(1), Directive.sheaf(1)):
        assert replacement_weights(directive, PLUS, s) == (s.A, s.B)
        assert replacement_weights(directive, MINUS, s) == (s.B, s.A)


def test_reduction_steps(reg, poly):
    s = KauffmanSymbols.full(reg)
    graph = signed(2, (0, 1, "+"), (0, 1, "+"))
    chain = chain_reduce(graph, "e1", 2, s)
    assert chain.deletion == poly("2*A*B + B^2*d")
    assert chain.contraction == poly("A^2")
    sheaf = sheaf_reduce(signed(1, (0, 0, "+")), "e1", 2, s)
    assert sheaf.deletion == poly("B^2")
    assert sheaf.contraction == poly("A^2*d^2 + 2*A*B*d")


def test_unit_spec_gives_q(reg):
    for graph in GRAPHS:
        spec = ReplacementSpec.uniform(graph, DirectiveKind.SHEAF, 1)
        assert q_hat_via_w(graph, spec, registry=reg) == q_poly(graph, reg)


def test_two_chain_on_bridge_squares_x(reg):
    s = KauffmanSymbols.full(reg)
    graph = signed(2, (0, 1, "+"))
    spec = ReplacementSpec({"e1": Directive.chain(2)})
    assert q_hat_via_recursion(graph, spec, registry=reg) == s.X ** 2


@pytest.mark.parametrize("graph", GRAPHS)
@pytest.mark.parametrize("amounts", [(1, 2), (3, 1), (2, 2)])
def test_routes_agree_in_full_ring(graph, amounts, reg):
    spec = mixed_spec(graph, amounts)
    direct = q_hat_via_recursion(graph, spec, registry=reg)
    assert q_hat_via_w(graph, spec, registry=reg) == direct
    assert q_hat_via_lemmas(graph, spec, registry=reg) == direct


@pytest.mark.parametrize("graph", GRAPHS)
@pytest.mark.parametrize("amounts", [(-1, 2), (2, -3), (-2, -1)])
def test_routes_agree_in_bracket_ring(graph, amounts, reg):
    spec = mixed_spec(graph, amounts)
    direct = q_hat_via_recursion(graph, spec, specialized=True, registry=reg)
    assert q_hat_via_w(graph, spec, specialized=True, registry=reg) == direct
    assert q_hat_via_lemmas(graph, spec, specialized=True, registry=reg) == direct


def test_negative_amount_needs_bracket_ring(reg):
    graph = signed(2, (0, 1, "+"), (0, 1, "+"))
    spec = ReplacementSpec({"e1": Directive.chain(2), "e2": Directive.sheaf(-1)})
    for route in (q_hat_via_recursion, q_hat_via_w, q_hat_via_lemmas):
        with pytest.raises(ReplacementRingError) as excinfo:
            route(graph, spec, registry=reg)
        assert excinfo.value.field == "spec.e2.n"


def test_sheaf_on_bridge_gives_hopf_bracket(reg):
    graph = signed(2, (0, 1, "+"))
    spec = ReplacementSpec({"e1": Directive.sheaf(2)})
    assert str(q_hat_via_w(graph, spec, specialized=True, registry=reg)) == "-A^4 - A^-4"


@pytest.mark.parametrize("graph", GRAPHS)
@pytest.mark.parametrize("amounts", [(1,), (2, 3), (3, 1, 2)])
def test_polynomial_routes_in_full_ring(graph, amounts, reg):
    for kind, route in ((DirectiveKind.CHAIN, q_gc_via_chain_poly),
                        (DirectiveKind.SHEAF, q_gs_via_sheaf_poly)):
        lengths = {eid: amounts[i % len(amounts)] for i, eid in enumerate(graph.edge_ids())}
        spec = ReplacementSpec({eid: Directive(kind, n) for eid, n in lengths.items()})
        assert route(graph, lengths, registry=reg) == q_hat_via_w(graph, spec, registry=reg)


@pytest.mark.parametrize("graph", GRAPHS)
@pytest.mark.parametrize("amounts", [(-1,), (2, -3), (-2, 1, -1)])
def test_polynomial_routes_in_bracket_ring(graph, amounts, reg):
    for kind, route in ((DirectiveKind.CHAIN, q_gc_via_chain_poly),
                        (DirectiveKind.SHEAF, q_gs_via_sheaf_poly)):
        lengths = {eid: amounts[i % len(amounts)] for i, eid in enumerate(graph.edge_ids())}
        spec = ReplacementSpec({eid: Directive(kind, n) for eid, n in lengths.items()})
        assert (route(graph, lengths, specialize=True, registry=reg)
                == q_hat_via_w(graph, spec, specialized=True, registry=reg))


def test_polynomial_route_needs_bracket_ring_for_negative(reg):
    with pytest.raises(ReplacementRingError):
        q_gc_via_chain_poly(signed(2, (0, 1, "+")), {"e1": -2}, registry=reg)
