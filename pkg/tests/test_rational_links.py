import pytest

from core.errors import InputError, ZeroReplacementError
from core.rational_links import (
    Parity,
    RationalWord,
    benchmark,
    bracket_rational,
    bracket_theta,
    bracket_theta_via_oracle,
    bracket_torus2,
    bracket_twist,
    bracket_via_oracle,
    build_rational_graph,
    jones_rational,
    theta_graph,
    transfer_bracket,
    words,
)
from core.replacement import DirectiveKind


def word(*terms):
    return RationalWord(terms)


@pytest.mark.parametrize("terms, expected", [
    ((1, 1, 1), "-A^5 - A^-3 + A^-7"),
    ((1, 1), "-A^4 - A^-4"),
    ((2,), "-A^4 - A^-4"),
    ((3,), "A^7 - A^3 - A^-5"),
])
def test_goldens(reg, terms, expected):
    assert str(bracket_rational(word(*terms), reg)) == expected
    assert str(transfer_bracket(word(*terms), reg)) == expected
    assert str(bracket_via_oracle(word(*terms), reg)) == expected


def test_theta_golden(reg):
    assert str(bracket_theta(1, 1, 1, reg)) == "A^7 - A^3 - A^-5"
    assert bracket_theta_via_oracle(1, 1, 1, reg) == bracket_theta(1, 1, 1, reg)


def test_word_validation():
    with pytest.raises(ZeroReplacementError) as excinfo:
        word(1, 0, 2)
    assert excinfo.value.field == "word[1]"
    with pytest.raises(InputError):
        RationalWord(())


def test_word_parity_and_mirror():
    assert word(1, 2, 3).parity is Parity.HORIZONTAL
    assert word(1, 2).parity is Parity.VERTICAL
    assert word(1, -2).mirrored() == word(-1, 2)
    assert str(word(1, -2)) == "1,-2"


def test_rational_graph_layout():
    graph, spec = build_rational_graph(word(2, 3, 4))
    assert graph.vertices == 3
    assert [(e.id, e.u, e.v) for e in graph.edges] == [("e1", 0, 1), ("e2", 1, 2), ("e3", 2, 0)]
    assert [spec.directive(eid).kind for eid in ("e1", "e2", "e3")] == [
        DirectiveKind.SHEAF, DirectiveKind.CHAIN, DirectiveKind.SHEAF,
    ]
    graph, spec = build_rational_graph(word(2, 3))
    assert [(e.u, e.v) for e in graph.edges] == [(0, 1), (0, 1)]
    assert spec.directive("e1").kind is DirectiveKind.CHAIN


@pytest.mark.parametrize("terms", [
    (1, -2, 1), (2, 1, -1, 2), (-1, 2, 2, -1, 1), (1, 1, 1, 1, 1, 1), (3, -1, 2),
])
def test_transfer_matches_oracle(reg, terms):
    assert transfer_bracket(word(*terms), reg) == bracket_via_oracle(word(*terms), reg)


@pytest.mark.parametrize("m1, m2", [(1, 1), (2, -1), (-2, 3), (3, 3), (-1, -2)])
def test_twist_closed_form(reg, m1, m2):
    closed = bracket_twist(m1, m2, reg)
    assert closed == transfer_bracket(word(m1, m2), reg)
    assert closed == bracket_via_oracle(word(m1, m2), reg)


@pytest.mark.parametrize("m", [-3, -1, 1, 2, 4])
def test_torus_closed_form(reg, m):
    assert bracket_torus2(m, reg) == bracket_via_oracle(word(m), reg)


@pytest.mark.parametrize("triple", [(1, 2, 1), (2, -1, 1), (-1, 1, -2), (1, 1, 3)])
def test_theta_closed_form(reg, triple):
    assert bracket_theta(*triple, reg) == bracket_theta_via_oracle(*triple, reg)


def test_theta_graph_is_three_parallel_edges():
    graph, spec = theta_graph(1, 2, 3)
    assert len(graph.edges) == 3 and graph.vertices == 2
    assert spec.directive("e2").kind is DirectiveKind.SHEAF


def test_mirror_word_inverts_a(reg):
    w = word(2, -1, 3)
    assert bracket_rational(w.mirrored(), reg) == bracket_rational(w, reg).mirrored()


def test_jones_of_hopf(reg):
    assert str(jones_rational(word(2), -2, reg)) == "-t^-1/2 - t^-5/2"


def test_words_enumeration():
    batch = words([1, 2], [-1, 1])
    assert len(batch) == 2 + 4
    assert word(-1, 1) in batch


def test_benchmark_agrees_and_times(reg):
    result = benchmark(word(1, 2, 1, 1), repeat=1, registry=reg)
    assert result.transfer_seconds >= 0
    assert result.oracle_seconds >= 0
    assert result.speedup > 0


def test_transfer_route_is_fast_at_twenty_crossings(reg):
    # sum of |m| is 20
    result = benchmark(word(2, 3, 2, 3, 2, 3, 2, 3), repeat=5, registry=reg)
    assert result.transfer_seconds < 0.05
    assert result.speedup >= 10
