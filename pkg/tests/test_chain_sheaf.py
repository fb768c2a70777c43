import pytest

from conftest import labeled, signed
from core.chain_sheaf import (
    ch_from_definition,
    ch_poly,
    chromatic_poly,
    count_nowhere_zero_flows,
    count_nowhere_zero_tensions,
    flow_poly,
    register_labels,
    sh_from_definition,
    sh_poly,
    tension_poly,
)
from core.corpus import shape_corpus, with_labels
from core.errors import EnumerationCapError, InputError
from core.polyring import eval_int
from utils.limiter import limiter

DIGON = labeled(2, (0, 1, "a"), (1, 0, "b"))
TRIANGLE = signed(3, (0, 1, "+"), (1, 2, "+"), (2, 0, "+"))


def test_chain_and_sheaf_of_digon(poly, reg):
    assert ch_poly(DIGON, reg) == poly("a*b - w")
    assert sh_poly(DIGON, reg) == poly("a*b - w")


def test_single_edges(poly, reg):
    assert ch_poly(labeled(2, (0, 1, "a")), reg) == poly("a")
    assert sh_poly(labeled(2, (0, 1, "a")), reg) == poly("a - w")
    assert ch_poly(labeled(1, (0, 0, "a")), reg) == poly("a - w")
    assert sh_poly(labeled(1, (0, 0, "a")), reg) == poly("a")


def test_edgeless_is_one(reg):
    assert ch_poly(labeled(3), reg) == 1
    assert sh_poly(labeled(3), reg) == 1


def test_reserved_label_rejected(reg):
    with pytest.raises(InputError) as excinfo:
        ch_poly(labeled(2, (0, 1, "a"), (0, 1, "d")), reg)
    assert excinfo.value.field == "edges[1].label"


def test_signed_graph_rejected(reg):
    with pytest.raises(InputError):
        register_labels(TRIANGLE, reg)


@pytest.mark.parametrize("shape", shape_corpus(max_edges=3, max_vertices=3))
def test_recursions_match_definitions(shape, reg):
    graph = with_labels(shape)
    assert ch_from_definition(graph, reg) == ch_poly(graph, reg)
    assert sh_from_definition(graph, reg) == sh_poly(graph, reg)


def test_flow_and_tension_polynomials(poly, reg):
    assert flow_poly(TRIANGLE, reg) == poly("q - 1")
    assert tension_poly(TRIANGLE, reg) == poly("q^2 - 3*q + 2")
    assert chromatic_poly(TRIANGLE, reg) == poly("q^3 - 3*q^2 + 2*q")
    assert flow_poly(signed(2, (0, 1, "+")), reg) == 0
    assert tension_poly(signed(1, (0, 0, "+")), reg) == 0


@pytest.mark.parametrize("shape", shape_corpus(max_edges=3, max_vertices=3))
@pytest.mark.parametrize("q", [2, 3, 4])
def test_counts_match_polynomials(shape, q, reg):
    assert eval_int(flow_poly(shape, reg), {"q": q}) == count_nowhere_zero_flows(shape, q)
    assert eval_int(tension_poly(shape, reg), {"q": q}) == count_nowhere_zero_tensions(shape, q)


def test_counting_respects_the_cap():
    limiter.set_cap(2)
    with pytest.raises(EnumerationCapError) as excinfo:
        count_nowhere_zero_flows(TRIANGLE, 3)
    assert excinfo.value.field == "edges"
    with pytest.raises(EnumerationCapError) as excinfo:
        count_nowhere_zero_tensions(TRIANGLE, 3)
    assert excinfo.value.field == "vertices"
    assert "3 vertices" in excinfo.value.message


def test_counting_rejects_bad_modulus():
    with pytest.raises(InputError):
        count_nowhere_zero_flows(TRIANGLE, 0)
