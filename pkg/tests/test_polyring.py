import random
from fractions import Fraction

import pytest
import sympy as sp

from core.errors import InexactDivisionError, InputError, NonUnitPowerError, RegistryMismatchError
from core.polyring import (
    KauffmanSymbols,
    MultiPoly,
    VarRegistry,
    arith,
    canonical_string,
    eval_int,
    exact_div,
    parse_poly,
    power,
    substitute,
    to_json_terms,
)


def test_registry_is_append_only_and_idempotent():
    registry = VarRegistry()
    first = registry.register("lbl0")
    assert registry.register("lbl0") == first
    assert registry.names[:3] == ("A", "B", "d")
    assert "lbl0" in registry


def test_registry_rejects_bad_names():
    with pytest.raises(InputError):
        VarRegistry().register("2x")


def test_canonical_string_orders_terms(poly):
    assert canonical_string(poly("B^2*d + 2*A*B + A^2*d")) == "A^2*d + 2*A*B + B^2*d"
    assert canonical_string(poly("-A^-4 - A^4")) == "-A^4 - A^-4"
    assert canonical_string(poly("A - A")) == "0"
    assert canonical_string(poly("3")) == "3"


def test_parse_round_trips_canonical_form(poly):
    text = "A^7 - A^3 - A^-5"
    assert canonical_string(poly(text)) == text


def test_zero_coefficients_are_dropped(reg):
    p = MultiPoly({(1,): 2, (0, 1): 0}, reg)
    assert p.terms() == {(1,): 2}
    assert MultiPoly({(1,): 0}, reg).is_zero()


def test_trailing_zero_exponents_do_not_split_terms(reg):
    assert MultiPoly({(1, 0, 0): 1}, reg) == MultiPoly({(1,): 1}, reg)


def test_arith_matches_operators(poly):
    p, q = poly("A + B"), poly("A - d")
    assert arith(p, q, "add") == p + q
    assert arith(p, q, "sub") == poly("B + d")
    assert arith(p, q, "mul") == poly("A^2 - A*d + A*B - B*d")
    assert arith(p, q, "neg") == -p


def test_registry_mismatch(reg):
    other = VarRegistry()
    with pytest.raises(RegistryMismatchError):
        MultiPoly.var("A", reg) + MultiPoly.var("A", other)


def test_negative_power_of_unit(poly):
    assert power(poly("-A^3"), -2) == poly("A^-6")
    assert power(poly("A*B"), 0) == 1


def test_negative_power_of_non_unit(poly):
    with pytest.raises(NonUnitPowerError):
        power(poly("A + B"), -1)
    with pytest.raises(NonUnitPowerError):
        power(poly("2*A"), -1)


def test_exact_division(poly):
    d = poly("d")
    assert exact_div(poly("A^2*d^3 - d"), d) == poly("A^2*d^2 - 1")
    x = poly("A + B*d")
    assert exact_div(x ** 3 - poly("A^3"), poly("B*d")) == poly("3*A^2 + 3*A*B*d + B^2*d^2")


def test_exact_division_laurent(poly):
    assert exact_div(poly("A^4 - A^-4"), poly("A^2 - A^-2")) == poly("A^2 + A^-2")


def test_inexact_division_raises(poly):
    with pytest.raises(InexactDivisionError):
        exact_div(poly("A + 1"), poly("A + 2"))
    with pytest.raises(InexactDivisionError):
        exact_div(poly("3*A"), poly("2"))


def test_substitute_is_simultaneous(poly):
    p = poly("A^2*B")
    assert substitute(p, {"A": poly("B"), "B": poly("A")}) == poly("B^2*A")


def test_substitute_bracket_specialization(reg):
    s = KauffmanSymbols.full(reg)
    assert s.specialize(s.X) == -(MultiPoly.var("A", reg) ** -3)
    assert s.specialize(s.Y) == -(MultiPoly.var("A", reg) ** 3)


def test_substitute_negative_exponent_needs_unit(poly):
    with pytest.raises(NonUnitPowerError) as excinfo:
        substitute(poly("d^-1"), {"d": poly("A + B")})
    assert excinfo.value.field == "d"


def test_eval_int(poly):
    assert eval_int(poly("q^2 - 3*q + 2"), {"q": 4}) == 6
    assert eval_int(poly("A^-2"), {"A": 2}) == Fraction(1, 4)
    with pytest.raises(InputError):
        eval_int(poly("A + B"), {"A": 1})


def test_to_json_terms(poly):
    assert to_json_terms(poly("A^2*d - 1")) == {"A^2*d": 1, "1": -1}


def test_bracket_symbols_are_consistent(reg):
    s = KauffmanSymbols.bracket(reg)
    assert s.X == s.A + s.B * s.d
    assert s.Y == s.A * s.d + s.B


@pytest.mark.parametrize("left, right", [
    ("(A + B*d)^3", "A^3 + 3*A^2*B*d + 3*A*B^2*d^2 + B^3*d^3"),
    ("(A^2 + A^-2)*(A^2 - A^-2)", "A^4 - A^-4"),
    ("(x_r - y_r)*(x_r + y_r) + 2*z1", "x_r^2 - y_r^2 + 2*z1"),
])
def test_products_agree_with_sympy(reg, left, right):
    got = parse_poly(left, reg)
    symbols = {name: sp.Symbol(name) for name in reg.names}
    expected = sp.expand(sp.sympify(right, locals=symbols))
    computed = sp.expand(sp.sympify(canonical_string(got).replace("^", "**"), locals=symbols))
    assert sp.simplify(computed - expected) == 0


def random_poly(rng, reg, terms=4, names=("A", "d", "t")):
    total = MultiPoly.zero(reg)
    for _ in range(rng.randint(1, terms)):
        exponents = {name: rng.randint(-2, 2) for name in names}
        total = total + MultiPoly.monomial(exponents, rng.choice((-3, -2, -1, 1, 2, 3)), reg)
    return total


def random_unit(rng, reg, names=("A", "d", "t")):
    return MultiPoly.monomial({name: rng.randint(-2, 2) for name in names}, rng.choice((-1, 1)), reg)


@pytest.mark.parametrize("seed", range(10))
def test_ring_axioms(reg, seed):
    rng = random.Random(seed)
    p, q, r = (random_poly(rng, reg) for _ in range(3))
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert p - p == MultiPoly.zero(reg)
    assert p * MultiPoly.one(reg) == p


@pytest.mark.parametrize("seed", range(10))
def test_exact_div_undoes_multiplication(reg, seed):
    rng = random.Random(seed)
    p, q = random_poly(rng, reg), random_poly(rng, reg)
    if q.is_zero():
        q = MultiPoly.one(reg)
    assert exact_div(p * q, q) == p


@pytest.mark.parametrize("seed", range(10))
def test_substitute_composes(reg, seed):
    rng = random.Random(seed)
    p = random_poly(rng, reg)
    a, d = random_unit(rng, reg), random_unit(rng, reg)
    inner = substitute(substitute(p, {"A": a}), {"d": d})
    assert inner == substitute(p, {"A": substitute(a, {"d": d}), "d": d})


@pytest.mark.parametrize("seed", range(10))
def test_eval_int_is_a_homomorphism(reg, seed):
    rng = random.Random(seed)
    p, q = random_poly(rng, reg), random_poly(rng, reg)
    point = {"A": Fraction(2, 3), "d": Fraction(-5, 2), "t": Fraction(3)}
    assert eval_int(p + q, point) == eval_int(p, point) + eval_int(q, point)
    assert eval_int(p * q, point) == eval_int(p, point) * eval_int(q, point)
