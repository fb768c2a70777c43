import logging
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

import sympy as sp
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

from core.errors import (
    InexactDivisionError,
    InputError,
    NonUnitPowerError,
    RegistryMismatchError,
)

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
Coercible = Union["MultiPoly", int]

RESERVED_NAMES = ("A", "B", "d", "t", "z1", "z2", "w", "q")
_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class VarRegistry:
    """Append-only, ordered registry of variable names"""

    def __init__(self, names: Iterable[str] = RESERVED_NAMES):
        self._names: List[str] = []
        self._index: Dict[str, int] = {}
        self._lock = threading.Lock()
        for name in names:
            self.register(name)

    def register(self, name: str) -> int:
        """Register a name (idempotent) and return its index"""
        if not _IDENTIFIER.fullmatch(name):
            raise InputError(f"invalid variable name {name!r}", field="variable")
        index = self._index.get(name)
        if index is not None:
            return index
        with self._lock:
            index = self._index.get(name)
            if index is None:
                index = len(self._names)
                self._names.append(name)
                self._index[name] = index
                logger.debug(f"Registered variable {name} at index {index}")
            return index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown variable {name!r}", field="variable") from None

    def name(self, index: int) -> str:
        return self._names[index]

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(self._names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self._names)


DEFAULT_REGISTRY = VarRegistry()


# Monomials are exponent vectors with trailing zeros stripped, so a
# polynomial stays canonical while the registry grows.

def _strip(vec: List[int]) -> Monomial:
    while vec and vec[-1] == 0:
        vec.pop()
    return tuple(vec)


def _mono_add(a: Monomial, b: Monomial) -> Monomial:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _strip(out)


def _mono_sub(a: Monomial, b: Monomial) -> Monomial:
    return _mono_add(a, tuple(-x for x in b))


def _mono_scale(a: Monomial, n: int) -> Monomial:
    return _strip([x * n for x in a])


def _padded(mono: Monomial, width: int) -> Monomial:
    return mono + (0,) * (width - len(mono))


class MultiPoly:
    """Sparse integer Laurent polynomial over a VarRegistry.

    Values are immutable. The term map never stores zero coefficients, so
    equality of term maps is equality of polynomials.
    """

    __slots__ = ("_terms", "registry", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None,
                 registry: Optional[VarRegistry] = None):
        self.registry = registry if registry is not None else DEFAULT_REGISTRY
        clean: Dict[Monomial, int] = {}
        for mono, coeff in (terms or {}).items():
            mono = _strip(list(mono))
            value = clean.get(mono, 0) + int(coeff)
            if value:
                clean[mono] = value
            else:
                clean.pop(mono, None)
        self._terms = clean
        self._hash: Optional[int] = None

    @classmethod
    def _trusted(cls, terms: Dict[Monomial, int], registry: VarRegistry) -> "MultiPoly":
        poly = cls.__new__(cls)
        poly.registry = registry
        poly._terms = terms
        poly._hash = None
        return poly

    # Constructors

    @classmethod
    def zero(cls, registry: Optional[VarRegistry] = None) -> "MultiPoly":
        return cls({}, registry)

    @classmethod
    def const(cls, value: int, registry: Optional[VarRegistry] = None) -> "MultiPoly":
        return cls({(): value} if value else {}, registry)

    @classmethod
    def one(cls, registry: Optional[VarRegistry] = None) -> "MultiPoly":
        return cls.const(1, registry)

    @classmethod
    def var(cls, name: str, registry: Optional[VarRegistry] = None) -> "MultiPoly":
        registry = registry if registry is not None else DEFAULT_REGISTRY
        index = registry.register(name)
        vec = [0] * (index + 1)
        vec[index] = 1
        return cls({tuple(vec): 1}, registry)

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff: int = 1,
                 registry: Optional[VarRegistry] = None) -> "MultiPoly":
        registry = registry if registry is not None else DEFAULT_REGISTRY
        mono: Monomial = ()
        for name, exp in exponents.items():
            index = registry.register(name)
            vec = [0] * (index + 1)
            vec[index] = exp
            mono = _mono_add(mono, tuple(vec))
        return cls({mono: coeff}, registry)

    # Introspection

    def items(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self._terms.items())

    def terms(self) -> Dict[Monomial, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """True for ±1 times a single Laurent monomial"""
        if len(self._terms) != 1:
            return False
        (coeff,) = self._terms.values()
        return coeff in (1, -1)

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for mono in self._terms:
            used.update(i for i, exp in enumerate(mono) if exp)
        return tuple(self.registry.name(i) for i in sorted(used))

    def ordered_terms(self) -> List[Tuple[Monomial, int]]:
        """Terms sorted descending lexicographically by exponent vector"""
        width = len(self.registry)
        return sorted(self._terms.items(), key=lambda kv: _padded(kv[0], width), reverse=True)

    def leading_term(self) -> Tuple[Monomial, int]:
        if not self._terms:
            raise InputError("the zero polynomial has no leading term")
        width = len(self.registry)
        mono = max(self._terms, key=lambda m: _padded(m, width))
        return mono, self._terms[mono]

    def exponent_bounds(self) -> Tuple[List[int], List[int]]:
        """Per-variable minimum and maximum exponents"""
        width = len(self.registry)
        vectors = [_padded(m, width) for m in self._terms]
        lows = [min(v[i] for v in vectors) for i in range(width)]
        highs = [max(v[i] for v in vectors) for i in range(width)]
        return lows, highs

    # Arithmetic

    def _coerce(self, other: Coercible) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.registry is not self.registry:
                raise RegistryMismatchError("operands belong to different variable registries",
                                            field="registry")
            return other
        if isinstance(other, int):
            return MultiPoly.const(other, self.registry)
        return NotImplemented

    def __add__(self, other: Coercible) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            value = out.get(mono, 0) + coeff
            if value:
                out[mono] = value
            else:
                del out[mono]
        return MultiPoly._trusted(out, self.registry)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._trusted({m: -c for m, c in self._terms.items()}, self.registry)

    def __sub__(self, other: Coercible) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: Coercible) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other: Coercible) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _mono_add(m1, m2)
                out[mono] = out.get(mono, 0) + c1 * c2
        return MultiPoly._trusted({m: c for m, c in out.items() if c}, self.registry)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        return power(self, n)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = MultiPoly.const(other, self.registry)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.registry is other.registry and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        return canonical_string(self)

    def __repr__(self) -> str:
        return f"MultiPoly({canonical_string(self)!r})"


# Operations

def arith(p: MultiPoly, q: MultiPoly, kind: str) -> MultiPoly:
    """Ring arithmetic dispatch: kind is one of add, sub, mul, neg"""
    if kind == "neg":
        return -p
    if p.registry is not q.registry:
        raise RegistryMismatchError("operands belong to different variable registries",
                                    field="registry")
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    raise InputError(f"unknown arithmetic kind {kind!r}", field="kind")


def power(p: MultiPoly, n: int) -> MultiPoly:
    """
    Raise p to an integer power

    Args:
        p: Base polynomial
        n: Exponent; negative values require p to be a unit

    Returns:
        p**n
    """
    if n < 0:
        if not p.is_unit():
            raise NonUnitPowerError(f"negative power {n} of non-unit {canonical_string(p)}",
                                    field="exponent")
        ((mono, coeff),) = p.items()
        return MultiPoly._trusted({_mono_scale(mono, n): coeff ** (-n)}, p.registry)
    if p.is_monomial():
        ((mono, coeff),) = p.items()
        return MultiPoly._trusted({_mono_scale(mono, n): coeff ** n}, p.registry)
    result = MultiPoly.one(p.registry)
    base = p
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def exact_div(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """
    Divide p by q, requiring a zero remainder

    Long division against the leading term of q in canonical order. The
    quotient of an exact division has per-variable exponents bounded by the
    differences of the operands' exponent ranges, so any step leaving that
    box proves the division is not exact.

    Args:
        p: Dividend
        q: Nonzero divisor

    Returns:
        r with r * q == p

    Raises:
        InexactDivisionError: If q does not divide p
    """
    if q.registry is not p.registry:
        raise RegistryMismatchError("operands belong to different variable registries",
                                    field="registry")
    if q.is_zero():
        raise InputError("division by the zero polynomial", field="divisor")
    if p.is_zero():
        return MultiPoly.zero(p.registry)

    width = len(p.registry)
    p_low, p_high = p.exponent_bounds()
    q_low, q_high = q.exponent_bounds()
    low = [a - b for a, b in zip(p_low, q_low)]
    high = [a - b for a, b in zip(p_high, q_high)]
    if any(lo > hi for lo, hi in zip(low, high)):
        raise InexactDivisionError(f"{p} is not divisible by {q}")

    lead_mono, lead_coeff = q.leading_term()
    divisor_terms = list(q.items())
    remainder = p.terms()
    quotient: Dict[Monomial, int] = {}

    while remainder:
        mono = max(remainder, key=lambda m: _padded(m, width))
        coeff = remainder[mono]
        if coeff % lead_coeff:
            raise InexactDivisionError(f"{p} is not divisible by {q}")
        step = _mono_sub(mono, lead_mono)
        padded = _padded(step, width)
        if any(not (lo <= x <= hi) for lo, x, hi in zip(low, padded, high)):
            raise InexactDivisionError(f"{p} is not divisible by {q}")
        factor = coeff // lead_coeff
        quotient[step] = factor
        for m2, c2 in divisor_terms:
            target = _mono_add(step, m2)
            value = remainder.get(target, 0) - factor * c2
            if value:
                remainder[target] = value
            else:
                remainder.pop(target, None)

    return MultiPoly._trusted(quotient, p.registry)


def substitute(p: MultiPoly, bindings: Mapping[str, MultiPoly]) -> MultiPoly:
    """
    Simultaneously replace variables by polynomials

    Args:
        p: Polynomial to rewrite
        bindings: Map from variable name to replacement polynomial

    Returns:
        The fully normalized result

    Raises:
        NonUnitPowerError: If a variable with a negative exponent is bound to a non-unit
    """
    if not bindings:
        return p
    registry = p.registry
    bound: Dict[int, MultiPoly] = {}
    for name, value in bindings.items():
        if value.registry is not registry:
            raise RegistryMismatchError("binding belongs to a different variable registry",
                                        field=name)
        bound[registry.index(name)] = value

    powers: Dict[Tuple[int, int], MultiPoly] = {}
    result = MultiPoly.zero(registry)
    for mono, coeff in p.items():
        kept = list(mono)
        term = MultiPoly.const(coeff, registry)
        for index, exp in enumerate(mono):
            if exp and index in bound:
                kept[index] = 0
                key = (index, exp)
                if key not in powers:
                    try:
                        powers[key] = power(bound[index], exp)
                    except NonUnitPowerError:
                        raise NonUnitPowerError(
                            f"variable {registry.name(index)} occurs with exponent {exp} "
                            f"but is bound to the non-unit {bound[index]}",
                            field=registry.name(index)) from None
                term = term * powers[key]
        result = result + term * MultiPoly._trusted({_strip(kept): 1}, registry)
    return result


def eval_int(p: MultiPoly, assignment: Mapping[str, Union[int, Fraction]]) -> Fraction:
    """Exact rational evaluation; every variable of p must be assigned"""
    registry = p.registry
    values: Dict[int, Fraction] = {registry.index(k): Fraction(v) for k, v in assignment.items()
                                   if k in registry}
    total = Fraction(0)
    for mono, coeff in p.items():
        term = Fraction(coeff)
        for index, exp in enumerate(mono):
            if not exp:
                continue
            if index not in values:
                raise InputError(f"variable {registry.name(index)} is not assigned",
                                 field=registry.name(index))
            value = values[index]
            if exp < 0 and value == 0:
                raise InputError("division by zero", field=registry.name(index))
            term *= value ** exp
        total += term
    return total


def _monomial_string(mono: Monomial, registry: VarRegistry) -> str:
    factors = []
    for index, exp in enumerate(mono):
        if exp == 0:
            continue
        name = registry.name(index)
        factors.append(name if exp == 1 else f"{name}^{exp}")
    return "*".join(factors)


def canonical_string(p: MultiPoly) -> str:
    """
    Deterministic text form: terms descending by exponent vector, `±c*V^e`

    Returns:
        e.g. "-A^4 - A^-4", "A^2*d + 2*A*B + B^2*d", "0"
    """
    if p.is_zero():
        return "0"
    pieces = []
    for position, (mono, coeff) in enumerate(p.ordered_terms()):
        body = _monomial_string(mono, p.registry)
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


def to_json_terms(p: MultiPoly) -> Dict[str, int]:
    """Term map keyed by monomial strings ("1" for the constant term)"""
    return {(_monomial_string(mono, p.registry) or "1"): coeff for mono, coeff in p.ordered_terms()}


def _from_sympy(expr: sp.Expr, registry: VarRegistry) -> MultiPoly:
    if expr.is_Integer:
        return MultiPoly.const(int(expr), registry)
    if expr.is_Symbol:
        return MultiPoly.var(expr.name, registry)
    if expr.is_Add:
        result = MultiPoly.zero(registry)
        for arg in expr.args:
            result = result + _from_sympy(arg, registry)
        return result
    if expr.is_Mul:
        result = MultiPoly.one(registry)
        for arg in expr.args:
            result = result * _from_sympy(arg, registry)
        return result
    if expr.is_Pow and expr.exp.is_Integer:
        return power(_from_sympy(expr.base, registry), int(expr.exp))
    raise InputError(f"unsupported term {expr} (integer Laurent polynomials only)",
                     field="polynomial")


def parse_poly(text: str, registry: Optional[VarRegistry] = None) -> MultiPoly:
    """
    Parse canonical_string syntax (or any integer Laurent expression)

    Args:
        text: Polynomial text such as "A^2*d + 2*A*B + B^2*d"
        registry: Registry receiving unknown identifiers

    Returns:
        The parsed polynomial
    """
    registry = registry if registry is not None else DEFAULT_REGISTRY
    text = text.strip()
    if not text:
        raise InputError("empty polynomial", field="polynomial")
    symbols = {name: sp.Symbol(name) for name in _IDENTIFIER.findall(text)}
    try:
        expr = parse_expr(text, local_dict=symbols, evaluate=True,
                          transformations=standard_transformations + (convert_xor,))
    except (SyntaxError, TypeError, ValueError, sp.SympifyError) as e:
        raise InputError(f"cannot parse polynomial {text!r}: {e}", field="polynomial") from None
    return _from_sympy(sp.sympify(expr), registry)


@dataclass(frozen=True)
class KauffmanSymbols:
    """The constants A, B, d, X = A+Bd, Y = Ad+B in one ring"""

    A: MultiPoly
    B: MultiPoly
    d: MultiPoly
    X: MultiPoly
    Y: MultiPoly
    specialized: bool

    @classmethod
    def full(cls, registry: Optional[VarRegistry] = None) -> "KauffmanSymbols":
        A = MultiPoly.var("A", registry)
        B = MultiPoly.var("B", registry)
        d = MultiPoly.var("d", registry)
        return cls(A=A, B=B, d=d, X=A + B * d, Y=A * d + B, specialized=False)

    @classmethod
    def bracket(cls, registry: Optional[VarRegistry] = None) -> "KauffmanSymbols":
        A = MultiPoly.var("A", registry)
        return cls(A=A, B=A ** -1, d=-(A ** 2) - A ** -2, X=-(A ** -3), Y=-(A ** 3),
                   specialized=True)

    def bracket_bindings(self) -> Dict[str, MultiPoly]:
        A = self.A
        return {"B": A ** -1, "d": -(A ** 2) - A ** -2}

    def specialize(self, p: MultiPoly) -> MultiPoly:
        """Apply B -> A^-1, d -> -A^2 - A^-2"""
        return substitute(p, self.bracket_bindings())
