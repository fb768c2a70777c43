import re
import json
import logging
from typing import Dict, List, Optional, Union

from core.errors import InputError
from core.polyring import MultiPoly, VarRegistry, canonical_string, parse_poly, to_json_terms
from core.rational_links import RationalWord
from core.signed_tutte import BracketValue, JonesValue

logger = logging.getLogger(__name__)

_INTEGER = re.compile(r"[+-]?\d+")
_BINDING = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+?)\s*")


class InputFilter:
    """Parses command-line values"""

    @staticmethod
    def parse_integers(text: str, field: str) -> List[int]:
        """
        Parse a comma-separated integer list

        Args:
            text: Text such as "1,-2,3"
            field: Field name used in diagnostics

        Returns:
            The integers in order
        """
        pieces = [piece.strip() for piece in text.split(",")]
        if not text.strip() or any(not piece for piece in pieces):
            raise InputError(f"expected a comma-separated integer list, got {text!r}", field=field)
        values = []
        for position, piece in enumerate(pieces):
            if not _INTEGER.fullmatch(piece):
                raise InputError(f"{piece!r} is not an integer", field=f"{field}[{position}]")
            values.append(int(piece))
        return values

    @staticmethod
    def parse_word(text: str) -> RationalWord:
        """Parse "m1,m2,..." into a RationalWord (zero terms are rejected)"""
        return RationalWord(tuple(InputFilter.parse_integers(text, "word")))

    @staticmethod
    def parse_triple(text: str) -> RationalWord:
        """Parse "m1,m2,m3" for the theta family"""
        values = InputFilter.parse_integers(text, "word")
        if len(values) != 3:
            raise InputError(f"expected three terms, got {len(values)}", field="word")
        return RationalWord(tuple(values))

    @staticmethod
    def parse_bindings(text: Optional[str], registry: VarRegistry) -> Dict[str, MultiPoly]:
        """
        Parse "--eval" bindings such as "t=d,z1=d,z2=d"

        Args:
            text: Comma-separated name=polynomial pairs (None for no bindings)
            registry: Registry of the bound values

        Returns:
            Map from variable name to polynomial
        """
        if not text:
            return {}
        bindings: Dict[str, MultiPoly] = {}
        for piece in text.split(","):
            match = _BINDING.fullmatch(piece)
            if not match:
                raise InputError(f"expected name=polynomial, got {piece.strip()!r}", field="eval")
            name, value = match.groups()
            if name in bindings:
                raise InputError(f"{name} bound twice", field="eval")
            try:
                bindings[name] = parse_poly(value, registry)
            except InputError as e:
                raise InputError(e.message, field=f"eval.{name}") from None
        return bindings


class OutputFormatter:
    """Renders results in the canonical text form or as JSON term maps"""

    def __init__(self, as_json: bool = False):
        self.as_json = as_json

    def render(self, value: Union[MultiPoly, BracketValue, JonesValue]) -> str:
        if isinstance(value, BracketValue):
            value = value.poly
        if isinstance(value, JonesValue):
            if self.as_json:
                return json.dumps(value.to_json_terms())
            return str(value)
        if self.as_json:
            return json.dumps(to_json_terms(value))
        return canonical_string(value)
