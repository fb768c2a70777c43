import argparse
import logging
from typing import List

from core.cli_client import Command
from core.errors import InputError
from core.rational_links import (
    benchmark,
    bracket_rational,
    bracket_theta,
    bracket_theta_via_oracle,
    bracket_torus2,
    bracket_twist,
    bracket_via_oracle,
    transfer_bracket,
)
from core.signed_tutte import BracketValue, jones
from utils.filters import InputFilter

logger = logging.getLogger(__name__)

MIN_SPEEDUP = 10.0


class RationalCommands:
    """Rational links and the theta family"""

    def __init__(self, client):
        self.client = client

    def _configure_rational(self, parser: argparse.ArgumentParser):
        parser.add_argument("word", nargs="?", help="comma-separated nonzero integers m1,m2,...")
        parser.add_argument("--route", choices=("auto", "transfer", "oracle", "closed"), default="auto",
                            help="auto: closed forms for one or two terms, transfer matrices otherwise")
        parser.add_argument("--writhe", type=int, help="print the Jones polynomial for this writhe")
        parser.add_argument("--benchmark", action="store_true", help="time transfer against the oracle")

    def _configure_theta(self, parser: argparse.ArgumentParser):
        parser.add_argument("word", nargs="?", help="three comma-separated nonzero integers m1,m2,m3")
        parser.add_argument("--route", choices=("closed", "oracle"), default="closed")
        parser.add_argument("--writhe", type=int, help="print the Jones polynomial for this writhe")

    def _render(self, bracket: BracketValue, writhe) -> List[str]:
        if writhe is not None:
            return [self.client.formatter.render(jones(bracket, writhe))]
        return [self.client.formatter.render(bracket)]

    async def rational(self, args: argparse.Namespace) -> List[str]:
        """Bracket of the rational link m1 m2 ... mk"""
        registry = self.client.registry
        word = InputFilter.parse_word(args.word)
        if args.route == "transfer":
            bracket = transfer_bracket(word, registry)
        elif args.route == "oracle":
            bracket = bracket_via_oracle(word, registry)
        elif args.route == "closed":
            if len(word) > 2:
                raise InputError("closed forms exist for one- and two-term words only", field="--route")
            terms = word.terms
            bracket = bracket_torus2(*terms, registry) if len(terms) == 1 else bracket_twist(*terms, registry)
        else:
            bracket = bracket_rational(word, registry)

        if args.benchmark:
            result = benchmark(word, registry=registry)
            if result.speedup < MIN_SPEEDUP:
                logger.warning(f"Transfer route only {result.speedup:.1f}x faster than the oracle on {word}")
        return self._render(bracket, args.writhe)

    async def theta(self, args: argparse.Namespace) -> List[str]:
        """Bracket of the theta-graph link L(m1, m2, m3)"""
        m1, m2, m3 = InputFilter.parse_triple(args.word).terms
        route = bracket_theta if args.route == "closed" else bracket_theta_via_oracle
        return self._render(route(m1, m2, m3, self.client.registry), args.writhe)

    def commands(self) -> List[Command]:
        return [
            Command("rational", "Kauffman bracket of a rational link", self._configure_rational, self.rational),
            Command("theta", "Kauffman bracket of the theta-graph link", self._configure_theta, self.theta),
        ]


async def setup(client):
    """Setup function for the command module"""
    for command in RationalCommands(client).commands():
        client.add_command(command)
