import argparse
import logging
from typing import List

from core.cli_client import Command
from core.multigraph import LabeledGraph
from core.replacement import q_hat_via_w
from core.signed_tutte import BracketValue, jones, kauffman_bracket, q_poly

logger = logging.getLogger(__name__)


class SignedCommands:
    """q, bracket and jones on signed graphs"""

    def __init__(self, client):
        self.client = client

    def _configure_graph(self, parser: argparse.ArgumentParser):
        parser.add_argument("graph", help="signed graph JSON document")

    def _configure_bracket(self, parser: argparse.ArgumentParser):
        self._configure_graph(parser)
        parser.add_argument("--spec", help="replacement spec JSON; evaluate the replaced graph")

    def _configure_jones(self, parser: argparse.ArgumentParser):
        self._configure_bracket(parser)
        parser.add_argument("--writhe", type=int, required=True, help="writhe of the oriented diagram")

    async def _bracket(self, args: argparse.Namespace) -> BracketValue:
        graph: LabeledGraph = await self.client.storage.load_graph(args.graph)
        if args.spec:
            spec = await self.client.storage.load_spec(args.spec)
            return BracketValue(q_hat_via_w(graph, spec, specialized=True, registry=self.client.registry))
        return kauffman_bracket(graph, self.client.registry)

    async def q(self, args: argparse.Namespace) -> List[str]:
        """Q-polynomial of a signed graph"""
        graph = await self.client.storage.load_graph(args.graph)
        return [self.client.formatter.render(q_poly(graph, self.client.registry))]

    async def bracket(self, args: argparse.Namespace) -> List[str]:
        """Kauffman bracket of a signed graph, optionally after replacement"""
        return [self.client.formatter.render(await self._bracket(args))]

    async def jones(self, args: argparse.Namespace) -> List[str]:
        """Jones polynomial from the bracket and a user-supplied writhe"""
        value = jones(await self._bracket(args), args.writhe)
        return [self.client.formatter.render(value)]

    def commands(self) -> List[Command]:
        return [
            Command("q", "Q-polynomial of a signed graph", self._configure_graph, self.q),
            Command("bracket", "Kauffman bracket of a signed graph", self._configure_bracket, self.bracket),
            Command("jones", "Jones polynomial of a signed graph", self._configure_jones, self.jones),
        ]


async def setup(client):
    """Setup function for the command module"""
    for command in SignedCommands(client).commands():
        client.add_command(command)
