import argparse
import logging
from typing import List

from core.cli_client import Command
from core.colored_tutte import WParams, w_recursive
from core.polyring import MultiPoly, substitute
from utils.filters import InputFilter

logger = logging.getLogger(__name__)

PARAMETERS = ("t", "z1", "z2")


class ColoredCommands:
    """The W-polynomial of colored graphs"""

    def __init__(self, client):
        self.client = client

    def _configure(self, parser: argparse.ArgumentParser):
        parser.add_argument("graph", help="colored graph JSON document")
        parser.add_argument("--colors", required=True, help="color weights JSON document")
        parser.add_argument("--eval", dest="bindings",
                            help="bindings such as t=d,z1=d,z2=d (other names are substituted last)")

    async def w(self, args: argparse.Namespace) -> List[str]:
        """W(G)(t, z1, z2), with t, z1, z2 symbolic unless bound"""
        registry = self.client.registry
        graph = await self.client.storage.load_graph(args.graph)
        weights = await self.client.storage.load_colors(args.colors, registry)
        bindings = InputFilter.parse_bindings(args.bindings, registry)

        values = [bindings.pop(name) if name in bindings else MultiPoly.var(name, registry)
                  for name in PARAMETERS]
        params = WParams(*values)
        logger.debug(f"Evaluating W with t={params.t}, z1={params.z1}, z2={params.z2}")
        value = substitute(w_recursive(graph, weights, params), bindings)
        return [self.client.formatter.render(value)]

    def commands(self) -> List[Command]:
        return [Command("w", "W-polynomial of a colored graph", self._configure, self.w)]


async def setup(client):
    """Setup function for the command module"""
    for command in ColoredCommands(client).commands():
        client.add_command(command)
