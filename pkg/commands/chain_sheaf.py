import argparse
import logging
from typing import List

from core.chain_sheaf import ch_poly, flow_poly, sh_poly, tension_poly
from core.cli_client import Command

logger = logging.getLogger(__name__)


class ChainSheafCommands:
    """Chain, sheaf, flow and tension polynomials"""

    def __init__(self, client):
        self.client = client

    def _configure(self, parser: argparse.ArgumentParser):
        parser.add_argument("graph", help="graph JSON document (labeled for chain/sheaf)")

    def _handler(self, compute):
        async def handle(args: argparse.Namespace) -> List[str]:
            graph = await self.client.storage.load_graph(args.graph)
            return [self.client.formatter.render(compute(graph, self.client.registry))]
        return handle

    def commands(self) -> List[Command]:
        return [
            Command("chain", "chain polynomial of a labeled graph", self._configure, self._handler(ch_poly)),
            Command("sheaf", "sheaf polynomial of a labeled graph", self._configure, self._handler(sh_poly)),
            Command("flow", "nowhere-zero flow polynomial", self._configure, self._handler(flow_poly)),
            Command("tension", "nowhere-zero tension polynomial", self._configure,
                    self._handler(tension_poly)),
        ]


async def setup(client):
    """Setup function for the command module"""
    for command in ChainSheafCommands(client).commands():
        client.add_command(command)
