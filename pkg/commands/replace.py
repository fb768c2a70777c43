import argparse
import logging
from typing import List

from core.cli_client import Command
from core.errors import InputError
from core.replacement import (
    DirectiveKind,
    q_gc_via_chain_poly,
    q_gs_via_sheaf_poly,
    q_hat_via_lemmas,
    q_hat_via_recursion,
    q_hat_via_w,
)

logger = logging.getLogger(__name__)

ROUTES = ("w", "recursion", "lemmas", "chain", "sheaf")


class ReplaceCommands:
    """Q of a replaced graph by any of the equivalent routes"""

    def __init__(self, client):
        self.client = client

    def _configure(self, parser: argparse.ArgumentParser):
        parser.add_argument("graph", help="signed base graph JSON document")
        parser.add_argument("--spec", required=True, help="replacement spec JSON document")
        parser.add_argument("--route", choices=ROUTES, default="w", help="evaluation route (default: w)")
        parser.add_argument("--bracket", action="store_true",
                            help="specialize to the Kauffman bracket (allows negative n)")

    async def replace(self, args: argparse.Namespace) -> List[str]:
        registry = self.client.registry
        graph = await self.client.storage.load_graph(args.graph)
        spec = await self.client.storage.load_spec(args.spec)
        logger.info(f"Replacing {len(graph.edges)} edges via the {args.route} route")

        if args.route in ("chain", "sheaf"):
            kind = DirectiveKind(args.route)
            if not spec.is_homogeneous(kind):
                raise InputError(f"the {args.route} route needs an all-{args.route} spec", field="spec")
            route = q_gc_via_chain_poly if kind is DirectiveKind.CHAIN else q_gs_via_sheaf_poly
            spec.check_graph(graph)
            value = route(graph, spec.amounts(), specialize=args.bracket, registry=registry)
        else:
            route = {"w": q_hat_via_w, "recursion": q_hat_via_recursion, "lemmas": q_hat_via_lemmas}[args.route]
            value = route(graph, spec, specialized=args.bracket, registry=registry)
        return [self.client.formatter.render(value)]

    def commands(self) -> List[Command]:
        return [Command("replace", "Q of the chain/sheaf replaced graph", self._configure, self.replace)]


async def setup(client):
    """Setup function for the command module"""
    for command in ReplaceCommands(client).commands():
        client.add_command(command)
