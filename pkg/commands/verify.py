import argparse
import logging
from typing import List

from core.cli_client import Command
from core.verify import Suite, run_suite
from utils.limiter import Stopwatch

logger = logging.getLogger(__name__)


class VerifyCommands:
    """Built-in oracle-equivalence suites"""

    def __init__(self, client):
        self.client = client

    def _configure(self, parser: argparse.ArgumentParser):
        parser.add_argument("--suite", choices=[s.value for s in Suite], default=Suite.SMALL.value)
        parser.add_argument("--seed", type=int, help="seed of the randomized checks (default from config)")
        parser.add_argument("--report", help="write per-check case counts to this JSON file")

    async def verify(self, args: argparse.Namespace) -> List[str]:
        suite = Suite(args.suite)
        seed = args.seed if args.seed is not None else self.client.settings.verify_seed
        pairs = await self.client.storage.load_dual_pairs()
        logger.info(f"Running the {suite.value} suite with seed {seed}")
        with Stopwatch(f"{suite.value} suite") as watch:
            report = run_suite(suite, seed, pairs, self.client.registry)
        logger.info(f"{report.summary()} in {watch.elapsed:.1f} s")
        if args.report:
            await self.client.storage.save_report(args.report, {
                "suite": suite.value,
                "seed": seed,
                "cases": report.cases,
                "checks": report.checks,
            })
        return [report.summary()]

    def commands(self) -> List[Command]:
        return [Command("verify", "run the oracle-equivalence suites", self._configure, self.verify)]


async def setup(client):
    """Setup function for the command module"""
    for command in VerifyCommands(client).commands():
        client.add_command(command)
