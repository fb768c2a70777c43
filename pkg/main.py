import asyncio
import logging
import os
import sys
from typing import Optional, Sequence

from core.cli_client import GraphPolyClient, Settings, global_parser
from core.errors import GraphPolyError

logger = logging.getLogger(__name__)

ROOT_DIR = os.path.dirname(os.path.abspath(__file__))
COMMANDS_DIR = os.path.join(ROOT_DIR, "commands")
DATA_DIR = os.path.join(ROOT_DIR, "data")


def configure_logging(settings: Settings):
    handlers = [logging.StreamHandler(sys.stderr)]
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file))
    logging.basicConfig(
        level=getattr(logging, settings.log_level),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


async def build_client(settings: Optional[Settings] = None, data_dir: str = DATA_DIR) -> GraphPolyClient:
    """Create the client and load every command module"""
    client = GraphPolyClient(settings, data_dir=data_dir)
    for filename in sorted(os.listdir(COMMANDS_DIR)):
        if filename.endswith(".py") and filename != "__init__.py":
            await client.load_extension(f"commands.{filename[:-3]}")
    return client


async def main(argv: Sequence[str]) -> int:
    """Main entry point for the CLI"""
    try:
        known, _ = global_parser(add_help=False).parse_known_args(list(argv))
        settings = Settings.load(known.config).with_overrides(known.cap, known.no_memo, known.verbose)
    except GraphPolyError as e:
        print(f"error: {e.diagnostic()}", file=sys.stderr)
        return e.exit_code

    configure_logging(settings)
    client = await build_client(settings)
    return await client.run(argv)


if __name__ == "__main__":
    try:
        sys.exit(asyncio.run(main(sys.argv[1:])))
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        sys.exit(130)
