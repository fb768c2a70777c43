import re
import sys
import logging
import argparse
import importlib
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Awaitable, Callable, Dict, List, Mapping, Optional, Sequence

from dotenv import dotenv_values

from core.errors import GraphPolyError, InputError
from core.polyring import DEFAULT_REGISTRY, VarRegistry
from core.signed_tutte import q_cache
from utils.filters import OutputFormatter
from utils.limiter import DEFAULT_ENUMERATION_CAP, limiter
from utils.storage import DocumentStorage

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}
# argparse reads "-1,2" as an unknown option rather than a positional
NEGATIVE_WORD = re.compile(r"^-\d+(\s*,\s*[-+]?\d+)*$")


@dataclass(frozen=True)
class Settings:
    """Resolved configuration"""

    enumeration_cap: int = DEFAULT_ENUMERATION_CAP
    memoize: bool = True
    log_level: str = "WARNING"
    log_file: Optional[str] = None
    verify_seed: int = 20240607

    @classmethod
    def from_values(cls, values: Mapping[str, Optional[str]]) -> "Settings":
        """
        Build settings from GRAPHPOLY_* key/value pairs

        Args:
            values: Mapping as returned by dotenv_values

        Returns:
            Validated settings; unknown keys are ignored
        """
        settings = cls()

        def integer(key: str, default: int) -> int:
            raw = values.get(key)
            if raw is None or raw == "":
                return default
            try:
                value = int(raw)
            except ValueError:
                raise InputError(f"expected an integer, got {raw!r}", field=key) from None
            if value < 0:
                raise InputError("must be nonnegative", field=key)
            return value

        memo_raw = (values.get("GRAPHPOLY_MEMOIZE") or "").strip().lower()
        if memo_raw and memo_raw not in _TRUE | _FALSE:
            raise InputError(f"expected true/false, got {memo_raw!r}", field="GRAPHPOLY_MEMOIZE")
        level = (values.get("GRAPHPOLY_LOG_LEVEL") or settings.log_level).strip().upper()
        if level not in LOG_LEVELS:
            raise InputError(f"unknown log level {level!r}", field="GRAPHPOLY_LOG_LEVEL")

        return cls(
            enumeration_cap=integer("GRAPHPOLY_ENUMERATION_CAP", settings.enumeration_cap),
            memoize=settings.memoize if not memo_raw else memo_raw in _TRUE,
            log_level=level,
            log_file=values.get("GRAPHPOLY_LOG_FILE") or None,
            verify_seed=integer("GRAPHPOLY_VERIFY_SEED", settings.verify_seed),
        )

    @classmethod
    def load(cls, config_path: Optional[str] = None) -> "Settings":
        """Read a dotenv file without touching the process environment"""
        if config_path is None:
            return cls.from_values(dotenv_values(".env"))
        if not Path(config_path).is_file():
            raise InputError(f"config file {config_path} not found", field="--config")
        return cls.from_values(dotenv_values(config_path))

    def with_overrides(self, cap: Optional[int] = None, no_memo: bool = False,
                       verbose: int = 0) -> "Settings":
        settings = self
        if cap is not None:
            if cap < 0:
                raise InputError("must be nonnegative", field="--cap")
            settings = replace(settings, enumeration_cap=cap)
        if no_memo:
            settings = replace(settings, memoize=False)
        if verbose:
            settings = replace(settings, log_level="DEBUG" if verbose > 1 else "INFO")
        return settings


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors are input errors (exit code 1)"""

    def error(self, message: str):
        raise InputError(message, field="argv")


def global_parser(add_help: bool = True) -> CommandParser:
    parser = CommandParser(prog="graphpoly", add_help=add_help,
                           description="Tutte-type graph polynomials and Kauffman brackets")
    parser.add_argument("--config", help="dotenv configuration file (default: ./.env)")
    parser.add_argument("--cap", type=int, help="enumeration cap on the number of edges")
    parser.add_argument("--no-memo", action="store_true", help="disable the Q-recursion memo table")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="log INFO (-vv: DEBUG)")
    parser.add_argument("--json", action="store_true", help="print JSON term maps")
    return parser


def verb_options() -> argparse.ArgumentParser:
    """Output flags that may also follow the verb; absent flags keep the global value"""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS, help="log INFO (-vv: DEBUG)")
    parser.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print JSON term maps")
    return parser


def claim_negative_word(args: argparse.Namespace, extras: List[str]):
    """
    Hand a word with a negative first term back to the verb's word argument

    Raises:
        InputError: For a missing word or any other unrecognized argument
    """
    if extras and getattr(args, "word", "") is None and NEGATIVE_WORD.match(extras[0]):
        args.word = extras.pop(0)
    if extras:
        raise InputError(f"unrecognized arguments: {' '.join(extras)}", field="argv")
    if getattr(args, "word", "") is None:
        raise InputError("the following arguments are required: word", field="word")


Handler = Callable[[argparse.Namespace], Awaitable[List[str]]]


@dataclass(frozen=True)
class Command:
    name: str
    help: str
    configure: Callable[[argparse.ArgumentParser], None]
    handler: Handler


class GraphPolyClient:
    """Owns configuration, storage and the command registry"""

    def __init__(self, settings: Optional[Settings] = None, data_dir: str = "data",
                 registry: Optional[VarRegistry] = None):
        self.settings = settings or Settings()
        self.registry = registry if registry is not None else DEFAULT_REGISTRY
        self.commands: Dict[str, Command] = {}
        self.formatter = OutputFormatter()

        try:
            self.storage = DocumentStorage(data_dir)
            logger.debug("DocumentStorage initialized successfully")
        except Exception as e:
            logger.error(f"Failed to initialize DocumentStorage: {e}")
            raise

        self.apply_settings(self.settings)

    def apply_settings(self, settings: Settings):
        self.settings = settings
        limiter.set_cap(settings.enumeration_cap)
        q_cache.enabled = settings.memoize
        logger.info("Client configuration:")
        logger.info(f"  - Enumeration cap: {settings.enumeration_cap}")
        logger.info(f"  - Memoization: {'on' if settings.memoize else 'off'}")
        logger.info(f"  - Verify seed: {settings.verify_seed}")

    def add_command(self, command: Command):
        if command.name in self.commands:
            raise InputError(f"command {command.name!r} registered twice", field="command")
        self.commands[command.name] = command

    async def load_extension(self, module_path: str):
        """Import a command module and call its setup(client)"""
        module = importlib.import_module(module_path)
        setup = getattr(module, "setup", None)
        if setup is None:
            raise InputError(f"{module_path} has no setup function", field="extension")
        await setup(self)
        logger.info(f"Loaded {module_path} successfully")

    def build_parser(self) -> CommandParser:
        parser = global_parser()
        verbs = parser.add_subparsers(dest="verb", metavar="VERB")
        verbs.required = True
        shared = verb_options()
        for name in sorted(self.commands):
            command = self.commands[name]
            sub = verbs.add_parser(name, help=command.help, description=command.help,
                                  parents=[shared])
            command.configure(sub)
        return parser

    async def run(self, argv: Sequence[str]) -> int:
        """
        Parse argv, dispatch the verb and print its output lines

        Args:
            argv: Command-line arguments without the program name

        Returns:
            Exit code: 0 success, 1 input error, 2 verification failure
        """
        try:
            args, extras = self.build_parser().parse_known_args(list(argv))
            claim_negative_word(args, extras)
            if args.cap is not None or args.no_memo:
                self.apply_settings(self.settings.with_overrides(args.cap, args.no_memo))
            self.formatter = OutputFormatter(as_json=args.json)
            logger.info(f"Dispatching {args.verb}")
            lines = await self.commands[args.verb].handler(args)
        except GraphPolyError as e:
            logger.error(e.diagnostic())
            print(f"error: {e.diagnostic()}", file=sys.stderr)
            return e.exit_code
        for line in lines:
            print(line)
        return 0
