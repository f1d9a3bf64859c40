import argparse
import logging
import sys
from dataclasses import dataclass
from typing import Callable, TextIO

from cli.output import Reply
from ntheory.errors import NumberTheoryError

logger = logging.getLogger(__name__)

Handler = Callable[[argparse.Namespace, Reply], int]


def arg(*flags: str, **kwargs) -> tuple[tuple[str, ...], dict]:
    return flags, kwargs


class _Parser(argparse.ArgumentParser):
    # Usage errors exit 1; exit 2 means "searched and found nothing"
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class _Command:
    name: str
    help: str
    arguments: tuple
    handler: Handler


class Router:
    """Maps subcommand names to ``cmd_*`` handlers registered by decorator."""

    def __init__(self) -> None:
        self._commands: dict[str, _Command] = {}

    def command(self, name: str, help: str, *arguments) -> Callable[[Handler], Handler]:
        def decorator(handler: Handler) -> Handler:
            self._commands[name] = _Command(name, help, arguments, handler)
            return handler

        return decorator

    @property
    def names(self) -> list[str]:
        return sorted(self._commands)

    def build_parser(self, prog: str = "targetfactor") -> argparse.ArgumentParser:
        parser = _Parser(prog=prog, description="Modular hyperbolas, targets and target-guided factoring")
        parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
        sub = parser.add_subparsers(dest="command", required=True)
        for cmd in self._commands.values():
            child = sub.add_parser(cmd.name, help=cmd.help)
            for flags, kwargs in cmd.arguments:
                child.add_argument(*flags, **kwargs)
        return parser

    def dispatch(self, argv: list[str] | None = None, stream: TextIO | None = None) -> int:
        args = self.build_parser().parse_args(argv)
        cmd = self._commands[args.command]
        reply = Reply(command=cmd.name, stream=stream or sys.stdout)
        try:
            return cmd.handler(args, reply)
        except NumberTheoryError as exc:
            logger.error("%s: %s", cmd.name, exc)
            return 1
