import argparse
import importlib
import pkgutil
import sys
from dataclasses import dataclass, field
from typing import TextIO

from ..fock import DEFAULT_POLICY, TruncationPolicy


@dataclass
class CommandContext:
    stdout: TextIO = field(default_factory=lambda: sys.stdout)
    stderr: TextIO = field(default_factory=lambda: sys.stderr)
    policy: TruncationPolicy = DEFAULT_POLICY

    def emit(self, text: str):
        self.stdout.write(text if text.endswith("\n") else text + "\n")


# Auto-discover command modules and collect DEFINITION/handle pairs
COMMANDS: list[dict] = []
HANDLERS: dict[str, callable] = {}

for _finder, _name, _ispkg in pkgutil.iter_modules(__path__):
    _mod = importlib.import_module(f".{_name}", __package__)
    if hasattr(_mod, "DEFINITION") and hasattr(_mod, "handle"):
        COMMANDS.append(_mod.DEFINITION)
        HANDLERS[_mod.DEFINITION["name"]] = _mod.handle


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="statesynth",
        description="Compile and verify displacement / photon-adding preparation plans for single-mode states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for definition in COMMANDS:
        cmd = sub.add_parser(definition["name"], help=definition["help"], description=definition["help"])
        for flags, kwargs in definition["arguments"]:
            cmd.add_argument(*flags, **kwargs)
    return parser


def dispatch(name: str, ctx: CommandContext, args: argparse.Namespace) -> int:
    """Dispatch a command by name. Returns its exit code."""
    handler = HANDLERS.get(name)
    if handler is None:
        raise KeyError(f"Unknown command {name!r}")
    return handler(ctx, args)
