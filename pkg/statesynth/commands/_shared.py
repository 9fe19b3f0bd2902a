"""Argument specs and parsing shared by several commands."""

import json

from ..config import DEFAULT_T
from ..synthesis import BeamSplitter
from ..targets import target_from_file

TARGET = (["target"], {"help": "JSON target file: {\"coeffs\": [[re, im], ...]} or {\"phase_state\": {\"z\": [re, im], \"N\": n}}"})
ABS_T = (["--T"], {"dest": "abs_t", "type": float, "default": DEFAULT_T, "help": f"beam-splitter |T| (default {DEFAULT_T})"})
T_PHASE = (["--T-phase"], {"dest": "t_phase", "type": float, "default": 0.0, "help": "phase of T in radians"})
ORDER = (["--order"], {"default": "canonical", "help": "comma-separated 1-based root indices per stage, or 'canonical'"})
JSON_OUT = (["--json"], {"action": "store_true", "help": "print JSON instead of the table"})
XLSX = (["--xlsx"], {"metavar": "PATH", "help": "also write the tables to an .xlsx workbook"})


def load(args):
    """Target and beam splitter from the common arguments."""
    target = target_from_file(args.target)
    bs = BeamSplitter.from_transmittance(args.abs_t, args.t_phase)
    return target, bs


def parse_order(text: str):
    if text == "canonical":
        return "canonical"
    try:
        return [int(part) - 1 for part in text.split(",")]
    except ValueError as e:
        raise ValueError(f"--order must be 'canonical' or comma-separated integers, got {text!r}") from e


def dumps(obj) -> str:
    return json.dumps(obj, indent=2)
