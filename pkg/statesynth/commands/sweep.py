from ..config import SWEEP_MAX, SWEEP_MIN, SWEEP_STEP
from ..report import sweep_csv, write_xlsx
from ..search import sweep_grid, sweep_T
from ..targets import target_from_file
from ._shared import T_PHASE, TARGET, XLSX

DEFINITION = {
    "name": "sweep",
    "help": "Success probability over a grid of |T|, as CSV (absT,prob).",
    "arguments": [
        TARGET,
        (["--min"], {"dest": "t_min", "type": float, "default": SWEEP_MIN, "help": f"smallest |T| (default {SWEEP_MIN})"}),
        (["--max"], {"dest": "t_max", "type": float, "default": SWEEP_MAX, "help": f"largest |T| (default {SWEEP_MAX})"}),
        (["--step"], {"type": float, "default": SWEEP_STEP, "help": f"grid spacing (default {SWEEP_STEP})"}),
        T_PHASE,
        XLSX,
    ],
}


def handle(ctx, args) -> int:
    if not 0 < args.t_min <= args.t_max < 1:
        raise ValueError(f"Need 0 < min <= max < 1, got min={args.t_min}, max={args.t_max}")
    if args.step <= 0:
        raise ValueError(f"--step must be positive, got {args.step}")
    target = target_from_file(args.target)
    curve = sweep_T(target, sweep_grid(args.t_min, args.t_max, args.step), args.t_phase)
    ctx.emit(sweep_csv(curve))
    if args.xlsx:
        rows = [[p.abs_t, None if p.error else p.prob] for p in curve.samples]
        write_xlsx(args.xlsx, {"sweep": (["absT", "prob"], rows)})
    return 0
