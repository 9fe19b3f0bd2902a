import sys

from ..config import DEFAULT_R_TILDE
from ..errors import DegreeLimitExceeded
from ..helpers import pair
from ..probability import breakdown
from ..report import PLAN_HEADER, plan_rows, plan_table, write_xlsx
from ..synthesis import compile_plan, lo_settings, plan_to_json
from ._shared import ABS_T, JSON_OUT, ORDER, T_PHASE, TARGET, XLSX, dumps, load, parse_order

DEFINITION = {
    "name": "plan",
    "help": "Compile a target into roots beta_k and displacements alpha_k, with per-stage P_k^2.",
    "arguments": [
        TARGET,
        ABS_T,
        T_PHASE,
        ORDER,
        (["--R-tilde"], {"dest": "r_tilde", "type": float, "default": DEFAULT_R_TILDE,
                         "help": "reflectance of the displacement beam splitters, for local-oscillator amplitudes"}),
        JSON_OUT,
        XLSX,
    ],
}


def handle(ctx, args) -> int:
    target, bs = load(args)
    plan = compile_plan(target, bs, parse_order(args.order))
    try:
        result = breakdown(plan)
    except DegreeLimitExceeded as e:
        print(f"[plan] no closed-form probability: {e}", file=sys.stderr)
        result = None

    if args.json:
        out = plan_to_json(plan)
        lo = lo_settings(plan, args.r_tilde)
        out["alphas_LO"] = [pair(a) for a in lo.alphas_LO]
        out["prob"] = None if result is None else result.total
        ctx.emit(dumps(out))
    else:
        ctx.emit(plan_table(plan, result))

    if args.xlsx:
        write_xlsx(args.xlsx, {"plan": (PLAN_HEADER, plan_rows(plan, result))})
    return 0
