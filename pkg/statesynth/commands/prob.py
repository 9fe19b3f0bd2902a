import sys

from ..config import CONSISTENCY_ALARM
from ..errors import ConsistencyAlarm
from ..helpers import sci
from ..probability import breakdown, breakdown_to_json
from ..report import BREAKDOWN_HEADER, breakdown_rows, breakdown_table, write_xlsx
from ..simulator import checked_fidelity, outcome_to_json, run_plan
from ..synthesis import compile_plan, verify_factorization
from ._shared import ABS_T, JSON_OUT, ORDER, T_PHASE, TARGET, XLSX, dumps, load, parse_order

DEFINITION = {
    "name": "prob",
    "help": "Success probability of the compiled plan, closed form and/or brute-force simulation.",
    "arguments": [
        TARGET,
        ABS_T,
        T_PHASE,
        ORDER,
        (["--method"], {"choices": ["analytic", "simulate", "both"], "default": "analytic",
                        "help": "closed form, Fock-space simulation, or both with a consistency check"}),
        JSON_OUT,
        XLSX,
    ],
}


def handle(ctx, args) -> int:
    target, bs = load(args)
    plan = compile_plan(target, bs, parse_order(args.order))
    out = {"method": args.method}
    lines = []

    analytic = simulated = None
    if args.method in ("analytic", "both"):
        result = breakdown(plan)
        analytic = result.total
        out["analytic"] = {
            "total_prob": result.total,
            "fidelity": verify_factorization(plan.target, plan.betas),
            "stage_norms_sq": list(result.stage_norms),
        }
        out["breakdown"] = breakdown_to_json(result)
        lines.append(breakdown_table(result))
        if args.xlsx:
            write_xlsx(args.xlsx, {"breakdown": (BREAKDOWN_HEADER, breakdown_rows(result))})
    if args.method in ("simulate", "both"):
        outcome = run_plan(plan, ctx.policy)
        fid = checked_fidelity(plan, outcome)
        simulated = outcome.total_prob
        out["simulate"] = outcome_to_json(outcome, fid)
        lines.append(f"simulated P = {sci(simulated)}  fidelity = {fid:.12f}  cutoff = {outcome.cutoff_used}")

    diff = None
    if analytic is not None and simulated is not None:
        diff = abs(analytic - simulated) / max(abs(analytic), abs(simulated), 1e-300)
        out["relative_difference"] = diff
        lines.append(f"relative difference = {diff:.3e}")

    ctx.emit(dumps(out) if args.json else "\n".join(lines))

    if diff is not None and diff > CONSISTENCY_ALARM:
        print(f"[prob] analytic {analytic!r} vs simulated {simulated!r}", file=sys.stderr)
        raise ConsistencyAlarm(f"relative difference {diff:.3e} exceeds {CONSISTENCY_ALARM:g}")
    return 0
