from ..config import ORDER_SEARCH_LIMIT, STAGEWISE_ITERS, T_BRACKET
from ..helpers import pair
from ..probability import breakdown
from ..search import optimize_common_T, optimize_root_order, optimize_stagewise
from ..synthesis import compile_plan
from ._shared import ABS_T, T_PHASE, TARGET, dumps, load

DEFINITION = {
    "name": "optimize",
    "help": "Search the transmittance (common or per stage) or the root order for the highest success probability.",
    "arguments": [
        TARGET,
        (["--mode"], {"choices": ["common", "stagewise", "order"], "default": "common",
                      "help": "what to optimize (default common)"}),
        ABS_T,
        T_PHASE,
        (["--bracket"], {"type": float, "nargs": 2, "metavar": ("LO", "HI"), "default": list(T_BRACKET),
                         "help": "|T| search interval for common mode"}),
        (["--iters"], {"type": int, "default": STAGEWISE_ITERS, "help": "coordinate sweeps in stagewise mode"}),
        (["--limit"], {"type": int, "default": ORDER_SEARCH_LIMIT, "help": "largest N searched exhaustively in order mode"}),
    ],
}


def handle(ctx, args) -> int:
    target, bs = load(args)
    out = {"mode": args.mode, "target": target.label, "N": target.N}

    if args.mode == "common":
        best_t, best_p = optimize_common_T(target, tuple(args.bracket))
        out.update(bestT=best_t, bestP=best_p, baselineT=args.abs_t, baselineP=breakdown(compile_plan(target, bs)).total)

    elif args.mode == "stagewise":
        common_t, common_p = optimize_common_T(target, tuple(args.bracket))
        config = optimize_stagewise(target, common_t, args.iters, ctx.policy)
        out.update(
            Ts=[pair(t) for t in config.Ts],
            alphas=[pair(a) for a in config.alphas],
            bestP=config.prob,
            baselineT=common_t,
            baselineP=config.baseline_prob,
            commonP=common_p,
            ratio=config.prob / config.baseline_prob if config.baseline_prob > 0 else None,
        )

    else:
        order, best_p = optimize_root_order(target, bs, args.limit)
        out.update(
            order=[i + 1 for i in order],
            bestP=best_p,
            baselineP=breakdown(compile_plan(target, bs)).total,
        )

    ctx.emit(dumps(out))
    return 0
