from .commands import CommandContext, build_parser, dispatch
from .helpers import exit_code_for, format_error


def main(argv=None, ctx: CommandContext | None = None) -> int:
    """Run one subcommand; returns the process exit code instead of exiting."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    ctx = ctx or CommandContext()

    print(f"[cli] {args.command} {vars(args)}", file=ctx.stderr)
    try:
        return dispatch(args.command, ctx, args)
    except Exception as e:
        print(f"error: {format_error(e)}", file=ctx.stderr)
        return exit_code_for(e)
