"""``cmspace`` command line.

Results go to standard output only after a command has fully succeeded;
diagnostics go to standard error.  Exit codes: 0 success, 1 validation
failure, 2 usage or parse error, 3 step budget exhausted.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .budget import DEFAULT_STEPS, BudgetExhausted
from .cover import get_cover
from .expr import PromiseMissing, eval_mu, eval_tilde, parse, parse_promises
from .names import (
    MuName,
    NameFileError,
    classify,
    dump_prefix,
    load_prefix,
    validate,
)
from .ring import ParseError, fmt_rat, get_space
from .tilde_ops import mu_restricted, mu_tilde_of, reduce_mu_to_tilde

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _interval(lo, hi) -> str:
    return f"{fmt_rat(lo)} {'INF' if hi is None else fmt_rat(hi)}"


def _cover(args):
    try:
        return get_cover(get_space(args.space), args.cover)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _mu_name(args, text):
    return eval_mu(parse(text), _cover(args), parse_promises(args.promise), args.step_budget)


def _tilde_name(args, text):
    return eval_tilde(parse(text), _cover(args))


def _stream_lines(stream, k):
    return [_interval(*stream[n]) for n in range(1, k + 1)]


def cmd_measure(args):
    from .mu_ops import mu_of

    return _stream_lines(mu_of(_mu_name(args, args.expr)), args.precision)


def cmd_tmeasure(args):
    return _stream_lines(mu_tilde_of(_tilde_name(args, args.expr)), args.precision)


def cmd_tmu_restricted(args):
    if args.n < 1:
        raise UsageError("n must be at least 1")
    return _stream_lines(mu_restricted(_tilde_name(args, args.expr), args.n), args.precision)


def cmd_classify(args):
    return [classify(_mu_name(args, args.expr))]


def cmd_expand(args):
    if args.len < 1:
        raise UsageError("--len must be at least 1")
    name = _tilde_name(args, args.expr) if args.tilde else _mu_name(args, args.expr)
    return [dump_prefix(name, args.len).rstrip("\n")]


def _read(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="ascii") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def cmd_validate(args):
    name = load_prefix(_read(args.file))
    length = name.terms.limit if args.len is None else min(args.len, name.terms.limit)
    rep = validate(name, length)
    if not rep.ok:
        raise _Invalid(rep.summary())
    return [rep.summary()]


def cmd_reduce(args):
    name = load_prefix(_read(args.file))
    if not isinstance(name, MuName):
        raise UsageError("reduce expects a MUNAME file")
    if name.terms.limit < 3:
        raise UsageError("reduce needs at least 3 terms")
    return [dump_prefix(reduce_mu_to_tilde(name), name.terms.limit - 2).rstrip("\n")]


class _Invalid(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--space", default="lebesgue",
                        help="lebesgue (lebesgue-line) or counting (counting-naturals)")
    common.add_argument("--cover", default="fast", choices=("fast", "generic"))
    common.add_argument("--step-budget", type=int, default=DEFAULT_STEPS, metavar="B",
                        help="search steps allowed per term of a partial operation")
    common.add_argument("--promise", action="append", default=[], metavar="TAG[@K]",
                        help="declare a partial operation's domain: finite-or-inf-meet, "
                             "finite-or-inf-diff, finite-or-coco or all; @K targets the K-th operator")

    p = argparse.ArgumentParser(prog="cmspace", description="Exact computation with names of measurable sets.")
    p.add_argument("--version", action="version", version=f"cmspace {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def precision(sp):
        sp.add_argument("--precision", type=int, default=10, metavar="K",
                        help="print intervals for steps 1..K; the last has width <= 2*2^-K")

    sp = sub.add_parser("measure", parents=[common], help="intervals for μ(A)")
    sp.add_argument("expr")
    precision(sp)
    sp.set_defaults(fn=cmd_measure)

    sp = sub.add_parser("tmeasure", parents=[common], help="intervals for μ̃(A)")
    sp.add_argument("expr")
    precision(sp)
    sp.set_defaults(fn=cmd_tmeasure)

    sp = sub.add_parser("tmu-restricted", parents=[common], help="intervals for μ(A ∩ C_n) from a tilde name")
    sp.add_argument("expr")
    sp.add_argument("n", type=int)
    precision(sp)
    sp.set_defaults(fn=cmd_tmu_restricted)

    sp = sub.add_parser("classify", parents=[common], help="Finite or Infinite")
    sp.add_argument("expr")
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("expand", parents=[common], help="write a name-prefix file")
    sp.add_argument("expr")
    sp.add_argument("--len", "--prefix-len", dest="len", type=int, default=8, metavar="N")
    sp.add_argument("--tilde", action="store_true", help="expand a δ_μ̃ name instead of a δ_μ name")
    sp.set_defaults(fn=cmd_expand)

    sp = sub.add_parser("validate", parents=[common], help="check a name-prefix file")
    sp.add_argument("file")
    sp.add_argument("--len", "--prefix-len", dest="len", type=int, default=None, metavar="N")
    sp.set_defaults(fn=cmd_validate)

    sp = sub.add_parser("reduce", parents=[common], help="δ_μ prefix file to δ_μ̃ prefix file")
    sp.add_argument("file")
    sp.set_defaults(fn=cmd_reduce)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.step_budget < 1:
        print("cmspace: --step-budget must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        lines = args.fn(args)
    except BudgetExhausted as exc:
        print(f"cmspace: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except _Invalid as exc:
        print(f"cmspace: validation failed\n{exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ParseError, PromiseMissing, NameFileError, UsageError, ValueError, KeyError) as exc:
        print(f"cmspace: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write("".join(line + "\n" for line in lines))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
