"""Command-line front end over the protocol file format.

Subcommands are thin adapters onto the library: build writes the stock
constructions, simulate replays one input, verify/search decide exhaustively,
transform rewrites a protocol file, figure dumps the crossover CSV. Output is
deterministic; exit codes: 0 ok, 1 usage, 2 counterexample, 3 budget.
"""

import argparse
import sys

from . import constructions, serial, transforms
from .coloring import SearchBudgetError, optimal_search
from .core import GeneralProtocol, TableProtocol, complexity, simulate, table_to_general
from .verify import DEFAULT_BUDGET, EnumerationBudgetError, verify_ad, verify_cd

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COUNTEREXAMPLE = 2
EXIT_BUDGET = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="meqlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="write a stock protocol to a file")
    build.add_argument("what", choices=["star", "table36", "ext6h", "par6h", "bin2k", "cdwrap"])
    build.add_argument("base", nargs="?", help="base protocol file (cdwrap only)")
    build.add_argument("--n", type=int, default=3)
    build.add_argument("--M", type=int, default=6)
    build.add_argument("--k", type=int, default=1)
    build.add_argument("--h", type=int, default=1)
    build.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    build.add_argument("--out", required=True)

    sim = sub.add_parser("simulate", help="replay a protocol on one input vector")
    sim.add_argument("file")
    sim.add_argument("--x", required=True, help="comma-separated inputs, e.g. 1,2,1")

    ver = sub.add_parser("verify", help="exhaustively check a protocol file")
    ver.add_argument("file")
    mode = ver.add_mutually_exclusive_group()
    mode.add_argument("--ad", action="store_true", help="anyone-detects contract (default)")
    mode.add_argument("--cd", action="store_true", help="centralized-detect contract")
    ver.add_argument("--detector", type=int, default=None)
    ver.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    tra = sub.add_parser("transform", help="rewrite a protocol file")
    tra.add_argument("file")
    op = tra.add_mutually_exclusive_group(required=True)
    op.add_argument("--flip", type=int, metavar="L", help="reverse step L")
    op.add_argument("--iid", action="store_true", help="normalize to per-link tables")
    tra.add_argument("--out", required=True)

    sea = sub.add_parser("search", help="exact three-node optimum for alphabet size M")
    sea.add_argument("--M", type=int, required=True)
    sea.add_argument("--out", default=None, help="write the witness protocol here")

    fig = sub.add_parser("figure", help="CSV of binary-construction cost vs the 2k baseline")
    fig.add_argument("--kmax", type=int, required=True)
    return parser


def _parse_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise _UsageError(f"cannot parse input vector {text!r}") from None


def _cmd_build(args) -> int:
    if args.what == "star":
        p = constructions.star_protocol(args.n, args.M)
    elif args.what == "table36":
        p = constructions.table36()
    elif args.what == "ext6h":
        p = constructions.extended_table(args.h)
    elif args.what == "par6h":
        mapping = constructions.VectorMapping.radix(6**args.h, 6, args.h)
        p = constructions.parallel_compose(constructions.table36(), mapping)
    elif args.what == "bin2k":
        p = constructions.meq3_2k(args.k)
    else:
        if not args.base:
            raise _UsageError("build cdwrap needs a base protocol file")
        base = serial.load_protocol(args.base)
        if not isinstance(base, TableProtocol):
            raise _UsageError("cdwrap expects a table-kind protocol file")
        p = constructions.cd_wrapper(base, args.budget)
    serial.save_protocol(p, args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_simulate(args) -> int:
    p = serial.load_protocol(args.file)
    transcript = simulate(p, _parse_vector(args.x))
    print(f"symbols: {transcript.symbols}")
    print(f"decisions: {transcript.decisions}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    p = serial.load_protocol(args.file)
    if args.cd:
        verdict = verify_cd(p, args.detector, args.budget)
    else:
        verdict = verify_ad(p, args.budget)
    if verdict.ok:
        c = complexity(p)
        print(f"ok, {verdict.vectors_checked} vectors, C=log2 {c.product} = {c.bits:.6f} bits")
        return EXIT_OK
    values, decisions = verdict.counterexample
    print(f"counterexample: input={values} decisions={decisions}")
    return EXIT_COUNTEREXAMPLE


def _cmd_transform(args) -> int:
    p = serial.load_protocol(args.file)
    if isinstance(p, TableProtocol):
        p = table_to_general(p)
    assert isinstance(p, GeneralProtocol)
    if args.iid:
        out = transforms.make_iid(p)
    else:
        out = transforms.flip_step(p, args.flip)
    serial.save_protocol(out, args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_search(args) -> int:
    result = optimal_search(args.M)
    print(
        f"optimal product {result.product} "
        f"via ({result.U_size},{result.V_size},{result.W_size})"
    )
    print(f"bits {result.bits:.6f}")
    if args.out:
        from .coloring import protocol_from_coloring

        serial.save_protocol(protocol_from_coloring(result.witness), args.out)
        print(f"witness written to {args.out}")
    return EXIT_OK


def _cmd_figure(args) -> int:
    print("k,C,upper")
    for k in range(1, args.kmax + 1):
        print(f"{k},{constructions.complexity_formula_2k(k)},{2 * k}")
    return EXIT_OK


_COMMANDS = {
    "build": _cmd_build,
    "simulate": _cmd_simulate,
    "verify": _cmd_verify,
    "transform": _cmd_transform,
    "search": _cmd_search,
    "figure": _cmd_figure,
}


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationBudgetError as err:
        print(f"budget exceeded: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except SearchBudgetError as err:
        print(f"budget exceeded: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, KeyError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
