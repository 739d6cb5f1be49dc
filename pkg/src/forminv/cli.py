"""Command-line front end.

Exit codes: 0 success, 1 a requested verification failed, 2 unreadable input
or bad arguments, 3 an input violates a mathematical precondition.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .coefficients import CoefficientSyntaxError, parse as parse_coeff
from .documents import (
    DocumentError,
    dumps,
    loads,
    map_from_doc,
    map_to_doc,
    series_from_doc,
    series_to_doc,
)
from .errors import DimensionError, PreconditionError, TruncationError
from .inversion import assemble_inverse, compute_N_sequence, forward_map, verify_inverse
from .series import FormalMap, TruncatedSeries, gradient
from .symmetric import Verdict, burgers_solve, jc_scan, legendre_transform
from .trees import automorphism_count, beta, enumerate_trees, prune_leaves, tree_factorial

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3


class _Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _common_flags(defaults: bool) -> argparse.ArgumentParser:
    # shared by the top-level parser and every subcommand so the global
    # flags work on either side of the subcommand name
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    p.add_argument("--in", dest="infile", metavar="PATH", default=d(None),
                   help="read the input document from PATH (default: stdin)")
    p.add_argument("--out", dest="outfile", metavar="PATH", default=d(None),
                   help="write the result to PATH (default: stdout)")
    p.add_argument("--threads", type=int, metavar="N", default=d(1),
                   help="worker threads; computation is currently single-threaded "
                        "and output never depends on this value")
    p.add_argument("--trunc", type=int, metavar="D", default=d(None),
                   help="working truncation degree; input polynomials are taken as exact to D")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forminv",
        # "--t" must not be read as a prefix of --threads or --trunc
        allow_abbrev=False,
        description="Exact formal inversion, Burgers slices, Legendre transforms and tree expansions.",
        parents=[_common_flags(True)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_flags(False)

    p = sub.add_parser("invert", parents=[common], allow_abbrev=False, help="formal inverse of z - H(z)")
    p.add_argument("--torder", type=int, metavar="M", default=None,
                   help="number of t-orders N_[1..M] (default: the truncation degree)")
    p.add_argument("--t", dest="t0", default="1", metavar="T0",
                   help="evaluate G_t at this t (coefficient grammar, default 1)")
    p.add_argument("--verify", action="store_true",
                   help="check both compositions with z - T0*H; exit 1 on failure")

    p = sub.add_parser("legendre", parents=[common], help="formal Legendre transform")
    p.add_argument("--check", action="store_true",
                   help="verify grad(fbar) o grad(f) = z and that transforming twice gives f")

    p = sub.add_parser("burgers", parents=[common], help="t-slices of the Burgers potential")
    p.add_argument("--torder", type=int, metavar="M", default=4)

    p = sub.add_parser("trees", parents=[common], help="binary rooted trees with m leaves")
    p.add_argument("--leaves", type=int, metavar="M", required=True)
    p.add_argument("--stats", action="store_true", help="print only the number of trees")

    p = sub.add_parser("jc-scan", parents=[common],
                       help="look for a polynomial-in-t Burgers solution (evidence only)")
    p.add_argument("--torder", type=int, metavar="M", default=8)
    p.add_argument("--window", type=int, metavar="W", default=5)
    return parser


def _read_input(args) -> object:
    try:
        if args.infile:
            with open(args.infile, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
    except OSError as exc:
        raise _Failure(EXIT_PARSE, f"cannot read input: {exc}") from exc
    return loads(text)


def _retrunc_series(s: TruncatedSeries, trunc: int | None) -> TruncatedSeries:
    return s if trunc is None else TruncatedSeries(s.poly, trunc)


def _retrunc_map(F: FormalMap, trunc: int | None) -> FormalMap:
    return F if trunc is None else FormalMap(TruncatedSeries(c.poly, trunc) for c in F)


def _cmd_invert(args, err) -> tuple[str, int]:
    H = _retrunc_map(map_from_doc(_read_input(args)), args.trunc)
    try:
        t0 = parse_coeff(args.t0)
    except CoefficientSyntaxError as exc:
        raise _Failure(EXIT_PARSE, str(exc)) from exc
    M = args.torder if args.torder is not None else max(1, H.trunc)
    if M < 1:
        raise _Failure(EXIT_PARSE, "--torder must be positive")
    seq = compute_N_sequence(H, M)
    G = assemble_inverse(seq, t0)
    code = EXIT_OK
    if args.verify:
        F = forward_map(H, t0)
        ok = verify_inverse(F, G)
        degree = min(F.trunc, G.trunc)
        status = "ok" if ok else "FAILED"
        print(f"verify: G(F(z)) = z and F(G(z)) = z through degree {degree}: {status}", file=err)
        code = EXIT_OK if ok else EXIT_VERIFY
    return dumps(map_to_doc(G)), code


def _cmd_legendre(args, err) -> tuple[str, int]:
    f = _retrunc_series(series_from_doc(_read_input(args)), args.trunc)
    fbar = legendre_transform(f)
    code = EXIT_OK
    if args.check:
        inverts = verify_inverse(gradient(f), gradient(fbar))
        back = legendre_transform(fbar) == f
        print(f"check: grad(fbar) inverts grad(f): {'ok' if inverts else 'FAILED'}", file=err)
        print(f"check: transform of fbar equals f: {'ok' if back else 'FAILED'}", file=err)
        code = EXIT_OK if inverts and back else EXIT_VERIFY
    return dumps(series_to_doc(fbar)), code


def _cmd_burgers(args, err) -> tuple[str, int]:
    P = _retrunc_series(series_from_doc(_read_input(args)), args.trunc)
    if args.torder < 1:
        raise _Failure(EXIT_PARSE, "--torder must be positive")
    sol = burgers_solve(P, args.torder)
    doc = {
        "torder": args.torder,
        "slices": [series_to_doc(q) for q in sol.slices],
        "residual_zero": sol.residual_zero,
    }
    print(f"residual through t-order {args.torder - 1}: "
          f"{'zero' if sol.residual_zero else 'NONZERO'}", file=err)
    return dumps(doc), EXIT_OK if sol.residual_zero else EXIT_VERIFY


def _cmd_trees(args, err) -> tuple[str, int]:
    if args.leaves < 1:
        raise _Failure(EXIT_PARSE, "--leaves must be positive")
    trees = enumerate_trees(args.leaves)
    if args.stats:
        return f"{len(trees)}\n", EXIT_OK
    lines = []
    for T in trees:
        lines.append(
            f"{T.encoding}\tleaves={T.leaves}\tvertices={T.vertices}\talpha={automorphism_count(T)}"
            f"\tpruned_factorial={tree_factorial(prune_leaves(T))}\tbeta={beta(T)}"
        )
    return "\n".join(lines) + "\n", EXIT_OK


def _cmd_jc_scan(args, err) -> tuple[str, int]:
    P = _retrunc_series(series_from_doc(_read_input(args)), args.trunc)
    if args.torder < 1 or args.window < 1:
        raise _Failure(EXIT_PARSE, "--torder and --window must be positive")
    degs = {sum(e) for e in P.terms}
    if len(degs) == 1:
        # a homogeneous input is exact, so it may be carried to any degree
        d = degs.pop()
        P = TruncatedSeries(P.poly, max(P.trunc, d, (d - 2) * args.torder + 2))
    res = jc_scan(P, args.torder, args.window)
    lines = [str(res)]
    if res.verdict is Verdict.POLYNOMIAL_WITNESSED:
        lines.append(f"largest nonzero t-order: {res.last_nonzero}")
        lines.append(f"Q_[m] = 0 for m = {res.last_nonzero + 1}..{args.torder}")
        if res.closed:
            lines.append("closed: the zero run covers the recurrence, Q_t is a polynomial in t")
        else:
            lines.append("closed: no (evidence only)")
    else:
        lines.append(f"Q_[{res.last_nonzero}] != 0 with only {args.torder - res.last_nonzero} "
                     f"zero slices after it (window {args.window})")
    return "\n".join(lines) + "\n", EXIT_OK


_COMMANDS = {
    "invert": _cmd_invert,
    "legendre": _cmd_legendre,
    "burgers": _cmd_burgers,
    "trees": _cmd_trees,
    "jc-scan": _cmd_jc_scan,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if args.threads < 1:
        print("forminv: --threads must be at least 1", file=sys.stderr)
        return EXIT_PARSE
    if args.trunc is not None and args.trunc < 0:
        print("forminv: --trunc must be non-negative", file=sys.stderr)
        return EXIT_PARSE
    try:
        text, code = _COMMANDS[args.command](args, sys.stderr)
    except _Failure as exc:
        print(f"forminv: {exc}", file=sys.stderr)
        return exc.code
    except (DocumentError, DimensionError) as exc:
        print(f"forminv: bad input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, TruncationError) as exc:
        print(f"forminv: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.outfile:
        with open(args.outfile, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
