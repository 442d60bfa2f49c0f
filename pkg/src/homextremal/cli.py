"""Command-line front end.

Exit status: 0 success or pass, 1 claim violated, 2 usage error,
3 budget or cap refusal, 4 cache integrity failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import enumeration
from .cache import PersistentCache, default_dir
from .enumeration import EnumerationRefused, EnumSpec, enumerate_graphs
from .graph6 import encode as graph6_encode, read_lines
from .graphs import GraphError, SimpleGraph, TargetGraph, copies, turan
from .harness import (
    check_closed_forms,
    check_conjecture,
    check_lemma42,
    check_path_lemma,
    check_prop41,
    check_theorem31,
    check_tprime_factor,
    minimal_violating_copies,
    scan_extremal,
    to_json,
)
from .hom import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    CacheIntegrityError,
    CopiesTarget,
    default_cache,
    hom,
    hom_q_colourings,
)
from .structure import compute_k0, s_value
from .targets import parse_target

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_REFUSED, EXIT_INTEGRITY = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _graphs(arg: str) -> list[SimpleGraph]:
    path = Path(arg)
    if path.exists():
        with open(path, "rb") as fh:
            return list(read_lines(fh))
    return [next(read_lines([arg]))]


def _single_graph(arg: str) -> SimpleGraph:
    gs = _graphs(arg)
    if len(gs) != 1:
        raise UsageError(f"expected exactly one graph in {arg!r}, found {len(gs)}")
    return gs[0]


def _explicit_target(arg: str) -> TargetGraph:
    t = parse_target(arg)
    if isinstance(t, CopiesTarget):
        raise UsageError("this command needs an explicit (non-symbolic) target")
    return t


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_report(report, args) -> int:
    text = report.to_csv() if getattr(args, "csv", False) else report.to_json()
    _emit(text, args.report)
    return EXIT_OK if report.passed else EXIT_VIOLATED


# -- subcommands ----------------------------------------------------------------


def cmd_count(args) -> int:
    target = parse_target(args.target)
    for g in _graphs(args.graph):
        print(hom(g, target))
    return EXIT_OK


def cmd_count_qcol(args) -> int:
    for g in _graphs(args.graph):
        print(hom_q_colourings(g, args.q))
    return EXIT_OK


def _spec(args) -> EnumSpec:
    return EnumSpec(args.n, args.min_degree, args.connected, args.shard_prefix)


def cmd_enumerate(args) -> int:
    graphs = enumerate_graphs(_spec(args), workers=args.workers)
    _emit("".join(graph6_encode(g).decode() + "\n" for g in graphs), args.out)
    return EXIT_OK


def cmd_scan(args) -> int:
    report = scan_extremal(_spec(args), parse_target(args.target),
                           recount_every=args.recount_every, budget=args.budget,
                           workers=args.workers)
    text = report.to_csv() if args.csv else report.to_json()
    _emit(text, args.report)
    return EXIT_OK


def cmd_s_value(args) -> int:
    prof = s_value(args.delta, _explicit_target(args.target), args.budget)
    print(prof.s_value)
    return EXIT_OK


def cmd_k0(args) -> int:
    print(compute_k0(args.t, args.alpha))
    return EXIT_OK


def cmd_verify(args) -> int:
    which = args.which
    if which == "path-lemma":
        forced = [_explicit_target(x) for x in args.force_include]
        report = check_path_lemma(args.max_target_vertices, args.r_max, forced)
    elif which == "lemma42":
        report = check_lemma42(args.delta, _explicit_target(args.target),
                               range(args.n_min, args.n_max + 1))
    elif which == "theorem31":
        k = args.k if args.k is not None else compute_k0(args.t, args.alpha)
        report = check_theorem31(args.t, args.alpha, args.m, k, workers=args.workers)
    elif which == "tprime":
        report = check_tprime_factor(args.budget)
    elif which == "closed-forms":
        report = check_closed_forms(args.samples, args.seed)
    elif which == "prop41":
        report = check_prop41(args.max_n, workers=args.workers)
    elif which == "conjecture":
        return _verify_conjecture(args)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(which)
    return _emit_report(report, args)


def _verify_conjecture(args) -> int:
    if args.graph:
        g = _single_graph(args.graph)
    else:
        # default instance: two disjoint copies of T_3(6)
        g = copies(2, turan(3, 6))
    if args.find_min_k:
        base = _explicit_target(args.target)
        k = minimal_violating_copies(g, args.delta, base, args.k_max)
        if k is None:
            _emit(to_json({"minimal_violating_k": None}), args.report)
            return EXIT_OK
        at = check_conjecture(g, args.delta, CopiesTarget(k, base)).to_dict()
        before = (check_conjecture(g, args.delta, CopiesTarget(k - 1, base)).to_dict()
                  if k > 1 else None)
        _emit(to_json({"minimal_violating_k": str(k), "at_k": at, "at_k_minus_1": before}),
              args.report)
        return EXIT_VIOLATED
    cmp = check_conjecture(g, args.delta, parse_target(args.target))
    _emit(cmp.to_json(), args.report)
    return EXIT_OK if cmp.verdict == "boundHolds" else EXIT_VIOLATED


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="brute-force work budget in assignments")
    common.add_argument("--cache-dir", default=None,
                        help="count cache directory (default: $HOMEXTREMAL_CACHE_DIR)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--enum-cap", type=int, default=None,
                        help="largest n the enumerator accepts")

    p = argparse.ArgumentParser(prog="homextremal", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[common], help="print hom(G, H)")
    c.add_argument("--graph", required=True, help="graph6 string or file")
    c.add_argument("--target", required=True, help="named:SPEC, JSON, or JSON file")
    c.set_defaults(func=cmd_count)

    c = sub.add_parser("count-qcol", parents=[common], help="proper q-colourings")
    c.add_argument("--graph", required=True)
    c.add_argument("--q", type=int, required=True)
    c.set_defaults(func=cmd_count_qcol)

    def enum_flags(c):
        c.add_argument("--n", type=int, required=True)
        c.add_argument("--min-degree", type=int, default=0)
        c.add_argument("--connected", action="store_true")
        c.add_argument("--shard-prefix", default=None)

    c = sub.add_parser("enumerate", parents=[common], help="graph6 lines, one per class")
    enum_flags(c)
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("scan-extremal", parents=[common])
    enum_flags(c)
    c.add_argument("--target", required=True)
    c.add_argument("--recount-every", type=int, default=10)
    c.add_argument("--report", default=None)
    c.add_argument("--csv", action="store_true")
    c.set_defaults(func=cmd_scan)

    c = sub.add_parser("s-value", parents=[common])
    c.add_argument("--delta", type=int, required=True)
    c.add_argument("--target", required=True)
    c.set_defaults(func=cmd_s_value)

    c = sub.add_parser("k0", parents=[common])
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--alpha", type=int, required=True)
    c.set_defaults(func=cmd_k0)

    v = sub.add_parser("verify", help="run one claim check")
    vs = v.add_subparsers(dest="which", required=True)

    def verify_parser(name):
        c = vs.add_parser(name, parents=[common])
        c.add_argument("--report", default=None)
        c.add_argument("--csv", action="store_true")
        c.set_defaults(func=cmd_verify)
        return c

    c = verify_parser("path-lemma")
    c.add_argument("--max-target-vertices", type=int, default=4)
    c.add_argument("--r-max", type=int, default=12)
    c.add_argument("--force-include", action="append", default=[])
    c = verify_parser("lemma42")
    c.add_argument("--delta", type=int, default=2)
    c.add_argument("--target", default="named:K3")
    c.add_argument("--n-min", type=int, default=3)
    c.add_argument("--n-max", type=int, default=20)
    c = verify_parser("theorem31")
    c.add_argument("--t", type=int, default=4)
    c.add_argument("--alpha", type=int, default=1)
    c.add_argument("--m", type=int, default=2)
    c.add_argument("--k", type=int, default=None, help="default: the least admissible k")
    verify_parser("tprime")
    c = verify_parser("closed-forms")
    c.add_argument("--samples", type=int, default=20)
    c.add_argument("--seed", type=int, default=0)
    c = verify_parser("prop41")
    c.add_argument("--max-n", type=int, default=8)
    c = verify_parser("conjecture")
    c.add_argument("--graph", default=None, help="default: 2 T_3(6)")
    c.add_argument("--delta", type=int, default=4)
    c.add_argument("--target", default="named:K3",
                   help="target, or the copied base with --find-min-k")
    c.add_argument("--find-min-k", action="store_true")
    c.add_argument("--k-max", type=int, default=10**6)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved_cap = enumeration.DEFAULT_CAP
    if args.enum_cap is not None:
        enumeration.DEFAULT_CAP = args.enum_cap
    default_cache.clear()
    try:
        if args.no_cache:
            return args.func(args)
        directory = Path(args.cache_dir) if args.cache_dir else default_dir()
        with PersistentCache(directory, default_cache):
            return args.func(args)
    except (BudgetExceeded, EnumerationRefused) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except CacheIntegrityError as exc:
        print(f"cache integrity failure: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except (UsageError, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        enumeration.DEFAULT_CAP = saved_cap


if __name__ == "__main__":
    sys.exit(main())
