"""Command-line front end: ``matchroute {gen,route,verify,lambda,bench,rt-exact}``.

Exit codes: 0 ok, 2 parse error, 3 infeasible parameters, 4 partition
failure, 5 routing failure, 6 verification mismatch, 7 spectral estimate
did not converge (``lambda --strict`` only).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .errors import (
    ExceedsCap,
    GraphError,
    MatchingError,
    ParseError,
    PartitionFailed,
    RetriesExhausted,
    RoutingFailed,
    TooLarge,
)
from .graph import estimate_lambda, gen_complete, gen_cycle, gen_hypercube, gen_random_regular
from .oracle import BenchSpec, bench_sweep, rows_to_csv, rt_exact
from .paths import BuilderParams
from .scheduler import route, substream
from .sim import verify_achieves

EXIT_OK, EXIT_PARSE, EXIT_INFEASIBLE, EXIT_PARTITION, EXIT_ROUTING, EXIT_MISMATCH, EXIT_NOCONV = 0, 2, 3, 4, 5, 6, 7


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    if args.kind == "random-regular":
        if args.d is None:
            raise ParseError("random-regular needs N and D")
        g = gen_random_regular(args.n, args.d, seed=substream(args.seed, "graph"))
    elif args.kind == "cycle":
        g = gen_cycle(args.n)
    elif args.kind == "complete":
        g = gen_complete(args.n)
    else:
        g = gen_hypercube(args.n)
    _emit(io.graph_to_text(g), args.out)
    return EXIT_OK


def cmd_route(args) -> int:
    g = io.read_graph(args.graph)
    pi = io.read_perm(args.perm)
    if len(pi) != g.n:
        raise ParseError(f"permutation length {len(pi)} does not match n={g.n}")
    params = BuilderParams(
        epsilon=args.epsilon,
        growth=args.growth,
        k=args.k,
        frontier_target=args.frontier_target,
        capacity=args.capacity,
        connect_margin=args.connect_margin,
        retry_limit=args.retry_limit,
    )
    report = route(
        g,
        pi,
        params,
        beta=args.beta,
        seed=args.seed,
        max_resamples=args.max_resamples,
        fallback=args.fallback,
    )
    sys.stdout.write(io.report_to_text(report))
    if args.out:
        as_json = args.json or args.out.endswith(".json")
        text = io.schedule_to_json(report.schedule, g) if as_json else io.schedule_to_text(report.schedule)
        Path(args.out).write_text(text)
    return EXIT_OK if report.verified else EXIT_MISMATCH


def cmd_verify(args) -> int:
    g = io.read_graph(args.graph)
    pi = io.read_perm(args.perm)
    schedule, digest = io.read_schedule(args.schedule)
    if digest is not None and digest != io.graph_hash(g):
        print("mismatch: schedule was produced for a different graph", file=sys.stderr)
        return EXIT_MISMATCH
    ok, rounds = verify_achieves(g, pi, schedule)
    print(f"{'ok' if ok else 'mismatch'} rounds={rounds}")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_lambda(args) -> int:
    g = io.read_graph(args.graph)
    prof = estimate_lambda(g, tol=args.tol, max_iter=args.max_iter, seed=substream(args.seed, "lambda"))
    print(f"lambda_hat {prof.lambda_hat:.10f}")
    print(f"D {prof.growth_rate:.10f}")
    print(f"iterations {prof.iterations}")
    print(f"converged {'true' if prof.converged else 'false'}")
    if not prof.converged:
        print("warning: power iteration hit max_iter before reaching tol", file=sys.stderr)
        if args.strict:
            return EXIT_NOCONV
    return EXIT_OK


def cmd_bench(args) -> int:
    spec = BenchSpec.read(args.spec)
    rows = bench_sweep(spec, jobs=args.jobs)
    _emit(rows_to_csv(rows), args.out)
    return EXIT_OK if all(r.verified for r in rows) else EXIT_ROUTING


def cmd_rt_exact(args) -> int:
    g = io.read_graph(args.graph)
    pi = io.read_perm(args.perm)
    print(rt_exact(g, pi, cap=args.cap))
    return EXIT_OK


class _DefaultsFormatter(argparse.ArgumentDefaultsHelpFormatter):
    # derived defaults (None) are described in the help text itself
    def _get_help_string(self, action):
        if action.default is None or action.default is False:
            return action.help
        return super()._get_help_string(action)


def build_parser() -> argparse.ArgumentParser:
    fmt = _DefaultsFormatter
    parser = argparse.ArgumentParser(prog="matchroute", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a graph file", formatter_class=fmt)
    p.add_argument("kind", choices=["random-regular", "cycle", "complete", "hypercube"])
    p.add_argument("n", type=int, help="vertex count (dimension for hypercube)")
    p.add_argument("d", type=int, nargs="?", help="degree (random-regular only)")
    p.add_argument("--seed", type=int, default=0, help="randomness seed")
    p.add_argument("--out", help="output path (stdout if omitted)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("route", help="route a permutation and print the report", formatter_class=fmt)
    p.add_argument("graph")
    p.add_argument("perm")
    p.add_argument("--out", help="schedule output path")
    p.add_argument("--json", action="store_true", help="write the schedule as JSON")
    p.add_argument("--seed", type=int, default=0, help="seed for the partition, builder and lambda sub-streams")
    p.add_argument("--epsilon", type=float, default=BuilderParams.epsilon, help="batch fraction")
    p.add_argument("--growth", type=int, default=None, help="per-parent frontier growth (default max(2, floor(d / lambda_hat)))")
    p.add_argument("--k", type=int, default=None, help="layers per path (default: fewest reaching the frontier target)")
    p.add_argument("--frontier-target", type=int, default=None, help="final frontier size (default max(floor(eps n), ceil(sqrt(margin n / d))))")
    p.add_argument("--capacity", type=float, default=None, help="retained edges per layer (default n / 24)")
    p.add_argument("--connect-margin", type=float, default=BuilderParams.connect_margin, help="expected crossing edges between final frontiers")
    p.add_argument("--retry-limit", type=int, default=BuilderParams.retry_limit, help="extra attempts per path")
    p.add_argument("--beta", type=float, default=1 / 3, help="partition degree fraction")
    p.add_argument("--max-resamples", type=int, default=None, help="partition repair budget (default 100 n)")
    p.add_argument("--fallback", action="store_true", help="swap leftover pairs along shortest paths")
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("verify", help="re-simulate a schedule", formatter_class=fmt)
    p.add_argument("graph")
    p.add_argument("perm")
    p.add_argument("schedule")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lambda", help="estimate the second largest absolute eigenvalue", formatter_class=fmt)
    p.add_argument("graph")
    p.add_argument("--tol", type=float, default=1e-8, help="relative change at which to stop")
    p.add_argument("--max-iter", type=int, default=None, help="iteration cap (default max(100, 10 n ln n))")
    p.add_argument("--seed", type=int, default=0, help="seed of the start vector")
    p.add_argument("--strict", action="store_true", help="exit 7 when the estimate did not converge")
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("bench", help="run a scaling sweep and write CSV", formatter_class=fmt)
    p.add_argument("spec", help='JSON: {"d": 32, "n": [128, 256], "seeds": 10, "params": {...}}')
    p.add_argument("--out", help="CSV path (stdout if omitted)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("rt-exact", help="exact routing number by BFS (n <= 8)", formatter_class=fmt)
    p.add_argument("graph")
    p.add_argument("perm")
    p.add_argument("--cap", type=int, default=None, help="search depth limit (default 3 n)")
    p.set_defaults(func=cmd_rt_exact)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (GraphError, TooLarge, RetriesExhausted, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except PartitionFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARTITION
    except (RoutingFailed, ExceedsCap) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ROUTING
    except MatchingError as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
