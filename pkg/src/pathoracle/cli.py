"""``pathoracle`` command line: gen, bench, audit.

Exit codes: 0 success, 1 stretch-bound or audit violation, 2 bad input.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .bench import ORACLES, RunConfig, audit_record, build_oracle, dump_json, load_graph, run_bench, write_csv
from .errors import DisconnectedGraphError, GraphFormatError, ParameterError
from .graph import density_lambda, generate_graph, parse_weight_mode, write_graph
from .store import load_oracle, save_oracle

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def _graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--in", dest="graph_in", help="graph TSV file")
    p.add_argument("--model", default="gnm", choices=["gnm", "path", "cycle", "grid"])
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--weights", default="unit", help="unit or uniform_int:LO:HI")
    p.add_argument("--seed", type=int, default=0)


def _oracle_args(p: argparse.ArgumentParser, default: str) -> None:
    p.add_argument("--oracle", default=default, choices=ORACLES)
    p.add_argument("--k", type=int, default=2, help="TZ parameter of the basic oracle")
    p.add_argument("--h", type=int, default=None, help="levels (multilevel default 2; tilde derives it)")
    p.add_argument("--r", type=int, default=2, help="greedy spanner stretch 2r-1")
    p.add_argument("--sampling", default="uniform", choices=["uniform", "degree_weighted"])
    p.add_argument("--spanner-file", help="external spanner (graph TSV of host edges) for --oracle composed")
    p.add_argument("--spanner-stretch", type=float, help="stretch of the external spanner")
    p.add_argument("--save", help="write the built oracle here")
    p.add_argument("--load", help="load a previously saved oracle instead of building")
    p.add_argument("--json", dest="json_out", help="JSON output path (default stdout)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pathoracle", description="Path-reporting distance oracles.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a seeded graph file")
    _graph_args(gen)
    gen.add_argument("--out", required=True)

    bench = sub.add_parser("bench", help="build an oracle and run a verified query workload")
    _graph_args(bench)
    _oracle_args(bench, "multilevel")
    bench.add_argument("--queries", type=int, default=1000)
    bench.add_argument("--pairs-file", help="query pairs, one 'u v' per line")
    bench.add_argument("--verify", type=float, default=None,
                       help="fraction of queries checked against exact Dijkstra "
                            "(default 1.0 up to n=4096, else 0.1)")
    bench.add_argument("--out", help="CSV output path (default stdout)")

    audit = sub.add_parser("audit", help="per-level pair and branching statistics")
    _graph_args(audit)
    _oracle_args(audit, "multilevel")
    return parser


def _config(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in vars(cfg):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    return cfg


def cmd_gen(args) -> int:
    g = generate_graph(args.model, args.n, args.m, parse_weight_mode(args.weights), seed=args.seed)
    write_graph(g, args.out)
    print(f"n={g.n} m={g.m} lambda={density_lambda(g):.4f}")
    return EXIT_OK


def cmd_bench(args) -> int:
    cfg = _config(args)
    res = run_bench(cfg)
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            write_csv(res.rows, fh)
    else:
        write_csv(res.rows, sys.stdout)
    text = dump_json(res.summary, cfg.json_out)
    if not cfg.json_out:
        print(text, file=sys.stderr if not cfg.out else sys.stdout)
    for line in res.violations:
        print(f"BOUND VIOLATION {line}", file=sys.stderr)
    return EXIT_VIOLATION if res.violations else EXIT_OK


def cmd_audit(args) -> int:
    cfg = _config(args)
    if cfg.load:
        oracle = load_oracle(cfg.load)
    else:
        g = load_graph(cfg)
        oracle = build_oracle(cfg, g, [], cfg.seed)
        if cfg.save:
            save_oracle(oracle, cfg.save)
    rec = audit_record(oracle)
    text = dump_json(rec, cfg.json_out)
    if not cfg.json_out:
        print(text)
    if rec["violations"]:
        print(f"CONFINEMENT VIOLATIONS {rec['violations']}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    handler = {"gen": cmd_gen, "bench": cmd_bench, "audit": cmd_audit}[args.command]
    try:
        return handler(args)
    except (ParameterError, GraphFormatError, DisconnectedGraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
