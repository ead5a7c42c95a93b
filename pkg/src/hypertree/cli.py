"""Command-line interface.

Each run prints one JSON object (a :class:`RunReport`) on stdout and a
short human summary on stderr.  Exit codes: 0 = YES / pass, 1 = NO / fail,
2 = usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .decider import DEFAULT_EPSILON_EXPONENT, Decision, Verdict, benchmark, decide
from .errors import HypertreeError, TooLarge, UnsupportedUniformity
from .hypergraph import Hypergraph, parse, serialize
from .oracle import enumerate_spanning_hypertrees
from .reduction import decide_perfect_matching, thomassen_lift
from .verify import run_suite

SEED_ENV = "HYPERTREE_SEED"
LIST_LIMIT = 10_000

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


@dataclass
class RunReport:
    """Structured result of one CLI run; ``wall_ms`` is the only timing field
    outside ``result`` of the ``bench`` command."""

    command: str
    instance_digest: str | None = None
    parameters: dict = field(default_factory=dict)
    verdict: str | None = None
    witness: dict | None = None
    error_bound: str | None = None
    result: dict = field(default_factory=dict)
    error: str | None = None
    wall_ms: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        return cls(**json.loads(text))


def _fraction(x: Fraction | None) -> str | None:
    return None if x is None else f"{x.numerator}/{x.denominator}"


def _load(path: str) -> Hypergraph:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise HypertreeError(f"cannot read {path}: {exc.strerror}") from None
    return parse(data)


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise HypertreeError(f"{SEED_ENV}={raw!r} is not an integer") from None


def _fill_decision(report: RunReport, decision: Decision) -> int:
    report.verdict = decision.verdict.value
    report.witness = decision.witness.to_dict() if decision.witness else None
    report.error_bound = _fraction(decision.error_bound)
    report.result["reason"] = decision.reason
    report.result["trials_run"] = decision.trials_run
    if decision.strategy is not None:
        report.parameters.update(
            q=decision.strategy.q, trials=decision.strategy.trials, mode=decision.strategy.mode.value
        )
    return EXIT_YES if decision.verdict is Verdict.YES else EXIT_NO


def cmd_decide(args, report: RunReport) -> int:
    graph = _load(args.path)
    if graph.k != 3:
        raise UnsupportedUniformity(f"decide needs a 3-uniform instance, got k={graph.k}")
    report.instance_digest = graph.digest
    report.parameters.update(epsilon_exponent=args.epsilon_exp, seed=args.seed, strategy=args.strategy)
    decision = decide(graph, args.epsilon_exp, args.seed, args.strategy, args.q, args.threads)
    return _fill_decision(report, decision)


def cmd_oracle(args, report: RunReport) -> int:
    graph = _load(args.path)
    report.instance_digest = graph.digest
    report.parameters.update(count_only=args.count_only)
    trees = enumerate_spanning_hypertrees(graph)
    report.result["count"] = len(trees)
    if not args.count_only:
        if len(trees) > LIST_LIMIT:
            raise TooLarge(f"{len(trees)} hypertrees exceed the listing limit {LIST_LIMIT}; rerun with --count-only")
        edges = graph.edges
        report.result["hypertrees"] = [[list(edges[i]) for i in t] for t in trees]
    report.verdict = Verdict.YES.value if trees else Verdict.NO_CERTAIN.value
    return EXIT_YES if trees else EXIT_NO


def cmd_verify(args, report: RunReport) -> int:
    report.parameters.update(
        max_n=args.max_n, seed=args.seed, trials=args.trials, instances=args.instances, fault=args.inject_fault
    )
    results = run_suite(args.max_n, args.seed, args.trials, args.instances, args.inject_fault)
    report.result["properties"] = [r.to_dict() for r in results]
    ok = all(r.passed for r in results)
    report.verdict = "PASS" if ok else "FAIL"
    return EXIT_YES if ok else EXIT_NO


def cmd_reduce(args, report: RunReport) -> int:
    graph = _load(args.path)
    if graph.k != 2:
        raise UnsupportedUniformity(f"reduce needs a graph (k=2), got k={graph.k}")
    lift = thomassen_lift(graph)
    report.instance_digest = graph.digest
    text = serialize(lift.lifted)
    report.result["lifted_instance"] = text
    report.result["lifted_digest"] = lift.lifted.digest
    if args.output:
        Path(args.output).write_text(text)
    if not args.decide:
        return EXIT_YES
    report.parameters.update(epsilon_exponent=args.epsilon_exp, seed=args.seed)
    return _fill_decision(report, decide_perfect_matching(graph, args.epsilon_exp, args.seed, threads=args.threads))


def cmd_bench(args, report: RunReport) -> int:
    report.parameters.update(sizes=args.sizes, seed=args.seed, repeats=args.repeats)
    bench = benchmark(args.sizes, args.seed, args.epsilon_exp, args.repeats)
    report.result["rows"] = [asdict(r) for r in bench.rows]
    report.result["ratios"] = bench.ratios
    return EXIT_YES


def _sizes(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(s) for s in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypertree", description="Spanning hypertrees in 3-uniform hypergraphs.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def seeded(p):
        p.add_argument("--seed", type=int, default=None, help=f"RNG seed (default: ${SEED_ENV} or 0)")

    def threaded(p):
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker cap for parallel trials")

    p = sub.add_parser("decide", help="randomised decision with certificate")
    p.add_argument("path")
    p.add_argument("--epsilon-exp", type=int, default=DEFAULT_EPSILON_EXPONENT, help="target error 2^-b")
    seeded(p)
    p.add_argument("--strategy", choices=("auto", "repeated", "single"), default="auto")
    p.add_argument("--q", type=int, default=None, help="force this prime field size")
    threaded(p)
    p.set_defaults(run=cmd_decide)

    p = sub.add_parser("oracle", help="exact brute-force enumeration")
    p.add_argument("path")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(run=cmd_oracle)

    p = sub.add_parser("verify", help="run the exact property suite")
    p.add_argument("--max-n", type=int, default=7)
    seeded(p)
    p.add_argument("--trials", type=int, default=20, help="weight vectors per instance")
    p.add_argument("--instances", type=int, default=100, help="random instances in the corpus")
    p.add_argument("--inject-fault", choices=("sign-flip",), default=None, help=argparse.SUPPRESS)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("reduce", help="lift a graph to a 3-uniform instance")
    p.add_argument("path")
    p.add_argument("--decide", action="store_true", help="also decide perfect-matching existence")
    p.add_argument("-o", "--output", help="write the lifted instance here")
    p.add_argument("--epsilon-exp", type=int, default=DEFAULT_EPSILON_EXPONENT)
    seeded(p)
    threaded(p)
    p.set_defaults(run=cmd_reduce)

    p = sub.add_parser("bench", help="time decide on complete instances")
    p.add_argument("--sizes", type=_sizes, default=[201, 401], help="comma-separated vertex counts")
    seeded(p)
    p.add_argument("--epsilon-exp", type=int, default=DEFAULT_EPSILON_EXPONENT)
    p.add_argument("--repeats", type=int, default=1)
    p.set_defaults(run=cmd_bench)
    return parser


def _summary(report: RunReport) -> str:
    if report.error:
        return f"error: {report.error}"
    head = [report.command]
    if report.verdict:
        head.append(report.verdict)
    if "count" in report.result:
        head.append(f"count={report.result['count']}")
    if report.error_bound:
        head.append(f"error<={report.error_bound}")
    lines = [" ".join(head)]
    for prop in report.result.get("properties", []):
        lines.append(f"  {'pass' if prop['passed'] else 'FAIL'} {prop['name']} ({prop['checked']} checks)")
    for row in report.result.get("rows", []):
        timing = f"{row['seconds']:.3f}s" if row["seconds"] is not None else row["note"]
        lines.append(f"  N={row['num_vertices']} {timing}")
    if report.result.get("ratios"):
        lines.append("  ratios " + " ".join(f"{r:.2f}" for r in report.result["ratios"]))
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_YES
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    report = RunReport(command=args.command)
    t0 = time.perf_counter()
    try:
        if hasattr(args, "seed") and args.seed is None:
            args.seed = _default_seed()
        code = args.run(args, report)
    except (HypertreeError, ValueError) as exc:
        report.error = str(exc)
        code = EXIT_ERROR
    report.wall_ms = round((time.perf_counter() - t0) * 1000, 3)
    print(report.to_json())
    print(_summary(report), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
