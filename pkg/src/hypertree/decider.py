"""Randomised one-sided decision for spanning hypertrees in 3-uniform hypergraphs.

Each trial draws i.i.d. uniform weights in GF(q) for the edges of the
instance, builds Lambda, and evaluates det Lambda(1).  That determinant is
the square of the signed hypertree polynomial, which has degree n, so a
nonzero value proves a hypertree exists and an instance with hypertrees
yields zero with probability at most n/q per trial.
"""

from __future__ import annotations

import enum
import itertools
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InfeasibleParameters, InvalidInstance, WitnessMismatch
from .field import PRIME_SCAN_LIMIT, FieldCtx, FieldElem, sample_uniform_array, smallest_prime_geq
from .hypergraph import Hypergraph, complete_hypergraph, is_connected
from .skewmat import WeightAssignment, build_lambda, build_lambda_batch, det_gf, det_gf_batch, principal_minor

log = logging.getLogger(__name__)

DEFAULT_EPSILON_EXPONENT = 20
ROOT = 1


class Mode(str, enum.Enum):
    REPEATED = "REPEATED"
    SINGLE_BIG_FIELD = "SINGLE_BIG_FIELD"


class Verdict(str, enum.Enum):
    YES = "YES"
    NO_CERTAIN = "NO_CERTAIN"
    NO_PROBABLE = "NO_PROBABLE"


@dataclass(frozen=True)
class Strategy:
    mode: Mode
    q: int
    trials: int
    epsilon_exponent: int

    @property
    def epsilon(self) -> Fraction:
        return Fraction(1, 2**self.epsilon_exponent)


@dataclass(frozen=True)
class Witness:
    """Everything needed to regenerate the nonzero determinant of a YES."""

    q: int
    seed: int
    trial: int
    instance_digest: str
    weights_digest: str
    determinant: int

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "seed": self.seed,
            "trial": self.trial,
            "instance_digest": self.instance_digest,
            "weights_digest": self.weights_digest,
            "determinant": self.determinant,
        }

    @classmethod
    def from_dict(cls, d: dict) -> Witness:
        return cls(**d)


@dataclass(frozen=True)
class Decision:
    verdict: Verdict
    witness: Witness | None = None
    error_bound: Fraction | None = None
    strategy: Strategy | None = None
    reason: str = ""
    trials_run: int = 0

    @property
    def has_hypertree(self) -> bool:
        return self.verdict is Verdict.YES


def _mode(mode) -> Mode | None:
    if mode is None or isinstance(mode, Mode):
        return mode
    key = str(mode).lower()
    aliases = {"auto": None, "repeated": Mode.REPEATED, "single": Mode.SINGLE_BIG_FIELD,
               "single_big_field": Mode.SINGLE_BIG_FIELD}
    if key not in aliases:
        raise ValueError(f"unknown strategy {mode!r}")
    return aliases[key]


def choose_strategy(n: int, epsilon_exponent: int, mode: Mode | str | None = None, q: int | None = None) -> Strategy:
    """Pick field size and trial count so the false-NO probability is at most 2^-b.

    SINGLE_BIG_FIELD takes q >= n 2^b and one trial; REPEATED takes the
    smallest prime q >= 2n + 1 and b trials.  An explicit ``q`` is
    classified by whichever of those invariants it satisfies.
    """
    b = epsilon_exponent
    if n < 1 or b < 1:
        raise InfeasibleParameters(f"need n >= 1 and b >= 1, got n={n}, b={b}")
    mode = _mode(mode)
    if q is not None:
        FieldCtx(q)
        if q >= n * 2**b and mode is not Mode.REPEATED:
            return Strategy(Mode.SINGLE_BIG_FIELD, q, 1, b)
        if q >= 2 * n + 1 and mode is not Mode.SINGLE_BIG_FIELD:
            return Strategy(Mode.REPEATED, q, b, b)
        raise InfeasibleParameters(f"q={q} too small for n={n}, b={b} in mode {mode.value if mode else 'auto'}")
    if mode is not Mode.REPEATED:
        target = max(2 * n + 1, n * 2**b)
        if target < PRIME_SCAN_LIMIT:
            p = smallest_prime_geq(target)
            if p < PRIME_SCAN_LIMIT:
                return Strategy(Mode.SINGLE_BIG_FIELD, p, 1, b)
        if mode is Mode.SINGLE_BIG_FIELD:
            raise InfeasibleParameters(f"n 2^b = {n * 2**b} does not fit in 62 bits")
    target = 2 * n + 1
    if target >= PRIME_SCAN_LIMIT:
        raise InfeasibleParameters(f"n={n} too large for a 62-bit field")
    return Strategy(Mode.REPEATED, smallest_prime_geq(target), b, b)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent generator for trial ``trial`` of a run seeded with ``seed``."""
    return np.random.default_rng(np.random.SeedSequence([seed, trial]))


def trial_weights(graph: Hypergraph, ctx: FieldCtx, seed: int, trial: int) -> WeightAssignment:
    values = sample_uniform_array(ctx, trial_rng(seed, trial), graph.num_edges)
    return WeightAssignment(graph, ctx, values, canonical=True)


def _run_trial(graph: Hypergraph, ctx: FieldCtx, seed: int, trial: int) -> tuple[WeightAssignment, FieldElem]:
    w = trial_weights(graph, ctx, seed, trial)
    lam = build_lambda(graph, w, ctx)
    return w, det_gf(principal_minor(lam, ROOT))


def _validate(graph: Hypergraph) -> None:
    if not isinstance(graph, Hypergraph):
        raise InvalidInstance(f"expected a Hypergraph, got {type(graph).__name__}")
    if graph.k != 3:
        raise InvalidInstance(f"the decider handles 3-uniform instances, got k={graph.k}")


def fast_path(graph: Hypergraph) -> Decision | None:
    """Deterministic verdicts that need no randomness, if any applies."""
    big_n = graph.num_vertices
    if big_n == 1:
        return Decision(Verdict.YES, reason="single vertex: the empty hypertree spans it")
    if big_n % 2 == 0:
        return Decision(Verdict.NO_CERTAIN, reason=f"N={big_n} is even, but a hypertree needs N = 2n + 1")
    n = graph.tree_size
    if graph.num_edges < n:
        return Decision(Verdict.NO_CERTAIN, reason=f"M={graph.num_edges} edges, fewer than the n={n} a hypertree needs")
    if not is_connected(graph):
        return Decision(Verdict.NO_CERTAIN, reason="hypergraph is disconnected")
    return None


def decide(
    graph: Hypergraph,
    epsilon_exponent: int = DEFAULT_EPSILON_EXPONENT,
    seed: int = 0,
    strategy: Mode | str | None = None,
    q: int | None = None,
    threads: int = 1,
) -> Decision:
    """Decide whether ``graph`` has a spanning hypertree.

    YES is always correct and carries a replayable witness.  NO_PROBABLE is
    wrong with probability at most ``error_bound`` <= 2^-epsilon_exponent.
    With ``threads`` > 1 all trials are evaluated concurrently and the
    lowest successful trial index is reported, matching the sequential run.
    """
    _validate(graph)
    if seed < 0:
        raise ValueError("seed must be non-negative")
    quick = fast_path(graph)
    if quick is not None:
        return quick
    n = graph.tree_size
    plan = choose_strategy(n, epsilon_exponent, strategy, q)
    ctx = FieldCtx(plan.q)

    def witness(trial, w, det):
        return Witness(plan.q, seed, trial, graph.digest, w.digest(), det.value)

    if threads > 1 and plan.trials > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda t: _run_trial(graph, ctx, seed, t), range(plan.trials)))
        for t, (w, det) in enumerate(results):
            if det.value:
                return Decision(Verdict.YES, witness(t, w, det), strategy=plan, trials_run=plan.trials)
    else:
        for t in range(plan.trials):
            w, det = _run_trial(graph, ctx, seed, t)
            if det.value:
                return Decision(Verdict.YES, witness(t, w, det), strategy=plan, trials_run=t + 1)
    bound = Fraction(n, plan.q) ** plan.trials
    return Decision(Verdict.NO_PROBABLE, error_bound=bound, strategy=plan, trials_run=plan.trials,
                    reason=f"all {plan.trials} determinant(s) vanished")


def replay_witness(graph: Hypergraph, witness: Witness) -> FieldElem:
    """Recompute det Lambda(1) from a witness; raise WitnessMismatch on any discrepancy."""
    _validate(graph)
    if witness is None:
        raise WitnessMismatch("no witness to replay")
    if graph.digest != witness.instance_digest:
        raise WitnessMismatch("witness was issued for a different instance")
    ctx = FieldCtx(witness.q)
    w, det = _run_trial(graph, ctx, witness.seed, witness.trial)
    if w.digest() != witness.weights_digest:
        raise WitnessMismatch("regenerated weights differ from the recorded digest")
    if det.value != witness.determinant or det.value == 0:
        raise WitnessMismatch(f"replayed determinant {det.value} != recorded {witness.determinant}")
    return det


# -- empirical checks of the root-count bound -------------------------------


@dataclass(frozen=True)
class FailureRate:
    zeros: int
    total: int
    lower: float
    upper: float

    @property
    def rate(self) -> Fraction:
        return Fraction(self.zeros, self.total)


def _minor_dets(graph: Hypergraph, ctx: FieldCtx, weights: np.ndarray) -> np.ndarray:
    stack = build_lambda_batch(graph, weights, ctx)
    return det_gf_batch(stack[:, 1:, 1:], ctx)


def empirical_failure_rate(
    graph: Hypergraph,
    q: int,
    trials: int | None = None,
    seed: int = 0,
    exhaustive: bool = False,
    batch: int = 1 << 16,
) -> FailureRate:
    """Fraction of weight vectors on which det Lambda(1) vanishes.

    Sampled mode draws ``trials`` independent uniform vectors.  Exhaustive
    mode walks all q^M vectors.  The interval is rate +- 5 binomial sigma
    (exact, zero width, in exhaustive mode).
    """
    _validate(graph)
    ctx = FieldCtx(q)
    m = graph.num_edges
    if exhaustive:
        total = q**m
        if total > 10**9:
            raise InfeasibleParameters(f"{q}^{m} weight vectors is too many to enumerate")
        digits = q ** np.arange(m - 1, -1, -1, dtype=np.int64)
        zeros = 0
        for start in range(0, total, batch):
            codes = np.arange(start, min(start + batch, total), dtype=np.int64)
            weights = (codes[:, None] // digits[None, :]) % q
            zeros += int(np.count_nonzero(_minor_dets(graph, ctx, weights) == 0))
        rate = zeros / total
        return FailureRate(zeros, total, rate, rate)
    if trials is None or not 1 <= trials <= 10**6:
        raise ValueError("sampled mode needs 1 <= trials <= 10^6")
    rng = trial_rng(seed, 0)
    zeros = 0
    for start in range(0, trials, batch):
        size = min(batch, trials - start)
        weights = sample_uniform_array(ctx, rng, (size, m))
        zeros += int(np.count_nonzero(_minor_dets(graph, ctx, weights) == 0))
    rate = zeros / trials
    sigma = math.sqrt(max(rate * (1 - rate), 1 / trials) / trials)
    return FailureRate(zeros, trials, max(0.0, rate - 5 * sigma), min(1.0, rate + 5 * sigma))


# -- timing -----------------------------------------------------------------


@dataclass
class BenchRow:
    num_vertices: int
    num_edges: int = 0
    seconds: float | None = None
    verdict: str | None = None
    q: int | None = None
    note: str = ""


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)

    @property
    def ratios(self) -> list[float]:
        timed = [r for r in self.rows if r.seconds]
        return [b.seconds / a.seconds for a, b in itertools.pairwise(timed)]


def benchmark(sizes, seed: int = 0, epsilon_exponent: int = DEFAULT_EPSILON_EXPONENT, repeats: int = 1) -> BenchReport:
    """Time ``decide`` on complete 3-uniform instances; best of ``repeats``."""
    report = BenchReport()
    for size in sizes:
        if size < 3 or size % 2 == 0:
            report.rows.append(BenchRow(size, note="skipped: N must be odd and >= 3"))
            continue
        graph = complete_hypergraph(size, 3)
        best = math.inf
        decision = None
        for _ in range(repeats):
            t0 = time.perf_counter()
            decision = decide(graph, epsilon_exponent, seed)
            best = min(best, time.perf_counter() - t0)
        report.rows.append(BenchRow(size, graph.num_edges, best, decision.verdict.value, decision.strategy.q))
        log.info("N=%d M=%d %.3fs", size, graph.num_edges, best)
    return report
