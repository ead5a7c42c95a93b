"""Desk-scale property suite: the Pfaffian identity and the sign definitions.

Every check compares an elimination result against an exact brute-force
value; nothing here is sampled against a tolerance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .field import FieldCtx, sample_uniform_array
from .hypergraph import Hypergraph, complete_hypergraph
from .oracle import SignedHypertreePoly, evaluate_poly, zstar_exact
from .signs import sign_conjugation, sign_exterior
from .skewmat import SkewMatrix, WeightAssignment, build_lambda, det_gf, pfaffian_gf, principal_minor

VERIFY_PRIME = 10007
SHUFFLES = 20

# M ranges keep C(M, n) small enough for quick enumeration
_EDGE_RANGE = {3: (1, 1), 5: (2, 10), 7: (3, 18), 9: (4, 22)}


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        if len(self.failures) < 20:
            self.failures.append(message)
        else:
            self.failures[-1] = f"... and more (last: {message})"

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked, "failures": list(self.failures)}


def random_instance(num_vertices: int, num_edges: int, rng: random.Random) -> Hypergraph:
    triples = list(combinations(range(1, num_vertices + 1), 3))
    return Hypergraph(3, num_vertices, rng.sample(triples, min(num_edges, len(triples))))


def random_corpus(count: int, sizes=(3, 5, 7, 9), seed: int = 0) -> list[Hypergraph]:
    """``count`` random 3-uniform instances cycling through ``sizes``."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = sizes[i % len(sizes)]
        lo, hi = _EDGE_RANGE.get(n, (n // 2, 2 * n))
        out.append(random_instance(n, rng.randint(lo, hi), rng))
    return out


def standard_corpus(max_n: int = 9, instances: int = 100, seed: int = 0) -> list[Hypergraph]:
    """Complete instances up to K(7,3) plus random ones, all with N <= max_n."""
    sizes = tuple(n for n in (3, 5, 7, 9) if n <= max_n)
    corpus = [complete_hypergraph(n, 3) for n in (3, 5, 7) if n <= max_n]
    if sizes:
        corpus += random_corpus(instances, sizes, seed)
    return corpus


def signed_root_pfaffians(lam: SkewMatrix) -> list[int]:
    """(-1)^(i0-1) Pf Lambda(i0) for every root i0, as residues."""
    q = lam.ctx.q
    out = []
    for i0 in range(1, lam.dim + 1):
        pf = pfaffian_gf(principal_minor(lam, i0)).value
        out.append(pf if i0 % 2 else (-pf) % q)
    return out


def _flip_one(poly: SignedHypertreePoly) -> SignedHypertreePoly:
    terms = dict(poly.terms)
    if terms:
        first = min(terms)
        terms[first] = -terms[first]
    return SignedHypertreePoly(poly.graph, terms)


def run_suite(
    max_n: int = 7,
    seed: int = 0,
    trials: int = 20,
    instances: int = 100,
    fault: str | None = None,
    corpus: list[Hypergraph] | None = None,
) -> list[PropertyResult]:
    """Run every property on a corpus; ``fault='sign-flip'`` is a negative control."""
    if fault not in (None, "sign-flip"):
        raise ValueError(f"unknown fault {fault!r}")
    if corpus is None:
        corpus = standard_corpus(max_n, instances, seed)
    ctx = FieldCtx(VERIFY_PRIME)
    rng = np.random.default_rng(seed)
    shuffler = random.Random(seed)

    theorem = PropertyResult("pfaffian_hypertree_theorem")
    roots = PropertyResult("root_independence")
    agree = PropertyResult("sign_exterior_equals_conjugation")
    sign_roots = PropertyResult("sign_root_independence")
    order = PropertyResult("sign_order_independence")
    pf_det = PropertyResult("pfaffian_squared_equals_det")

    for graph in corpus:
        poly = zstar_exact(graph)
        if fault == "sign-flip":
            poly = _flip_one(poly)
        for tree, coeff in poly.terms.items():
            ref = sign_conjugation(graph, tree)
            agree.checked += 1
            if not sign_exterior(graph, tree, 1) == ref == coeff:
                agree.fail(f"{graph!r} tree {tree}: exterior, conjugation and coefficient disagree")
            sign_roots.checked += 1
            if any(sign_exterior(graph, tree, r) != ref for r in range(2, graph.num_vertices + 1)):
                sign_roots.fail(f"{graph!r} tree {tree}: sign depends on the root")
            for _ in range(SHUFFLES):
                perm = list(tree)
                shuffler.shuffle(perm)
                order.checked += 1
                if sign_conjugation(graph, tree, perm) != ref:
                    order.fail(f"{graph!r} tree {tree}: sign depends on edge order {perm}")
        for _ in range(trials):
            w = WeightAssignment(graph, ctx, sample_uniform_array(ctx, rng, graph.num_edges))
            lam = build_lambda(graph, w, ctx)
            values = signed_root_pfaffians(lam)
            expected = evaluate_poly(poly, w, ctx).value
            theorem.checked += len(values)
            roots.checked += 1
            for i0, v in enumerate(values, start=1):
                if v != expected:
                    theorem.fail(f"{graph!r} root {i0}: Pfaffian side {v}, polynomial {expected}")
            if len(set(values)) != 1:
                roots.fail(f"{graph!r}: signed minors differ across roots {values}")

    for dim in (2, 4, 6, 8):
        for _ in range(max(trials, 1) * 10):
            upper = np.triu(sample_uniform_array(ctx, rng, (dim, dim)), 1)
            m = SkewMatrix((upper - upper.T) % ctx.q, ctx)
            pf, det = pfaffian_gf(m), det_gf(m)
            pf_det.checked += 1
            if pf * pf != det or (pf.value == 0) != (det.value == 0):
                pf_det.fail(f"dim {dim}: Pf^2={pf * pf} det={det}")

    return [theorem, roots, agree, sign_roots, order, pf_det]
