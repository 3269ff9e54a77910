# analysis/verify_suite.py

"""
Bundled claim checks behind `khg verify`.

Each check returns (passed, detail). The fast suite runs on the internal
solver only; the full suite widens the grids and needs an external solver
(KHG_SAT_CMD) for the largest colourability instance and for cross-backend
agreement.

Patterns are looked up through the constructions.patterns module at call
time so a test can swap in a damaged generator.
"""

import time
from math import comb
from typing import Callable, Dict, List, Tuple

import config
from analysis.parameters import compute_M, compute_rho, nonprincipality_params, size_condition, tail_condition
from analysis.sampling import sample_dense_msets
from checkers.colouring import colour
from checkers.embedding import SearchStatus, find_embedding
from checkers.extension import contains_extension_member
from checkers.greedy import embed_fr_recursive, greedy_embed_f2
from constructions import patterns
from constructions.extensions import extension_family_iter
from constructions.hosts import GabnParams, forward_parts, gabn_partition, gen_gabn, gen_rpartite
from hypercore.errors import BackendError, KhgError, ParameterError
from hypercore.hypergraph import (Hypergraph, codegree_profile, complete_hypergraph, empty_hypergraph,
                                  neighbourhood, new_hypergraph)
from hypercore.khg_format import parse_khg, write_khg
from satgate.coex import VerdictCache, coex_exact
from satgate.oracle import brute_force_coex
from utils.logger import setup_logger

logger = setup_logger("verify", "verify.log")

SUITES = ("fast", "full")


def check_record(name: str, passed: bool, detail: str, seconds: float) -> Dict:
    """One row of the suite: name, passed, PASS/FAIL label, detail and wall time"""
    return {
        "name": name,
        "passed": passed,
        "label": "PASS" if passed else "FAIL",
        "detail": detail,
        "seconds": seconds,
    }


def single_edge(k: int = 3) -> Hypergraph:
    return new_hypergraph(k, k, [tuple(range(k))])


def k4_minus_edge() -> Hypergraph:
    return new_hypergraph(3, 4, [(0, 1, 2), (0, 1, 3), (0, 2, 3)])


def complete_minus_first_edge(n: int) -> Hypergraph:
    K = complete_hypergraph(3, n)
    return Hypergraph(k=3, n=n, edges=K.edges[1:])


def greedy_corpus(full: bool) -> List[Hypergraph]:
    """Hosts on which the greedy embedder and the exhaustive search agree."""
    sizes = range(12, 16) if full else range(12, 14)
    hosts = []
    for n in sizes:
        hosts.append(complete_hypergraph(3, n))
        hosts.append(gen_rpartite(n, 2, 3))
        hosts.append(empty_hypergraph(3, n))
        hosts.append(complete_minus_first_edge(n))
        if full:
            hosts.append(gen_gabn(GabnParams(2, 1, n, 3)))
    return hosts


def estimator_corpus(full: bool) -> List[Tuple[Hypergraph, int, float]]:
    corpus = [
        (complete_hypergraph(3, 8), 5, 0.4),
        (gen_gabn(GabnParams(2, 1, 8, 3)), 5, 0.3),
        (gen_rpartite(9, 3, 3), 5, 0.4),
    ]
    if full:
        corpus += [
            (patterns.gen_ktt(4, 3), 5, 0.2),
            (gen_gabn(GabnParams(3, 1, 9, 3)), 6, 0.2),
            (gen_gabn(GabnParams(3, 2, 9, 3)), 6, 0.5),
            (gen_rpartite(10, 2, 3), 6, 0.4),
            (complete_hypergraph(3, 10), 6, 0.6),
            (patterns.gen_fr(3, 2), 6, 0.1),
            (gen_gabn(GabnParams(4, 3, 12, 3)), 6, 0.5),
        ]
    return corpus


def check_construction_counts(full: bool):
    expected = {(3, 1): (3, 1), (3, 2): (12, 12), (3, 3): (76, 144), (4, 2): (45, 50)}
    for (k, r), (nv, ne) in expected.items():
        F = patterns.gen_fr(k, r)
        if (F.n, F.num_edges) != (nv, ne):
            return False, f"F^{k}_{r} has {F.n} vertices, {F.num_edges} edges; expected {nv}, {ne}"
    for t in range(1, 9):
        K = patterns.gen_ktt(t, 3)
        if K.num_edges != 2 * t * comb(t, 2):
            return False, f"K^3({t},{t}) has {K.num_edges} edges"
    F = single_edge()
    for s, t in ((2, 1), (2, 2), (3, 1)):
        for member in extension_family_iter(F, s, t):
            r = comb(comb(F.n, F.k - 1), s)
            if member.num_edges != F.num_edges + r * t:
                return False, f"extension member with {member.num_edges} edges for s={s}, t={t}"
    return True, "F^k_r, K^3(t,t) and extension counts match"


def check_gabn_codegree(full: bool):
    checked = 0
    for a, b in ((2, 1), (3, 1), (3, 2), (4, 3)):
        for n in range(2 * a, 31 if full else 19):
            params = GabnParams(a, b, n, 3)
            G = gen_gabn(params)
            profile = codegree_profile(G)
            if profile.min_degree < params.codegree_lower_bound():
                return False, f"G({a},{b},{n}) misses its codegree bound"
            parts = gabn_partition(params)
            for S, _ in profile.items():
                reached = forward_parts(params, S)
                whole = {v for j in reached for v in parts[j]} - set(S)
                if len(reached) < b or not whole <= neighbourhood(G, S):
                    return False, f"G({a},{b},{n}): pair {S} does not see {b} whole parts"
            checked += 1
    return True, f"{checked} constructions meet the codegree bound and the whole-part rule"


def check_colourability(full: bool):
    F2 = patterns.gen_fr(3, 2)
    if colour(F2, 2, "brute").colourable:
        return False, "F^3_2 is 2-colourable by exhaustion"
    if colour(F2, 2, "sat", "internal").colourable:
        return False, "F^3_2 is 2-colourable by SAT"
    if colour(F2, 3, "brute").colourable != colour(F2, 3, "sat", "internal").colourable:
        return False, "brute and SAT disagree on 3-colouring F^3_2"
    if full and colour(patterns.gen_fr(3, 3), 3, "sat", "external").colourable:
        return False, "F^3_3 is 3-colourable by SAT"
    return True, "F^3_2 not 2-colourable" + ("; F^3_3 not 3-colourable" if full else "")


def check_freeness(full: bool):
    F2 = patterns.gen_fr(3, 2)
    for n in ((12, 13) if full else (12,)):
        outcome = find_embedding(gen_rpartite(n, 2, 3), F2)
        if outcome.status is not SearchStatus.NONE:
            return False, f"rpartite({n},2,3) vs F^3_2: {outcome.status.value}"
    if not find_embedding(gen_rpartite(8, 2, 3), patterns.gen_ktt(2, 3)):
        return False, "K4 not found in rpartite(8,2,3)"
    return True, "F^3_2 absent from the 2-part hosts; K4 control found"


def check_extension_blocking(full: bool):
    host = gen_gabn(GabnParams(2, 1, 12, 3))
    K4 = patterns.gen_ktt(2, 3)
    if not find_embedding(host, K4):
        return False, "K4 does not embed into G(2,1,12)"
    if contains_extension_member(host, K4, 2, 2).status is not SearchStatus.NONE:
        return False, "G(2,1,12) contains a member of K4(2,2)"
    if not contains_extension_member(complete_hypergraph(3, 10), single_edge(), 2, 1):
        return False, "complete 10-vertex host misses the single-edge (2,1)-extension"
    return True, "K4(2,2) blocked in G(2,1,12); single-edge (2,1) member found"


def check_oracle(full: bool):
    families = {"edge": [single_edge()], "K4": [patterns.gen_ktt(2, 3)], "K4-": [k4_minus_edge()]}
    backends = ["internal", "external"] if full else ["internal"]
    cache = VerdictCache()
    rows = []
    for n in ((4, 5, 6) if full else (4, 5)):
        for name, family in families.items():
            expected = brute_force_coex(n, 3, family)
            for backend in backends:
                got = coex_exact(n, 3, family, backend, cache=cache).value
                if got != expected:
                    return False, f"n={n} {name}: {backend} gives {got}, oracle {expected}"
            rows.append(f"{name}@{n}={expected}")
    return True, " ".join(rows)


def check_formulas(full: bool):
    if abs(compute_rho(3, 2) - 2 ** -1.5) > 1e-12:
        return False, "rho(3,2) != 2^(-3/2)"
    for k in range(3, 6):
        for ell in range(k - 1, 11):
            if not compute_rho(k, ell) < 0.5:
                return False, f"rho({k},{ell}) >= 1/2"
            if not nonprincipality_params(k, ell).epsilon > 0:
                return False, f"epsilon({k},{ell}) <= 0"
    for delta, k in ((1.0, 3), (0.5, 3), (0.5, 4)):
        M = compute_M(delta, k)
        sampled = [M] + [M + 1 + 37 * i for i in range(100)]
        if not all(tail_condition(m, delta, k) and size_condition(m, delta, k) for m in sampled):
            return False, f"M({delta},{k}) = {M} violates a defining inequality"
        if tail_condition(M - 1, delta, k) and size_condition(M - 1, delta, k):
            return False, f"M({delta},{k}) = {M} is not minimal"
    return True, "rho, epsilon and M(delta) agree with their definitions"


def check_greedy(full: bool):
    if not greedy_embed_f2(complete_hypergraph(3, 20)):
        return False, "greedy misses F^3_2 in the complete 20-vertex host"
    if greedy_embed_f2(gen_rpartite(20, 2, 3)):
        return False, "greedy embeds F^3_2 into rpartite(20,2,3)"
    F2 = patterns.gen_fr(3, 2)
    hosts = greedy_corpus(full)
    for H in hosts:
        exact = find_embedding(H, F2)
        if exact.status is SearchStatus.BUDGET or bool(embed_fr_recursive(H, 2)) != bool(exact):
            return False, f"recursive greedy and exhaustive search disagree on {H!r}"
    return True, f"greedy agrees with exhaustive search on {len(hosts)} hosts"


def check_estimator(full: bool):
    trials = 100_000 if full else 20_000
    corpus = estimator_corpus(full)
    for G, m, alpha in corpus:
        exact = sample_dense_msets(G, m, alpha, trials, mode="exhaustive")
        sampled = sample_dense_msets(G, m, alpha, trials, seed=2024, mode="sampled")
        if abs(exact["fraction"] - sampled["fraction"]) > 3 * sampled["stderr"] + config.COMPARE_SLACK:
            return False, f"{G!r}, m={m}: exhaustive {exact['fraction']} vs sampled {sampled['fraction']}"
    return True, f"sampled estimates within 3 standard errors on {len(corpus)} graphs"


def check_round_trip(full: bool):
    corpus = [patterns.gen_fr(3, 2), patterns.gen_fr(4, 2), patterns.gen_ktt(3, 3),
              gen_rpartite(8, 2, 3), gen_gabn(GabnParams(3, 2, 9, 3)), empty_hypergraph(3, 5)]
    corpus += list(extension_family_iter(single_edge(), 2, 1))
    for H in corpus:
        text = write_khg(H)
        if parse_khg(text) != H or write_khg(parse_khg(text)) != text:
            return False, f"round trip changes {H!r}"
    return True, f"{len(corpus)} graphs survive write/parse"


CHECKS: List[Tuple[str, Callable]] = [
    ("construction-counts", check_construction_counts),
    ("gabn-codegree", check_gabn_codegree),
    ("colourability", check_colourability),
    ("freeness", check_freeness),
    ("extension-blocking", check_extension_blocking),
    ("coex-oracle", check_oracle),
    ("formulas", check_formulas),
    ("greedy", check_greedy),
    ("estimator", check_estimator),
    ("round-trip", check_round_trip),
]


def run_verify_suite(suite: str = "fast") -> List[Dict]:
    """Run every check; backend unavailability in the full suite raises BackendError."""
    if suite not in SUITES:
        raise ParameterError(f"unknown suite {suite!r}")
    full = suite == "full"
    if full and not config.SAT_CMD:
        raise BackendError("the full suite needs an external solver; set KHG_SAT_CMD")

    records = []
    for name, check in CHECKS:
        started = time.perf_counter()
        try:
            passed, detail = check(full)
        except BackendError:
            raise
        except KhgError as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        elapsed = time.perf_counter() - started
        logger.info(f"{name}: {'PASS' if passed else 'FAIL'} in {elapsed:.2f}s - {detail}")
        records.append(check_record(name, passed, detail, elapsed))
    return records
