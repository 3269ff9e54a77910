# tests/test_checkers.py

import sys
import os
import importlib.util
from itertools import combinations

import numpy as np
import pytest

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from checkers.colouring import colour, colouring_cnf, colouring_obstruction
from checkers.embedding import SearchStatus, find_embedding, iter_embeddings
from checkers.extension import contains_extension_member, contains_family_extension, extension_candidates
from checkers.greedy import embed_fr_recursive, greedy_embed_f2
from constructions.extensions import extension_family_iter, extension_family_size
from constructions.hosts import GabnParams, gen_gabn, gen_rpartite, rpartite_partition
from constructions.patterns import gen_fr, gen_ktt
from hypercore.errors import GuardExceeded, HypergraphError, ParameterError
from hypercore.hypergraph import Hypergraph, complete_hypergraph, empty_hypergraph, new_hypergraph, relabel
from hypercore.witness import Embedding, verify_colouring, verify_embedding

SINGLE = new_hypergraph(3, 3, [(0, 1, 2)])
K4 = gen_ktt(2, 3)
HAS_PYSAT = importlib.util.find_spec("pysat") is not None


def random_host(n, p, seed):
    """3-graph keeping each triple independently with probability p"""
    rng = np.random.default_rng(seed)
    return new_hypergraph(3, n, [e for e in combinations(range(n), 3) if rng.random() < p])


def shuffled(H, seed):
    perm = [int(v) for v in np.random.default_rng(seed).permutation(H.n)]
    return relabel(H, perm)


class TestEmbeddingSearch:
    """Exhaustive subgraph search"""

    def test_k4_in_two_part_host(self):
        """K4 embeds into rpartite(8,2,3) with a verified certificate"""
        host = gen_rpartite(8, 2, 3)
        outcome = find_embedding(host, K4)
        assert outcome.status is SearchStatus.FOUND, f"Expected FOUND, got {outcome.status}"
        assert verify_embedding(host, K4, outcome.embedding), "Certificate does not verify"

    def test_f32_absent_from_two_part_host(self):
        """F^3_2 is not 2-colourable, so the 2-part host is free of it"""
        outcome = find_embedding(gen_rpartite(12, 2, 3), gen_fr(3, 2))
        assert outcome.status is SearchStatus.NONE, f"Expected NONE, got {outcome.status}"
        assert not outcome, "NONE outcome should be falsy"

    def test_budget_is_not_a_negative_answer(self):
        """A tiny node budget reports BUDGET"""
        outcome = find_embedding(gen_rpartite(12, 2, 3), gen_fr(3, 2), node_budget=5)
        assert outcome.status is SearchStatus.BUDGET, f"Expected BUDGET, got {outcome.status}"

    def test_pattern_larger_than_host(self):
        assert find_embedding(complete_hypergraph(3, 3), K4).status is SearchStatus.NONE, "Expected NONE"

    def test_uniformity_mismatch(self):
        with pytest.raises(HypergraphError):
            find_embedding(complete_hypergraph(4, 6), K4)

    def test_all_embeddings_of_k4_into_itself(self):
        """K4 has 24 automorphisms"""
        embeddings = list(iter_embeddings(K4, K4))
        assert len(embeddings) == 24, f"Expected 24, got {len(embeddings)}"
        assert len(set(embeddings)) == 24, "Embeddings should be distinct"
        assert len(list(iter_embeddings(K4, K4, limit=5))) == 5, "Limit not honoured"

    def test_first_streamed_embedding_is_find_result(self):
        host = gen_gabn(GabnParams(3, 2, 9, 3))
        first = next(iter_embeddings(host, K4))
        assert find_embedding(host, K4).embedding == first, "find_embedding should return the first embedding"

    def test_parallel_matches_sequential(self):
        """Splitting at the root keeps the sequential answer"""
        host = gen_rpartite(8, 2, 3)
        sequential = find_embedding(host, K4, n_jobs=1)
        parallel = find_embedding(host, K4, n_jobs=2)
        assert parallel.status is SearchStatus.FOUND, "Parallel search should find K4"
        assert parallel.embedding == sequential.embedding, "Lowest root candidate should win"

    @pytest.mark.parametrize("seed", [0, 1, 2])
    @pytest.mark.parametrize("host,pattern", [
        (gen_rpartite(8, 2, 3), K4),
        (gen_rpartite(12, 2, 3), gen_fr(3, 2)),
        (gen_gabn(GabnParams(2, 1, 12, 3)), K4),
        (gen_gabn(GabnParams(3, 2, 9, 3)), K4),
        (complete_hypergraph(3, 6), SINGLE),
        (empty_hypergraph(3, 6), SINGLE),
    ])
    def test_decision_survives_host_relabelling(self, host, pattern, seed):
        """Relabelling the host vertices never changes FOUND / NONE"""
        before = find_embedding(host, pattern)
        moved = shuffled(host, seed)
        after = find_embedding(moved, pattern)
        assert after.status is before.status, f"{before.status} became {after.status} after relabelling"
        if after:
            assert verify_embedding(moved, pattern, after.embedding), "Certificate does not verify"


class TestColouring:
    """Weak r-colourability by exhaustion and by SAT"""

    def test_f32_not_two_colourable_brute(self):
        result = colour(gen_fr(3, 2), 2, "brute")
        assert not result.colourable and result.verdict == "UNSAT", "F^3_2 should not be 2-colourable"

    def test_f32_not_two_colourable_sat(self):
        result = colour(gen_fr(3, 2), 2, "sat", "internal")
        assert not result.colourable, "SAT backend should agree that F^3_2 is not 2-colourable"

    def test_three_colours_agree(self):
        """Brute force and SAT agree on 3-colouring F^3_2, and the colouring verifies"""
        F = gen_fr(3, 2)
        brute = colour(F, 3, "brute")
        sat = colour(F, 3, "sat", "internal")
        assert brute.colourable == sat.colourable, "Backends disagree"
        if brute.colourable:
            assert verify_colouring(F, brute.colouring), "Brute colouring does not verify"
            assert verify_colouring(F, sat.colouring), "SAT colouring does not verify"

    def test_small_cases(self):
        """A single edge needs two parts; K4 is 2-colourable; an empty graph needs one"""
        assert not colour(SINGLE, 1).colourable, "An edge cannot be 1-coloured"
        assert colour(K4, 2).colourable, "K4 splits 2+2"
        assert colour(empty_hypergraph(3, 5), 1).colourable, "Edgeless graphs are 1-colourable"

    def test_cnf_shape(self):
        """K4 with r=2: 8 variables, 17 clauses"""
        instance = colouring_cnf(K4, 2)
        assert instance.num_vars == 8, f"Expected 8 variables, got {instance.num_vars}"
        assert len(instance.clauses) == 17, f"Expected 17 clauses, got {len(instance.clauses)}"

    def test_brute_guard(self):
        with pytest.raises(GuardExceeded):
            colour(gen_fr(3, 3), 3, "brute")

    def test_parameter_errors(self):
        with pytest.raises(ParameterError):
            colour(K4, 0)
        with pytest.raises(ParameterError):
            colour(K4, 2, "magic")

    @pytest.mark.parametrize("H", [
        SINGLE, K4, gen_fr(3, 2), gen_gabn(GabnParams(2, 1, 8, 3)), complete_hypergraph(3, 7),
        gen_rpartite(9, 3, 3), empty_hypergraph(3, 4),
    ])
    def test_more_parts_never_hurt(self, H):
        """Once r parts suffice, so do r + 1"""
        answers = [colour(H, r).colourable for r in range(1, 5)]
        assert answers == sorted(answers), f"Colourability not monotone in r: {answers}"

    def test_complete_graph_threshold(self):
        """K^3_7 needs four parts: three would force a part of size 3"""
        H = complete_hypergraph(3, 7)
        assert not colour(H, 3).colourable and colour(H, 4).colourable, "Expected threshold r = 4"

    def test_obstruction(self):
        """The host's 2-colouring plus an uncolourable pattern certifies freeness"""
        host = gen_rpartite(12, 2, 3)
        assert colouring_obstruction(host, rpartite_partition(12, 2), gen_fr(3, 2), 2), "Obstruction should apply"
        assert not colouring_obstruction(host, rpartite_partition(12, 2), K4, 2), "K4 is 2-colourable"

    @pytest.mark.skipif(not HAS_PYSAT, reason="python-sat not installed")
    def test_f33_not_three_colourable_pysat(self):
        result = colour(gen_fr(3, 3), 3, "sat", "pysat")
        assert not result.colourable, "F^3_3 should not be 3-colourable"


class TestExtensionContainment:
    """Matching-based containment of (s,t)-extension members"""

    def test_single_edge_extension_in_complete_host(self):
        host = complete_hypergraph(3, 10)
        outcome = contains_extension_member(host, SINGLE, 2, 1)
        assert outcome.status is SearchStatus.FOUND, f"Expected FOUND, got {outcome.status}"
        cert = outcome.certificate
        assert cert.member.n == 6, f"Member should have 6 vertices, got {cert.member.n}"
        assert verify_embedding(host, cert.member, cert.member_embedding), "Certificate does not verify"
        assert len(cert.lines()) == 6 + 3, "One line per member vertex plus one per index"

    def test_k4_extension_blocked_in_two_part_host(self):
        """G(2,1,12) holds K4 but no member of K4(2,2)"""
        host = gen_gabn(GabnParams(2, 1, 12, 3))
        assert find_embedding(host, K4), "Base K4 should embed"
        outcome = contains_extension_member(host, K4, 2, 2)
        assert outcome.status is SearchStatus.NONE, f"Expected NONE, got {outcome.status}"
        assert outcome.embeddings_tried > 0, "Every base embedding should have been tried"

    def test_candidates(self):
        """In K^3_10 every index sees all seven outside vertices"""
        candidates = extension_candidates(complete_hypergraph(3, 10), SINGLE, Embedding((0, 1, 2)), 2, 1)
        assert len(candidates) == 3, "r = 3 indices"
        assert all(c == frozenset(range(3, 10)) for c in candidates), f"Unexpected candidates {candidates}"

    def test_family_union(self):
        """K4(2,1) needs 15 new vertices; the single-edge member fits"""
        host = gen_rpartite(12, 2, 3)
        outcome = contains_family_extension(host, [K4, SINGLE], 2, 1)
        assert outcome.status is SearchStatus.FOUND and outcome.base_index == 1, f"Got {outcome}"

    def test_budget(self):
        outcome = contains_extension_member(gen_rpartite(12, 2, 3), K4, 2, 2, node_budget=1)
        assert outcome.status is SearchStatus.BUDGET, f"Expected BUDGET, got {outcome.status}"

    @pytest.mark.parametrize("s,t", [(2, 1), (2, 2), (3, 1), (3, 2)])
    @pytest.mark.parametrize("seed", range(10))
    def test_matching_agrees_with_member_scan(self, s, t, seed):
        """On small families the matching answer equals embedding every member one by one"""
        _, members = extension_family_size(SINGLE, s, t)
        assert members <= 64, f"Family too large to scan: {members}"
        host = random_host(6 + seed % 4, 0.45, seed)
        scan = any(find_embedding(host, M).status is SearchStatus.FOUND
                   for M in extension_family_iter(SINGLE, s, t))
        outcome = contains_extension_member(host, SINGLE, s, t)
        assert (outcome.status is SearchStatus.FOUND) == scan, f"Matching says {outcome.status}, scan says {scan}"
        if scan:
            cert = outcome.certificate
            assert verify_embedding(host, cert.member, cert.member_embedding), "Certificate does not verify"


class TestGreedy:
    """Greedy and recursive embedders of F^k_r"""

    def test_f2_in_complete_host(self):
        host = complete_hypergraph(3, 20)
        outcome = greedy_embed_f2(host)
        assert outcome, f"Greedy failed: {outcome.failure}"
        assert verify_embedding(host, gen_fr(3, 2), outcome.embedding), "Greedy embedding does not verify"

    def test_edge_mode(self):
        host = complete_hypergraph(3, 14)
        outcome = greedy_embed_f2(host, mode="edge")
        assert outcome and verify_embedding(host, gen_fr(3, 2), outcome.embedding), "Edge mode failed"

    def test_f2_fails_in_two_part_host(self):
        outcome = greedy_embed_f2(gen_rpartite(20, 2, 3))
        assert not outcome and outcome.failure is not None, "Greedy cannot embed F^3_2 into a 2-colourable host"

    def test_failure_report(self):
        """An edgeless host fails at the first block with an empty link"""
        outcome = greedy_embed_f2(empty_hypergraph(3, 12))
        assert outcome.failure.reason == "no_block_in_link", f"Unexpected reason {outcome.failure.reason}"
        assert outcome.failure.path == (1,) and outcome.failure.link == (0, 1), f"Unexpected {outcome.failure}"
        assert "block 1" in outcome.failure.describe(), "Description should name the block"

    def test_host_too_small(self):
        outcome = greedy_embed_f2(complete_hypergraph(3, 8))
        assert outcome.failure.reason == "host_too_small", f"Unexpected reason {outcome.failure.reason}"

    def test_unknown_mode(self):
        with pytest.raises(ParameterError):
            greedy_embed_f2(K4, mode="random")

    def test_recursive_r2(self):
        host = complete_hypergraph(3, 12)
        outcome = embed_fr_recursive(host, 2)
        assert outcome and verify_embedding(host, gen_fr(3, 2), outcome.embedding), "Recursive r=2 failed"

    def test_recursive_r1(self):
        """r = 1 is a single edge: the first host edge"""
        host = new_hypergraph(3, 5, [(1, 3, 4), (2, 3, 4)])
        outcome = embed_fr_recursive(host, 1)
        assert outcome.embedding == Embedding((1, 3, 4)), f"Unexpected {outcome.embedding}"

    def test_recursive_failure_in_empty_host(self):
        outcome = embed_fr_recursive(empty_hypergraph(3, 12), 2)
        assert not outcome and outcome.failure.reason == "no_edge", f"Unexpected {outcome.failure}"
        assert outcome.failure.link == (0, 1), "Failure should name the first link"

    @pytest.mark.parametrize("n", [12, 13])
    def test_recursive_agrees_with_search(self, n):
        """Recursive greedy and exhaustive search agree on a small corpus"""
        F = gen_fr(3, 2)
        corpus = [
            complete_hypergraph(3, n),
            gen_rpartite(n, 2, 3),
            empty_hypergraph(3, n),
            Hypergraph(k=3, n=n, edges=complete_hypergraph(3, n).edges[1:]),
        ]
        for H in corpus:
            exact = find_embedding(H, F)
            assert bool(embed_fr_recursive(H, 2)) == bool(exact), f"Disagreement on {H!r}"
