# tests/test_analysis.py

import sys
import os
import io
import math
from itertools import combinations
from math import comb

import pandas as pd
import pytest

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from analysis.density import CSV_COLUMNS, coex_sequence, density_table, write_density_csv
from analysis.parameters import (
    compute_M, compute_rho, nonprincipality_params, rational_family_params, rho_interval,
    size_condition, tail_condition
)
from analysis.sampling import sample_dense_msets
from constructions.hosts import GabnParams, gen_gabn
from hypercore.errors import ParameterError
from hypercore.hypergraph import complete_hypergraph, empty_hypergraph, induced, min_codegree, new_hypergraph

SINGLE = new_hypergraph(3, 3, [(0, 1, 2)])


def rho_closed_form(k, ell):
    c = comb(ell, k - 1)
    return 0.5 * (1 - 1 / c + 1 / (c * 2 ** (1 / ell)))


class TestParameters:
    """rho, epsilon, M(delta) and the rational instantiation"""

    def test_rho_3_2(self):
        """C(2,2) = 1 collapses rho to 2^(-3/2)"""
        assert abs(compute_rho(3, 2) - 2 ** -1.5) < 1e-12, f"Got {compute_rho(3, 2)}"

    def test_rho_3_3(self):
        rho = compute_rho(3, 3)
        assert abs(rho - rho_closed_form(3, 3)) < 1e-12, f"Got {rho}"
        assert 0.4656 < rho < 0.4657, f"rho(3,3) out of range: {rho}"

    def test_rho_below_half(self):
        for k in range(3, 6):
            for ell in range(k - 1, 11):
                assert compute_rho(k, ell) < 0.5, f"rho({k},{ell}) >= 1/2"

    def test_interval_brackets_float(self):
        for k, ell in ((3, 2), (3, 3), (4, 7), (5, 10)):
            lo, hi = rho_interval(k, ell)
            rho = compute_rho(k, ell)
            assert lo - 1e-9 <= rho <= hi + 1e-9 and hi - lo < 1e-9, f"Bad enclosure for ({k},{ell})"

    def test_epsilon(self):
        p = nonprincipality_params(3, 2)
        assert abs(p.epsilon - 0.0244077) < 1e-6, f"Got epsilon {p.epsilon}"
        assert p.patterns == {"F1": "K^3(2,2)", "F2": "F^3_2"}, f"Unexpected patterns {p.patterns}"
        assert abs(nonprincipality_params(3, 3).epsilon - (0.5 - compute_rho(3, 3)) / 6) < 1e-15, "epsilon formula"

    def test_pattern_pair(self):
        F1, F2 = nonprincipality_params(3, 2).build_patterns()
        assert (F1.n, F1.num_edges) == (4, 4) and (F2.n, F2.num_edges) == (12, 12), "Unexpected pattern pair"

    def test_rho_parameter_errors(self):
        with pytest.raises(ParameterError):
            compute_rho(2, 3)
        with pytest.raises(ParameterError):
            compute_rho(4, 2)

    @pytest.mark.parametrize("delta,k", [(1.0, 3), (0.5, 3), (1.0, 4), (0.75, 5)])
    def test_M_against_scan(self, delta, k):
        """Both inequalities hold on a long window from M and one fails at M-1"""
        M = compute_M(delta, k)
        both = lambda m: tail_condition(m, delta, k) and size_condition(m, delta, k)
        assert all(both(m) for m in range(M, M + 3000)), f"M({delta},{k}) = {M} fails above"
        assert not both(M - 1), f"M({delta},{k}) = {M} is not minimal"
        assert M >= 2 * (k - 1) / delta, "Size condition must hold"

    def test_M_errors(self):
        with pytest.raises(ParameterError):
            compute_M(0, 3)
        with pytest.raises(ParameterError):
            compute_M(1.5, 3)
        with pytest.raises(ParameterError):
            compute_M(0.5, 1)

    def test_rational_family(self):
        """4/8 reduces to 1/2: delta = 1/16, (s, t) = (2, 2)"""
        p = rational_family_params(8, 4, 3)
        assert (p.a, p.b, p.s, p.t) == (2, 1, 2, 2), f"Unexpected reduction {p}"
        assert p.delta == 1 / 16, f"Unexpected delta {p.delta}"
        assert p.M == compute_M(1 / 16, 3) and p.m == max(32, p.M), "m = max(4a^2(k-1), M)"
        assert p.edge_slots == comb(p.m, 3), "Edge slots are C(m, k)"
        assert math.isclose(p.threshold, (0.5 - 1 / 16) * p.m), "Threshold is (alpha - delta) m"

    def test_rational_errors(self):
        with pytest.raises(ParameterError):
            rational_family_params(2, 2, 3)
        with pytest.raises(ParameterError):
            rational_family_params(3, 1, 2)


def dense_fraction(G, m, alpha):
    """Direct oracle: share of m-sets whose induced minimum codegree exceeds alpha*m"""
    subsets = list(combinations(range(G.n), m))
    hits = sum(1 for S in subsets if min_codegree(induced(G, S)) > alpha * m)
    return hits / len(subsets)


class TestSampling:
    """Dense m-subset estimator"""

    def test_complete_graph(self):
        est = sample_dense_msets(complete_hypergraph(3, 8), 5, 0.4, 1000)
        assert est["mode"] == "exhaustive" and est["fraction"] == 1.0, f"Got {est}"

    def test_empty_graph(self):
        est = sample_dense_msets(empty_hypergraph(3, 8), 5, 0.1, 1000)
        assert est["fraction"] == 0.0, f"Got {est}"

    @pytest.mark.parametrize("G,m,alpha", [
        (gen_gabn(GabnParams(2, 1, 8, 3)), 5, 0.3),
        (gen_gabn(GabnParams(3, 2, 9, 3)), 6, 0.5),
        (new_hypergraph(3, 7, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3), (3, 4, 5), (4, 5, 6)]), 4, 0.2),
    ])
    def test_exhaustive_matches_direct_count(self, G, m, alpha):
        est = sample_dense_msets(G, m, alpha, 1, mode="exhaustive")
        assert est["trials"] == comb(G.n, m), "Exhaustive mode should score every subset"
        assert est["fraction"] == pytest.approx(dense_fraction(G, m, alpha), abs=1e-12), "Exhaustive count is wrong"

    def test_sampled_is_reproducible(self):
        G = gen_gabn(GabnParams(2, 1, 8, 3))
        a = sample_dense_msets(G, 5, 0.3, 5000, seed=11, mode="sampled")
        b = sample_dense_msets(G, 5, 0.3, 5000, seed=11, mode="sampled")
        assert a == b, "Same seed should give the same estimate"
        assert a["generator"] == "numpy.random.Philox" and a["seed"] == 11, "Generator must be recorded"

    def test_sampled_independent_of_jobs(self, monkeypatch):
        import config
        monkeypatch.setattr(config, "SAMPLE_CHUNK", 1000)
        G = gen_gabn(GabnParams(2, 1, 8, 3))
        one = sample_dense_msets(G, 5, 0.3, 4500, seed=3, mode="sampled", n_jobs=1)
        two = sample_dense_msets(G, 5, 0.3, 4500, seed=3, mode="sampled", n_jobs=2)
        assert one["successes"] == two["successes"], "Chunks must not depend on the worker count"

    def test_sampled_agrees_with_exhaustive(self):
        G = gen_gabn(GabnParams(2, 1, 8, 3))
        exact = sample_dense_msets(G, 5, 0.3, 1, mode="exhaustive")
        est = sample_dense_msets(G, 5, 0.3, 20_000, seed=2024, mode="sampled")
        assert abs(est["fraction"] - exact["fraction"]) <= 3 * est["stderr"] + 1e-12, f"{est} vs {exact}"

    def test_parameter_errors(self):
        G = complete_hypergraph(3, 6)
        with pytest.raises(ParameterError):
            sample_dense_msets(G, 7, 0.5, 10)
        with pytest.raises(ParameterError):
            sample_dense_msets(G, 4, 0.5, 0)
        with pytest.raises(ParameterError):
            sample_dense_msets(G, 4, 0.5, 10, mode="fast")


class TestDensityTable:
    """co-ex sequences and their CSV"""

    def test_single_edge_rows(self):
        df = density_table([SINGLE], 3, 3, 8, "internal")
        assert list(df.columns) == CSV_COLUMNS, f"Unexpected columns {list(df.columns)}"
        assert df["n"].tolist() == list(range(3, 9)), "One row per n"
        assert (df["coex"] == 0).all() and (df["ratio"] == 0).all(), "Forbidding an edge forces codegree 0"

    def test_csv_format(self):
        df = density_table([], 3, 4, 6, "internal")
        text = write_density_csv(df)
        assert text == "n,coex,ratio\n4,2,0.5\n5,3,0.6\n6,4,0.6666666667\n", f"Unexpected CSV {text!r}"
        parsed = pd.read_csv(io.StringIO(text))
        assert parsed["coex"].tolist() == [2, 3, 4], "CSV does not parse back"

    def test_sequence_bounded(self):
        results = coex_sequence([gen_gabn(GabnParams(2, 1, 4, 3))], 3, [4, 5], "internal")
        assert all(r.value <= r.n - 2 for r in results), "co-ex(n) <= n - k + 1"

    def test_bad_range(self):
        with pytest.raises(ParameterError):
            density_table([], 3, 2, 5)
        with pytest.raises(ParameterError):
            density_table([], 3, 6, 5)
