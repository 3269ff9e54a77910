# tests/test_cli.py

import sys
import os
import json

import pytest
from click.testing import CliRunner

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import config
from analysis.parameters import compute_M, nonprincipality_params
from cli import cli, fmt
from constructions.hosts import GabnParams, gen_gabn, gen_rpartite
from constructions.patterns import gen_fr, gen_ktt
from hypercore.hypergraph import complete_hypergraph, new_hypergraph
from hypercore.khg_format import load_khg, parse_khg, save_khg


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def graphs(tmp_path):
    """A few .khg inputs on disk"""
    paths = {}
    for name, H in {
        "edge": new_hypergraph(3, 3, [(0, 1, 2)]),
        "k4": gen_ktt(2, 3),
        "f32": gen_fr(3, 2),
        "rp8": gen_rpartite(8, 2, 3),
        "rp12": gen_rpartite(12, 2, 3),
        "gabn12": gen_gabn(GabnParams(2, 1, 12, 3)),
        "k20": complete_hypergraph(3, 20),
        "k4_4": complete_hypergraph(4, 5),
    }.items():
        paths[name] = save_khg(H, str(tmp_path / f"{name}.khg"))
    return paths


class TestGenCommands:
    """khg gen"""

    def test_fr_to_stdout(self, runner):
        result = runner.invoke(cli, ["gen", "fr", "--k", "3", "--r", "2"])
        assert result.exit_code == 0, f"Unexpected exit: {result.output}"
        H = parse_khg(result.stdout)
        assert (H.n, H.num_edges) == (12, 12), f"Got {H!r}"

    def test_gabn_to_file(self, runner, tmp_path):
        out = str(tmp_path / "g.khg")
        result = runner.invoke(cli, ["gen", "gabn", "--a", "2", "--b", "1", "--n", "6", "--out", out])
        assert result.exit_code == 0 and result.stdout.strip() == out, f"Unexpected output {result.output}"
        assert load_khg(out).num_edges == 18, "G(2,1,6) should have 18 edges"

    def test_output_is_byte_identical(self, runner):
        first = runner.invoke(cli, ["gen", "rpartite", "--n", "9", "--r", "3"]).stdout
        second = runner.invoke(cli, ["gen", "rpartite", "--n", "9", "--r", "3"]).stdout
        assert first == second and first, "Repeated runs should print the same bytes"

    def test_ext_count(self, runner, graphs):
        result = runner.invoke(cli, ["gen", "ext", "--pattern", graphs["edge"], "--s", "2", "--t", "1", "--count"])
        assert result.stdout == "r 3\nmembers 8\n", f"Unexpected output {result.stdout!r}"

    def test_ext_all(self, runner, graphs, tmp_path):
        out = tmp_path / "members"
        result = runner.invoke(cli, ["gen", "ext", "--pattern", graphs["edge"], "--s", "2", "--t", "1",
                                     "--all", "--dedup", "--out", str(out)])
        assert result.exit_code == 0 and result.stdout.strip() == "2", f"Unexpected output {result.output}"
        assert sorted(os.listdir(out)) == ["member_000000.khg", "member_000001.khg"], "Expected two files"

    def test_ext_needs_one_mode(self, runner, graphs):
        result = runner.invoke(cli, ["gen", "ext", "--pattern", graphs["edge"], "--s", "2", "--t", "1"])
        assert result.exit_code == 2, f"Expected usage error, got {result.exit_code}"

    def test_hfamily_count(self, runner):
        result = runner.invoke(cli, ["gen", "hfamily", "--m", "4", "--threshold", "1", "--dedup"])
        assert result.stdout.strip() == "2", f"Unexpected output {result.stdout!r}"

    def test_parameter_error_exits_2(self, runner):
        result = runner.invoke(cli, ["gen", "gabn", "--a", "1", "--b", "1", "--n", "5"])
        assert result.exit_code == 2, f"Expected exit 2, got {result.exit_code}"
        assert "error:" in result.stderr, "Diagnostics belong on stderr"

    def test_guard_exits_3(self, runner, monkeypatch):
        monkeypatch.setattr(config, "FR_MAX_VERTICES", 10)
        result = runner.invoke(cli, ["gen", "fr", "--k", "3", "--r", "2"])
        assert result.exit_code == 3, f"Expected exit 3, got {result.exit_code}"
        assert "GuardExceeded" in result.stderr, f"Unexpected stderr {result.stderr!r}"


class TestCheckCommands:
    """khg check"""

    def test_color_unsat(self, runner, graphs):
        result = runner.invoke(cli, ["check", "color", "--input", graphs["f32"], "--r", "2"])
        assert result.exit_code == 1 and result.stdout.strip() == "UNSAT", f"Unexpected {result.output}"

    def test_color_found(self, runner, graphs):
        result = runner.invoke(cli, ["check", "color", "--input", graphs["k4"], "--r", "2",
                                     "--backend", "sat", "--sat-backend", "internal"])
        assert result.exit_code == 0, f"Unexpected exit {result.exit_code}"
        assert len(result.stdout.splitlines()) == 4, "One line per vertex"

    def test_embed_found(self, runner, graphs):
        result = runner.invoke(cli, ["check", "embed", "--pattern", graphs["k4"], "--host", graphs["rp8"]])
        assert result.exit_code == 0, f"Unexpected exit {result.exit_code}"
        assert len(result.stdout.splitlines()) == 4, "One line per pattern vertex"

    def test_embed_none(self, runner, graphs):
        result = runner.invoke(cli, ["check", "embed", "--pattern", graphs["f32"], "--host", graphs["rp12"]])
        assert result.exit_code == 1 and result.stdout.strip() == "NONE", f"Unexpected {result.output}"

    def test_embed_budget(self, runner, graphs):
        result = runner.invoke(cli, ["check", "embed", "--pattern", graphs["f32"], "--host", graphs["rp12"],
                                     "--budget", "5"])
        assert result.exit_code == 3 and result.stdout.strip() == "BUDGET", f"Unexpected {result.output}"

    def test_extfree(self, runner, graphs):
        result = runner.invoke(cli, ["check", "extfree", "--host", graphs["gabn12"], "--pattern", graphs["k4"],
                                     "--s", "2", "--t", "2"])
        assert result.exit_code == 0 and result.stdout.strip() == "FREE", f"Unexpected {result.output}"

    def test_extfree_mixed_uniformity(self, runner, graphs):
        result = runner.invoke(cli, ["check", "extfree", "--host", graphs["gabn12"],
                                     "--pattern", f"{graphs['k4']},{graphs['k4_4']}", "--s", "2", "--t", "2"])
        assert result.exit_code == 2, f"Expected exit 2, got {result.exit_code}"

    def test_greedy_with_certificate(self, runner, graphs, tmp_path):
        cert = str(tmp_path / "cert.jsonl")
        result = runner.invoke(cli, ["check", "greedy-f2", "--input", graphs["k20"], "--cert", cert])
        assert result.exit_code == 0, f"Unexpected exit {result.exit_code}"
        with open(cert) as f:
            records = [json.loads(line) for line in f]
        assert len(records) == 1 and records[0]["kind"] == "greedy_f2", f"Unexpected records {records}"
        assert len(records[0]["payload"]["mapping"]) == 12, "F^3_2 has 12 vertices"

    def test_embed_fr_failure(self, runner, graphs):
        result = runner.invoke(cli, ["check", "embed-fr", "--input", graphs["rp12"], "--r", "2"])
        assert result.exit_code == 1 and result.stdout.startswith("FAIL"), f"Unexpected {result.output}"


class TestCoexCommand:
    """khg coex"""

    @pytest.mark.parametrize("n,name,expected", [(4, "k4", "1"), (3, "k4", "1"), (5, "edge", "0")])
    def test_values(self, runner, graphs, n, name, expected):
        result = runner.invoke(cli, ["coex", "--n", str(n), "--family", graphs[name], "--backend", "internal"])
        assert result.exit_code == 0 and result.stdout.strip() == expected, f"Unexpected {result.output}"

    def test_empty_family(self, runner):
        result = runner.invoke(cli, ["coex", "--n", "6", "--backend", "internal"])
        assert result.stdout.strip() == "4", f"co-ex(6, {{}}) should be 4, got {result.stdout!r}"

    def test_single_threshold(self, runner, graphs):
        result = runner.invoke(cli, ["coex", "--n", "4", "--family", graphs["k4"], "--t", "2",
                                     "--backend", "internal"])
        assert result.exit_code == 1 and result.stdout.strip() == "UNSAT", f"Unexpected {result.output}"

    def test_witness_written(self, runner, graphs, tmp_path):
        out = str(tmp_path / "w.khg")
        result = runner.invoke(cli, ["coex", "--n", "4", "--family", graphs["k4"], "--backend", "internal",
                                     "--out", out])
        assert result.stdout.splitlines() == ["1", out], f"Unexpected {result.stdout!r}"
        assert load_khg(out).n == 4, "Witness should live on 4 vertices"

    def test_missing_family_file(self, runner, tmp_path):
        result = runner.invoke(cli, ["coex", "--n", "4", "--family", str(tmp_path / "nope.khg")])
        assert result.exit_code == 2, f"Expected exit 2, got {result.exit_code}"


class TestParamsCommands:
    """khg params / sample / table"""

    def test_rho(self, runner):
        result = runner.invoke(cli, ["params", "rho", "--k", "3", "--ell", "2"])
        assert result.stdout == "0.3535533906\n", f"Unexpected {result.stdout!r}"

    def test_M(self, runner):
        result = runner.invoke(cli, ["params", "M", "--delta", "1.0", "--k", "3"])
        assert int(result.stdout) == compute_M(1.0, 3), f"Unexpected {result.stdout!r}"

    def test_eps(self, runner):
        result = runner.invoke(cli, ["params", "eps", "--k", "3", "--ell", "2"])
        p = nonprincipality_params(3, 2)
        assert result.stdout.splitlines() == [f"rho {fmt(p.rho)}", f"epsilon {fmt(p.epsilon)}",
                                              "F1 K^3(2,2)", "F2 F^3_2"], f"Unexpected {result.stdout!r}"

    def test_rational(self, runner):
        lines = runner.invoke(cli, ["params", "rational", "--a", "2", "--b", "1"]).stdout.splitlines()
        fields = dict(line.split(" ", 1) for line in lines)
        assert fields["alpha"] == "1/2" and fields["s"] == "2" and fields["t"] == "2", f"Unexpected {fields}"

    def test_rho_error(self, runner):
        assert runner.invoke(cli, ["params", "rho", "--k", "2", "--ell", "3"]).exit_code == 2, "Expected exit 2"

    def test_sample_reproducible(self, runner, graphs):
        args = ["sample", "--input", graphs["gabn12"], "--m", "6", "--alpha", "0.3", "--trials", "2000",
                "--seed", "5", "--mode", "sampled"]
        first = runner.invoke(cli, args)
        second = runner.invoke(cli, args)
        assert first.exit_code == 0 and first.stdout == second.stdout, "Same seed should print the same bytes"
        assert first.stdout.startswith("# generator=numpy.random.Philox mode=sampled seed=5"), "Header missing"

    def test_table(self, runner, graphs):
        result = runner.invoke(cli, ["table", "--family", graphs["edge"], "--n-from", "3", "--n-to", "8",
                                     "--backend", "internal"])
        lines = result.stdout.splitlines()
        assert lines[0] == "n,coex,ratio", f"Unexpected header {lines[0]!r}"
        assert lines[1:] == [f"{n},0,0" for n in range(3, 9)], f"Unexpected rows {lines[1:]}"
