# cli.py

"""
khg command-line entry point.

Exit codes: 0 success, 1 negative answer, 2 usage or parameter error,
3 guard, budget, timeout or backend failure. Results go to stdout,
diagnostics to stderr and the log directory.
"""

import os

import click

import config
from analysis.density import density_table, write_density_csv
from analysis.parameters import compute_M, compute_rho, nonprincipality_params, rational_family_params
from analysis.sampling import SAMPLE_MODES, sample_dense_msets
from analysis.verify_suite import SUITES, run_verify_suite
from checkers.colouring import COLOUR_BACKENDS, colour
from checkers.embedding import SearchStatus, find_embedding
from checkers.extension import contains_family_extension
from checkers.greedy import GREEDY_MODES, embed_fr_recursive, greedy_embed_f2
from constructions.extensions import extension_family_iter, extension_family_size, extension_member_at
from constructions.families import enumerate_min_codegree_family
from constructions.hosts import GabnParams, gen_gabn, gen_rpartite
from constructions.patterns import gen_fr, gen_ktt
from hypercore.errors import (BackendError, BudgetExceeded, CertificateError, GuardExceeded, HypergraphError,
                              ParameterError, SolverUnknown)
from hypercore.khg_format import load_khg, save_khg, write_khg
from reports.report_builder import build_verify_report
from satgate.backends import BACKENDS, SolverStatus
from satgate.coex import coex_decision, coex_exact
from utils.certificates import CertificateStore
from utils.logger import enable_stderr_logging, setup_logger

logger = setup_logger("cli", "cli.log")

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def fmt(x) -> str:
    return f"{x:.{config.FLOAT_DIGITS}g}"


class KhgGroup(click.Group):
    """Maps toolkit exceptions onto exit codes for every nested command."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (ParameterError, HypergraphError) as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_USAGE)
        except (GuardExceeded, BudgetExceeded, BackendError, SolverUnknown, CertificateError) as e:
            click.echo(f"error: {type(e).__name__}: {e}", err=True)
            ctx.exit(EXIT_RESOURCE)


def _emit(H, out, comments=()):
    if out:
        save_khg(H, out, comments)
        click.echo(out)
    else:
        click.echo(write_khg(H, comments), nl=False)


def _load_family(paths: str, k: int = None):
    names = [p.strip() for p in paths.split(",") if p.strip()]
    missing = [p for p in names if not os.path.isfile(p)]
    if missing:
        raise click.BadParameter(f"no such file: {missing[0]}", param_hint="--family")
    family = [load_khg(p) for p in names]
    if not family:
        raise click.BadParameter("at least one .khg path is needed", param_hint="--family")
    uniformities = {F.k for F in family} | ({k} if k is not None else set())
    if len(uniformities) > 1:
        raise click.BadParameter(f"mixed uniformities {sorted(uniformities)}", param_hint="--family")
    return family


def _save_cert(path, kind, inputs, payload):
    if path:
        store = CertificateStore()
        store.add(kind, inputs, payload)
        store.save(path)


@click.group(cls=KhgGroup)
@click.option("--verbose", is_flag=True, help="Mirror log records to stderr")
def cli(verbose):
    """Hypergraph constructions, checkers and co-ex search."""
    if verbose:
        enable_stderr_logging()


# ---------------------------------------------------------------- gen

@cli.group(cls=KhgGroup)
def gen():
    """Write a construction in .khg form."""


@gen.command("gabn")
@click.option("--a", "a", type=int, required=True)
@click.option("--b", "b", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, default=3, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False))
def gen_gabn_cmd(a, b, n, k, out):
    _emit(gen_gabn(GabnParams(a, b, n, k)), out, [f"gabn a={a} b={b} n={n} k={k}"])


@gen.command("rpartite")
@click.option("--n", "n", type=int, required=True)
@click.option("--r", "r", type=int, required=True)
@click.option("--k", "k", type=int, default=3, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False))
def gen_rpartite_cmd(n, r, k, out):
    _emit(gen_rpartite(n, r, k), out, [f"rpartite n={n} r={r} k={k}"])


@gen.command("ktt")
@click.option("--t", "t", type=int, required=True)
@click.option("--k", "k", type=int, default=3, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False))
def gen_ktt_cmd(t, k, out):
    _emit(gen_ktt(t, k), out, [f"ktt t={t} k={k}"])


@gen.command("fr")
@click.option("--k", "k", type=int, required=True)
@click.option("--r", "r", type=int, required=True)
@click.option("--out", type=click.Path(dir_okay=False))
def gen_fr_cmd(k, r, out):
    _emit(gen_fr(k, r), out, [f"fr k={k} r={r}"])


@gen.command("ext")
@click.option("--pattern", required=True, type=click.Path(exists=True, dir_okay=False), help="Base k-graph F")
@click.option("--s", "s", type=int, required=True)
@click.option("--t", "t", type=int, required=True)
@click.option("--index", type=int, help="Write the member with this mixed-radix index")
@click.option("--all", "all_members", is_flag=True, help="Write every member into the --out directory")
@click.option("--count", is_flag=True, help="Print r and the member count only")
@click.option("--dedup", is_flag=True, help="With --all, one member per isomorphism class")
@click.option("--override", is_flag=True, help="Lift FAMILY_CAP")
@click.option("--out", type=click.Path())
def gen_ext_cmd(pattern, s, t, index, all_members, count, dedup, override, out):
    F = load_khg(pattern)
    modes = sum([index is not None, all_members, count])
    if modes != 1:
        raise click.UsageError("choose exactly one of --index, --all, --count")

    if count:
        r, total = extension_family_size(F, s, t)
        click.echo(f"r {r}")
        click.echo(f"members {total}")
    elif index is not None:
        _emit(extension_member_at(F, s, t, index), out, [f"ext s={s} t={t} index={index}"])
    else:
        if not out:
            raise click.UsageError("--all needs an --out directory")
        os.makedirs(out, exist_ok=True)
        written = 0
        for i, member in enumerate(extension_family_iter(F, s, t, dedup=dedup, override=override)):
            save_khg(member, os.path.join(out, f"member_{i:06d}.khg"), [f"ext s={s} t={t} member={i}"])
            written += 1
        click.echo(written)


@gen.command("hfamily")
@click.option("--m", "m", type=int, required=True)
@click.option("--k", "k", type=int, default=3, show_default=True)
@click.option("--threshold", type=int, required=True)
@click.option("--dedup", is_flag=True)
@click.option("--out", type=click.Path(file_okay=False), help="Directory for the members")
def gen_hfamily_cmd(m, k, threshold, dedup, out):
    written = 0
    if out:
        os.makedirs(out, exist_ok=True)
    for i, H in enumerate(enumerate_min_codegree_family(m, k, threshold, dedup=dedup)):
        if out:
            save_khg(H, os.path.join(out, f"h_{i:06d}.khg"), [f"hfamily m={m} k={k} threshold={threshold}"])
        written += 1
    click.echo(written)


# ---------------------------------------------------------------- check

@cli.group(cls=KhgGroup)
def check():
    """Decide a property and print its certificate."""


@check.command("color")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--r", "r", type=int, required=True)
@click.option("--backend", type=click.Choice(COLOUR_BACKENDS), default="brute", show_default=True)
@click.option("--sat-backend", type=click.Choice(BACKENDS), default=None)
@click.option("--cert", type=click.Path(dir_okay=False))
@click.pass_context
def check_color(ctx, input_path, r, backend, sat_backend, cert):
    H = load_khg(input_path)
    result = colour(H, r, backend, sat_backend)
    _save_cert(cert, "colouring", {"input": input_path, "r": r, "backend": backend},
               {"verdict": result.verdict, "parts": list(result.colouring.parts) if result.colourable else None})
    if not result.colourable:
        click.echo("UNSAT")
        ctx.exit(EXIT_NEGATIVE)
    click.echo(result.colouring.to_text(), nl=False)


@check.command("embed")
@click.option("--pattern", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--host", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--budget", type=int, default=None, help="Node budget")
@click.option("--jobs", type=int, default=None)
@click.option("--cert", type=click.Path(dir_okay=False))
@click.pass_context
def check_embed(ctx, pattern, host, budget, jobs, cert):
    outcome = find_embedding(load_khg(host), load_khg(pattern), budget, jobs)
    _save_cert(cert, "embedding", {"pattern": pattern, "host": host},
               {"status": outcome.status.value, "nodes": outcome.nodes,
                "mapping": list(outcome.embedding.mapping) if outcome else None})
    if outcome.status is SearchStatus.BUDGET:
        click.echo("BUDGET")
        ctx.exit(EXIT_RESOURCE)
    if outcome.status is SearchStatus.NONE:
        click.echo("NONE")
        ctx.exit(EXIT_NEGATIVE)
    click.echo(outcome.embedding.to_text(), nl=False)


@check.command("extfree")
@click.option("--host", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--pattern", required=True, help="Comma-separated base patterns")
@click.option("--s", "s", type=int, required=True)
@click.option("--t", "t", type=int, required=True)
@click.option("--budget", type=int, default=None, help="Node budget per base pattern")
@click.option("--cert", type=click.Path(dir_okay=False))
@click.pass_context
def check_extfree(ctx, host, pattern, s, t, budget, cert):
    H = load_khg(host)
    family = _load_family(pattern, H.k)
    outcome = contains_family_extension(H, family, s, t, budget)
    certificate = outcome.certificate
    _save_cert(cert, "extension", {"host": host, "pattern": pattern, "s": s, "t": t},
               {"status": outcome.status.value, "embeddings_tried": outcome.embeddings_tried,
                "base_index": outcome.base_index,
                "mapping": list(certificate.member_embedding.mapping) if certificate else None,
                "P": [list(p) for p in certificate.spec.P] if certificate else None})
    if outcome.status is SearchStatus.BUDGET:
        click.echo("BUDGET")
        ctx.exit(EXIT_RESOURCE)
    if outcome.status is SearchStatus.NONE:
        click.echo("FREE")
        return
    click.echo("\n".join(certificate.lines()))
    ctx.exit(EXIT_NEGATIVE)


def _greedy_result(ctx, outcome, cert, kind, inputs):
    _save_cert(cert, kind, inputs,
               {"mapping": list(outcome.embedding.mapping) if outcome else None,
                "failure": outcome.failure.describe() if outcome.failure else None})
    if not outcome:
        click.echo(f"FAIL {outcome.failure.describe()}")
        ctx.exit(EXIT_NEGATIVE)
    click.echo(outcome.embedding.to_text(), nl=False)


@check.command("greedy-f2")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", type=click.Choice(GREEDY_MODES), default="codegree", show_default=True)
@click.option("--cert", type=click.Path(dir_okay=False))
@click.pass_context
def check_greedy_f2(ctx, input_path, mode, cert):
    outcome = greedy_embed_f2(load_khg(input_path), mode)
    _greedy_result(ctx, outcome, cert, "greedy_f2", {"input": input_path, "mode": mode})


@check.command("embed-fr")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--r", "r", type=int, required=True)
@click.option("--cert", type=click.Path(dir_okay=False))
@click.pass_context
def check_embed_fr(ctx, input_path, r, cert):
    outcome = embed_fr_recursive(load_khg(input_path), r)
    _greedy_result(ctx, outcome, cert, "embed_fr", {"input": input_path, "r": r})


# ---------------------------------------------------------------- coex

@cli.command("coex")
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, default=3, show_default=True)
@click.option("--family", default="", help="Comma-separated .khg paths; empty for no forbidden graph")
@click.option("--backend", type=click.Choice(BACKENDS), default=None)
@click.option("--t", "t", type=int, default=None, help="Decide a single threshold instead of searching")
@click.option("--sat-cmd", default=None, help="External solver command (overrides KHG_SAT_CMD)")
@click.option("--out", type=click.Path(dir_okay=False), help="Where to write the witness")
@click.pass_context
def coex_cmd(ctx, n, k, family, backend, t, sat_cmd, out):
    members = _load_family(family, k) if family.strip() else []
    options = {"sat_cmd": sat_cmd} if sat_cmd else {}

    if t is not None:
        decision = coex_decision(n, k, members, t, backend, **options)
        if decision.status is SolverStatus.UNKNOWN:
            raise SolverUnknown(t, decision.verdict.detail)
        click.echo(decision.status.value)
        if decision.witness is not None and out:
            save_khg(decision.witness, out, [f"coex witness n={n} k={k} t={t}"])
            click.echo(out)
        if decision.status is SolverStatus.UNSAT:
            ctx.exit(EXIT_NEGATIVE)
        return

    result = coex_exact(n, k, members, backend, **options)
    click.echo(result.value)
    if out:
        save_khg(result.witness, out, [f"coex witness n={n} k={k} t={result.value}"])
        click.echo(out)


# ---------------------------------------------------------------- params / sample / table

@cli.group(cls=KhgGroup)
def params():
    """Closed-form parameters."""


@params.command("rho")
@click.option("--k", "k", type=int, required=True)
@click.option("--ell", type=int, required=True)
def params_rho(k, ell):
    click.echo(fmt(compute_rho(k, ell)))


@params.command("M")
@click.option("--delta", type=float, required=True)
@click.option("--k", "k", type=int, required=True)
def params_m(delta, k):
    click.echo(compute_M(delta, k))


@params.command("eps")
@click.option("--k", "k", type=int, required=True)
@click.option("--ell", type=int, required=True)
def params_eps(k, ell):
    p = nonprincipality_params(k, ell)
    click.echo(f"rho {fmt(p.rho)}")
    click.echo(f"epsilon {fmt(p.epsilon)}")
    click.echo(f"F1 {p.patterns['F1']}")
    click.echo(f"F2 {p.patterns['F2']}")


@params.command("rational")
@click.option("--a", "a", type=int, required=True)
@click.option("--b", "b", type=int, required=True)
@click.option("--k", "k", type=int, default=3, show_default=True)
def params_rational(a, b, k):
    p = rational_family_params(a, b, k)
    rows = [("alpha", str(p.alpha)), ("delta", fmt(p.delta)), ("M", p.M), ("m", p.m),
            ("s", p.s), ("t", p.t), ("threshold", fmt(p.threshold)), ("edge_slots", p.edge_slots)]
    for key, value in rows:
        click.echo(f"{key} {value}")


@cli.command("sample")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--m", "m", type=int, required=True)
@click.option("--alpha", type=float, required=True)
@click.option("--trials", type=int, default=100_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--mode", type=click.Choice(SAMPLE_MODES), default="auto", show_default=True)
@click.option("--jobs", type=int, default=None)
def sample_cmd(input_path, m, alpha, trials, seed, mode, jobs):
    est = sample_dense_msets(load_khg(input_path), m, alpha, trials, seed, mode, jobs)
    click.echo(f"# generator={est['generator']} mode={est['mode']} seed={est['seed']} trials={est['trials']}")
    click.echo(f"fraction {fmt(est['fraction'])}")
    click.echo(f"stderr {fmt(est['stderr'])}")
    click.echo(f"successes {est['successes']}")


@cli.command("table")
@click.option("--family", default="", help="Comma-separated .khg paths")
@click.option("--k", "k", type=int, default=3, show_default=True)
@click.option("--n-from", type=int, required=True)
@click.option("--n-to", type=int, required=True)
@click.option("--backend", type=click.Choice(BACKENDS), default=None)
@click.option("--sat-cmd", default=None)
@click.option("--out", type=click.Path(dir_okay=False))
def table_cmd(family, k, n_from, n_to, backend, sat_cmd, out):
    members = _load_family(family, k) if family.strip() else []
    options = {"sat_cmd": sat_cmd} if sat_cmd else {}
    df = density_table(members, k, n_from, n_to, backend, **options)
    if out:
        write_density_csv(df, out)
        click.echo(out)
    else:
        click.echo(write_density_csv(df), nl=False)


# ---------------------------------------------------------------- verify

@cli.command("verify")
@click.option("--suite", type=click.Choice(SUITES), default="fast", show_default=True)
@click.option("--report", type=click.Path(dir_okay=False), help="Also write an HTML report")
@click.pass_context
def verify_cmd(ctx, suite, report):
    results = run_verify_suite(suite)
    for r in results:
        click.echo(f"{r['label']} {r['name']}: {r['detail']}")
    if report:
        build_verify_report(results, report, suite)
        click.echo(f"✅ Verify report saved to {report}", err=True)
    if not all(r["passed"] for r in results):
        ctx.exit(EXIT_NEGATIVE)


if __name__ == "__main__":
    cli()
