"""Command-line surface.

Exit codes: 0 ok, 2 usage error, 3 data error, 4 numerical failure.
Errors are reported as a single machine-readable line ``error: CODE: message``
on stderr.  Outputs are deterministic given inputs and --seed (timing
fields excepted).
"""
from __future__ import annotations

import functools
import json
import sys

import click
import numpy as np

from . import bench as bench_mod
from . import io as lfio
from .errors import GraphDataError, LapflowError, NumericalError
from .estimators import CurrentFlowBetweenness, build_operator
from .metrics import compare_rankings, dense_ranks, rel_2norm_error
from .models import gen_ba, gen_er
from .spectral import DENSE_CAP, smallest_eigenpairs


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except GraphDataError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(3)
        except NumericalError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(4)
        except LapflowError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(4)
        except OSError as exc:
            click.echo(f"error: IOError: {exc}", err=True)
            sys.exit(3)
    return wrapper


@click.group()
def main():
    """Laplacian pseudoinverse approximations and current-flow betweenness."""


def sigma_options(fn):
    fn = click.option("--sigma-policy", type=click.Choice(["optimal", "2lambdak", "explicit"]),
                      default="optimal", show_default=True,
                      help="How to pick the stretch surrogate eigenvalue.")(fn)
    fn = click.option("--sigma", type=float, default=None,
                      help="Explicit sigma value (requires --sigma-policy explicit).")(fn)
    return fn


def resolve_sigma_policy(sigma_policy, sigma):
    if sigma_policy == "explicit":
        if sigma is None:
            raise click.UsageError("--sigma-policy explicit requires --sigma")
        return sigma
    if sigma is not None:
        raise click.UsageError("--sigma only makes sense with --sigma-policy explicit")
    return sigma_policy


@main.command()
@click.option("--model", type=click.Choice(["er", "ba"]), required=True)
@click.option("--n", type=int, required=True, help="Node count before component extraction.")
@click.option("--q", type=float, default=None, help="ER mean degree (edge probability q/n).")
@click.option("--r", type=int, default=None, help="BA links per arriving node.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@handle_errors
def gen(model, n, q, r, seed, out):
    """Generate a random graph and write it as an edge-list file."""
    if model == "er":
        if q is None:
            raise click.UsageError("--model er requires --q")
        g = gen_er(n, q, seed=seed)
        spec = {"model": "er", "n": n, "q": q, "seed": seed}
    else:
        if r is None:
            raise click.UsageError("--model ba requires --r")
        g = gen_ba(n, r, seed=seed)
        spec = {"model": "ba", "n": n, "r": r, "seed": seed}
    lfio.write_edge_list(g, out, header=spec)
    click.echo(f"wrote {g.n} nodes, {g.m} edges to {out}")


@main.command()
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--k", type=int, default=1, show_default=True, help="Number of eigenpairs.")
@click.option("--tol", type=float, default=1e-8, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@handle_errors
def eigs(input_path, k, tol, seed, out):
    """Compute the k smallest nontrivial eigenpairs and cache them as JSON."""
    g = lfio.read_edge_list(input_path)
    basis = smallest_eigenpairs(g, k, tol=tol, seed=seed)
    lfio.write_basis(basis, out)
    click.echo(f"wrote {basis.npairs} eigenpairs (lambda_2 = {basis.values[0]:.6g}, "
               f"{basis.iterations} matvecs) to {out}")


@main.command(name="pinv-error")
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--method", type=click.Choice(["cutoff", "stretch"]), default="cutoff",
              show_default=True)
@click.option("--k", type=int, default=3, show_default=True, help="Number of eigenpairs.")
@sigma_options
@click.option("--tol", type=float, default=1e-8, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--dense-cap", type=int, default=DENSE_CAP, show_default=True)
@handle_errors
def pinv_error(input_path, method, k, sigma_policy, sigma, tol, seed, dense_cap):
    """Relative 2-norm error of a truncation against the dense exact G+."""
    g = lfio.read_edge_list(input_path)
    policy = resolve_sigma_policy(sigma_policy, sigma)
    op, _, used_sigma = build_operator(g, method, k=k, sigma_policy=policy,
                                       tol=tol, seed=seed, dense_cap=dense_cap)
    err = rel_2norm_error(g, op, dense_cap=dense_cap)
    click.echo(json.dumps({"method": method, "k": k, "sigma": used_sigma,
                           "rel_2norm_error": err}))


@main.command()
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--method", type=click.Choice(["exact", "cutoff", "stretch", "fiedler"]),
              default="exact", show_default=True)
@click.option("--k", type=int, default=3, show_default=True, help="Number of eigenpairs.")
@sigma_options
@click.option("--alpha", type=float, default=None,
              help="Source/target sample fraction; omit for all pairs.")
@click.option("--basis", "basis_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Reuse a cached eigenbasis instead of recomputing.")
@click.option("--tol", type=float, default=1e-8, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--dense-cap", type=int, default=DENSE_CAP, show_default=True)
@click.option("--threads", type=int, default=1, show_default=True,
              help="Reserved; evaluation is single-threaded.")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@handle_errors
def cfb(input_path, method, k, sigma_policy, sigma, alpha, basis_path, tol, seed,
        dense_cap, threads, out):
    """Current-flow betweenness scores, written as node_label,score,rank CSV."""
    g = lfio.read_edge_list(input_path)
    policy = resolve_sigma_policy(sigma_policy, sigma)
    basis = lfio.read_basis(basis_path) if basis_path else None
    k_eff = 1 if method == "fiedler" else k
    est = CurrentFlowBetweenness(method=method, k=k_eff, sigma_policy=policy,
                                 alpha=alpha, tol=tol, seed=seed, dense_cap=dense_cap)
    est.fit(g, basis=basis)
    lfio.write_scores(out, est.labels_, est.scores_, est.ranks_)
    click.echo(f"wrote {g.n} scores to {out}")


@main.command()
@click.option("--exact", "exact_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--approx", "approx_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--top-k", type=int, default=10, show_default=True)
@handle_errors
def compare(exact_path, approx_path, top_k):
    """Correlation / rank-change report between two score files."""
    labels_e, scores_e, _ = lfio.read_scores(exact_path)
    labels_a, scores_a, _ = lfio.read_scores(approx_path)
    if labels_e != labels_a:
        order = {lab: i for i, lab in enumerate(labels_a)}
        if set(labels_e) != set(order):
            raise GraphDataError("score files cover different node sets")
        scores_a = scores_a[[order[lab] for lab in labels_e]]
    report = compare_rankings(scores_e, scores_a, top_k=top_k, labels=labels_e)
    click.echo(json.dumps({
        "pearson": report.pearson,
        "spearman": report.spearman,
        "log_transformed": report.transformed,
        "mean_rank_change": report.mean_rank_change,
        "top_k_overlap": report.top_k_overlap,
        "top_k": top_k,
    }))


@main.command(name="bench")
@click.option("--mode", type=click.Choice(["exact_pinv", "one_eigenpair"]), required=True)
@click.option("--sizes", required=True, help="Comma-separated ascending node counts.")
@click.option("--model", type=click.Choice(["er", "ba"]), default="ba", show_default=True)
@click.option("--reps", type=int, default=3, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out-csv", type=click.Path(dir_okay=False), default=None)
@click.option("--out-json", type=click.Path(dir_okay=False), default=None)
@handle_errors
def bench(mode, sizes, model, reps, seed, out_csv, out_json):
    """Time the exact inverse or the one-eigenpair solve over a size sweep."""
    try:
        size_list = [int(tok) for tok in sizes.split(",")]
    except ValueError:
        raise click.UsageError(f"bad --sizes {sizes!r}")
    records, exponent = bench_mod.bench_scaling(size_list, mode, reps=reps,
                                                seed=seed, model=model)
    if out_csv:
        with open(out_csv, "w") as fh:
            fh.write(bench_mod.records_to_csv(records))
    summary = bench_mod.summary_json(records, exponent)
    if out_json:
        with open(out_json, "w") as fh:
            fh.write(summary)
    click.echo(summary)


if __name__ == "__main__":
    main()
