"""Command-line harness wiring datasets -> graph -> solver -> spectral clustering.

Subcommands: synth, graph, solve, trace, bench.  Benchmark runs emit CSV
whose non-comment lines are byte-identical across reruns with the same
configuration; timestamps and wall times live only in comment lines.
"""

import configparser
import math
import os
import sys
import time
from dataclasses import dataclass, fields

import click
import numpy as np

from . import datasets
from .cluster import GRAPH_SOLVERS, SOLVERS, LowRankSubspaceClustering
from .datasets import SyntheticSpec, generate_synthetic, load_matrix, save_matrix
from .graph import SYMMETRIZATION_POLICIES, build_graph, save_triplets
from .spectral import clustering_accuracy

RESULT_COLUMNS = (
    "dataset",
    "solver",
    "tau",
    "alpha",
    "beta",
    "gamma",
    "n_neighbors",
    "n_clusters",
    "seed",
    "accuracy",
    "iterations",
    "converged",
    "error",
)

TRACE_COLUMNS = ("k", "primal_residual", "consensus_residual", "mu1", "mu2")


@dataclass
class ExperimentConfig:
    """Everything needed for one benchmark sweep."""

    dataset: str = "synthetic"
    # synthetic generator
    ambient_dim: int = 50
    subspace_dims: tuple = (4, 4, 4, 4, 4)
    points_per_subspace: tuple = (40, 40, 40, 40, 40)
    noise_sigma: float = 0.0
    corruption_fraction: float = 0.0
    corruption_magnitude: float = 0.0
    # real datasets
    dataset_root: str = ""
    group: int = 3
    split: str = "train"
    samples_per_class: int = 10
    # solver + graph + clustering
    solver: str = "gl-p5"
    tau: float = 0.2
    alpha: float = 10.0
    beta: float = 1e-6
    gamma: float = 1e-3
    mu0: float = 1e-6
    rho: float = 1.1
    mu_max: float = 1e6
    eps1: float = 1e-8
    max_iters: int = 500
    n_neighbors: int = 10
    symmetrization: str = "mutual-max"
    n_clusters: int = 0
    seeds: tuple = (0,)
    output: str = "results.csv"

    def validate(self):
        if self.solver not in SOLVERS:
            raise ValueError(f"solver must be one of {SOLVERS}, got {self.solver!r}")
        if self.symmetrization not in SYMMETRIZATION_POLICIES:
            raise ValueError(f"unknown symmetrization {self.symmetrization!r}")
        if self.dataset not in ("synthetic", "yaleb", "mnist", "usps"):
            raise ValueError(f"unknown dataset {self.dataset!r}")
        ignored = self._ignored_parameters()
        if ignored:
            click.echo(f"warning: {self.solver} ignores {', '.join(ignored)}", err=True)
        return self

    def _ignored_parameters(self):
        closed_form = self.solver in ("p1", "p2", "p3", "p4")
        ignored = []
        if closed_form and (self.beta != 1e-6 or self.corruption_fraction > 0):
            ignored.append("corruption-model parameters (beta)")
        if self.solver not in GRAPH_SOLVERS and self.gamma not in (0.0, 1e-3):
            ignored.append("gamma")
        return ignored

    def resolve_root(self):
        return self.dataset_root or os.environ.get("DATASET_ROOT", ".")


def config_from_ini(path):
    """Load an ExperimentConfig from flat key = value sections.

    Sections are [dataset], [solver], [graph], [clustering], [output]; keys
    match the ExperimentConfig field names.  An empty file yields the
    published face-clustering defaults.
    """
    parser = configparser.ConfigParser()
    with open(path) as fh:
        parser.read_file(fh)
    cfg = ExperimentConfig()
    typemap = {f.name: f.type for f in fields(ExperimentConfig)}
    for section in parser.sections():
        for key, value in parser.items(section):
            key = key.replace("-", "_")
            if key not in typemap:
                raise ValueError(f"{path}: unknown key {key!r} in [{section}]")
            current = getattr(cfg, key)
            if isinstance(current, tuple):
                parsed = tuple(int(tok) for tok in value.replace(",", " ").split())
            elif isinstance(current, bool):
                parsed = parser.getboolean(section, key)
            elif isinstance(current, int):
                parsed = int(value)
            elif isinstance(current, float):
                parsed = float(value)
            else:
                parsed = value
            setattr(cfg, key, parsed)
    return cfg


def _load_dataset(cfg, seed):
    """Materialize (X, truth) for one seed; X is p x n."""
    if cfg.dataset == "synthetic":
        spec = SyntheticSpec(
            ambient_dim=cfg.ambient_dim,
            subspace_dims=tuple(cfg.subspace_dims),
            points_per_subspace=tuple(cfg.points_per_subspace),
            noise_sigma=cfg.noise_sigma,
            corruption_fraction=cfg.corruption_fraction,
            corruption_magnitude=cfg.corruption_magnitude,
            seed=seed,
        )
        X, truth, _, _ = generate_synthetic(spec)
        return X, truth
    root = cfg.resolve_root()
    if cfg.dataset == "yaleb":
        return datasets.load_yaleb(os.path.join(root, "yaleb"), cfg.group)
    loader = datasets.load_mnist if cfg.dataset == "mnist" else datasets.load_usps
    X, labels = loader(os.path.join(root, cfg.dataset), cfg.split)
    return datasets.subsample_per_class(X, labels, cfg.samples_per_class)


def _make_estimator(cfg, n_clusters, seed):
    return LowRankSubspaceClustering(
        n_clusters=n_clusters,
        solver=cfg.solver,
        tau=cfg.tau,
        alpha=cfg.alpha,
        beta=cfg.beta,
        gamma=cfg.gamma,
        n_neighbors=cfg.n_neighbors,
        symmetrization=cfg.symmetrization,
        mu0=cfg.mu0,
        rho=cfg.rho,
        mu_max=cfg.mu_max,
        eps1=cfg.eps1,
        max_iters=cfg.max_iters,
        random_state=seed,
    )


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def run_experiment(cfg):
    """Run the configured sweep; returns (records, timings).

    Each record is a dict keyed by RESULT_COLUMNS.  Per-seed failures are
    recorded in the error column and the sweep continues.
    """
    cfg.validate()
    records, timings = [], {}
    for seed in cfg.seeds:
        row = {
            "dataset": cfg.dataset,
            "solver": cfg.solver,
            "tau": cfg.tau,
            "alpha": cfg.alpha,
            "beta": cfg.beta,
            "gamma": cfg.gamma,
            "n_neighbors": cfg.n_neighbors,
            "seed": seed,
            "accuracy": None,
            "iterations": None,
            "converged": None,
            "error": "",
        }
        start = time.perf_counter()
        try:
            X, truth = _load_dataset(cfg, seed)
            k = cfg.n_clusters or int(np.unique(truth).size)
            row["n_clusters"] = k
            model = _make_estimator(cfg, k, seed)
            model.fit(X.T)
            row["accuracy"] = clustering_accuracy(model.labels_, truth)
            row["iterations"] = model.n_iter_
            row["converged"] = model.converged_
        except Exception as exc:  # noqa: BLE001 - sweep must survive bad seeds
            row["n_clusters"] = row.get("n_clusters", cfg.n_clusters)
            row["error"] = f"{type(exc).__name__}: {exc}"
        timings[seed] = time.perf_counter() - start
        records.append(row)
    return records, timings


def summarize(records):
    """Mean/std accuracy rows recomputed from the per-seed records."""
    accs = [r["accuracy"] for r in records if r["accuracy"] is not None]
    if not accs:
        return []
    base = {key: records[0][key] for key in RESULT_COLUMNS}
    base.update(accuracy=None, iterations=None, converged=None, error="")
    mean_row = dict(base, seed="mean", accuracy=float(np.mean(accs)))
    std_row = dict(base, seed="std", accuracy=float(np.std(accs)))
    return [mean_row, std_row]


def write_results(path, records, timings=None):
    with open(path, "w") as fh:
        fh.write(f"# generated {time.strftime('%Y-%m-%dT%H:%M:%S')}\n")
        if timings:
            for seed, dt in timings.items():
                fh.write(f"# wall_time seed={seed} {dt:.3f}s\n")
        fh.write(",".join(RESULT_COLUMNS) + "\n")
        for row in records:
            fh.write(",".join(_fmt(row.get(col)) for col in RESULT_COLUMNS) + "\n")


def write_trace(path, trace, converged):
    """Per-iteration residual CSV for external plotting."""
    with open(path, "w") as fh:
        fh.write(",".join(TRACE_COLUMNS + ("converged",)) + "\n")
        for rec in trace:
            values = [rec.k, rec.primal_residual, rec.consensus_residual, rec.mu1, rec.mu2]
            cells = ["" if isinstance(v, float) and math.isnan(v) else _fmt(v) for v in values]
            fh.write(",".join(cells) + f",{int(converged)}\n")


def _int_list(_ctx, _param, value):
    return tuple(int(tok) for tok in value.replace(",", " ").split())


_dataset_options = [
    click.option("--dataset", default="synthetic", show_default=True,
                 type=click.Choice(["synthetic", "yaleb", "mnist", "usps"])),
    click.option("--dataset-root", default="", help="Overrides $DATASET_ROOT."),
    click.option("--group", default=3, show_default=True, help="Yale B subject group (1-4)."),
    click.option("--split", default="train", show_default=True,
                 type=click.Choice(["train", "test"])),
    click.option("--samples-per-class", default=10, show_default=True),
    click.option("--ambient-dim", default=50, show_default=True),
    click.option("--subspace-dims", default="4 4 4 4 4", callback=_int_list, show_default=True),
    click.option("--points-per-subspace", default="40 40 40 40 40", callback=_int_list,
                 show_default=True),
    click.option("--noise-sigma", default=0.0, show_default=True),
    click.option("--corruption-fraction", default=0.0, show_default=True),
    click.option("--corruption-magnitude", default=0.0, show_default=True),
]

_solver_options = [
    click.option("--solver", default="gl-p5", show_default=True, type=click.Choice(SOLVERS)),
    click.option("--tau", default=0.2, show_default=True),
    click.option("--alpha", default=10.0, show_default=True),
    click.option("--beta", default=1e-6, show_default=True),
    click.option("--gamma", default=1e-3, show_default=True),
    click.option("--mu0", default=1e-6, show_default=True),
    click.option("--rho", default=1.1, show_default=True),
    click.option("--mu-max", default=1e6, show_default=True),
    click.option("--eps1", default=1e-8, show_default=True),
    click.option("--max-iters", default=500, show_default=True),
    click.option("--n-neighbors", "-K", default=10, show_default=True),
    click.option("--symmetrization", default="mutual-max", show_default=True,
                 type=click.Choice(SYMMETRIZATION_POLICIES)),
    click.option("--n-clusters", "-k", default=0, show_default=True,
                 help="0 means infer from ground truth."),
]


def _apply(options):
    def wrap(func):
        for option in reversed(options):
            func = option(func)
        return func
    return wrap


def _config_from_kwargs(kwargs, seeds):
    cfg = ExperimentConfig()
    for key, value in kwargs.items():
        setattr(cfg, key, value)
    cfg.seeds = tuple(seeds)
    return cfg


@click.group()
def main():
    """Low rank subspace clustering toolkit."""


@main.command()
@click.option("--ambient-dim", default=50, show_default=True)
@click.option("--subspace-dims", default="4 4 4 4 4", callback=_int_list, show_default=True)
@click.option("--points-per-subspace", default="40 40 40 40 40", callback=_int_list,
              show_default=True)
@click.option("--noise-sigma", default=0.0, show_default=True)
@click.option("--corruption-fraction", default=0.0, show_default=True)
@click.option("--corruption-magnitude", default=0.0, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--output", "-o", required=True, help="Output prefix (.mat/.labels.csv).")
def synth(output, seed, **kwargs):
    """Generate a synthetic union-of-subspaces dataset."""
    spec = SyntheticSpec(seed=seed, **kwargs)
    X, labels, _, _ = generate_synthetic(spec)
    save_matrix(output + ".mat", X)
    with open(output + ".labels.csv", "w") as fh:
        fh.write("sample,label\n")
        for i, lab in enumerate(labels):
            fh.write(f"{i},{lab}\n")
    click.echo(f"wrote {output}.mat ({X.shape[0]}x{X.shape[1]}) and {output}.labels.csv")


@main.command()
@click.option("--input", "-i", "input_path", required=True, help="Matrix file from synth.")
@click.option("--n-neighbors", "-K", default=10, show_default=True)
@click.option("--symmetrization", default="mutual-max", show_default=True,
              type=click.Choice(SYMMETRIZATION_POLICIES))
@click.option("--output", "-o", required=True, help="Triplet text output for W.")
def graph(input_path, n_neighbors, symmetrization, output):
    """Build a K-nearest-neighbor similarity graph from a data matrix."""
    X = load_matrix(input_path)
    model = build_graph(X, n_neighbors, symmetrization)
    save_triplets(output, model.W)
    click.echo(f"wrote {output} ({int(np.count_nonzero(model.W))} edges)")


@main.command()
@_apply(_dataset_options)
@_apply(_solver_options)
@click.option("--seed", default=0, show_default=True)
@click.option("--output", "-o", default="labels.csv", show_default=True)
@click.option("--trace", "trace_path", default="", help="Optional per-iteration trace CSV.")
def solve(seed, output, trace_path, **kwargs):
    """Run one solver on one dataset and write per-sample labels."""
    cfg = _config_from_kwargs(kwargs, [seed])
    records, _ = run_experiment(cfg)
    row = records[0]
    if row["error"]:
        raise click.ClickException(row["error"])
    X, truth = _load_dataset(cfg, seed)
    k = cfg.n_clusters or int(np.unique(truth).size)
    model = _make_estimator(cfg, k, seed).fit(X.T)
    with open(output, "w") as fh:
        fh.write("sample,label\n")
        for i, lab in enumerate(model.labels_):
            fh.write(f"{i},{lab}\n")
    if trace_path:
        write_trace(trace_path, model.decomposition_.residuals, model.converged_)
    click.echo(f"accuracy={row['accuracy']:.2f} iterations={row['iterations']}")


@main.command()
@_apply(_dataset_options)
@_apply(_solver_options)
@click.option("--seed", default=0, show_default=True)
@click.option("--output", "-o", default="trace.csv", show_default=True)
def trace(seed, output, **kwargs):
    """Run an iterative solver and emit its convergence trace."""
    cfg = _config_from_kwargs(kwargs, [seed])
    cfg.validate()
    if cfg.solver in ("p1", "p2", "p3", "p4"):
        raise click.ClickException("tracing requires an iterative solver")
    X, truth = _load_dataset(cfg, seed)
    k = cfg.n_clusters or int(np.unique(truth).size)
    model = _make_estimator(cfg, k, seed).fit(X.T)
    write_trace(output, model.decomposition_.residuals, model.converged_)
    click.echo(f"wrote {output} ({model.n_iter_} iterations, converged={model.converged_})")


@main.command()
@_apply(_dataset_options)
@_apply(_solver_options)
@click.option("--config", "config_path", default="", help="INI config; flags override.")
@click.option("--seeds", default="0", show_default=True, help="Seed list, e.g. '0 1 2'.")
@click.option("--output", "-o", default="results.csv", show_default=True)
@click.pass_context
def bench(ctx, config_path, seeds, output, **kwargs):
    """Run a seed sweep and emit a results CSV with a summary."""
    if config_path:
        cfg = config_from_ini(config_path)
        for key, value in kwargs.items():
            source = ctx.get_parameter_source(key)
            if source == click.core.ParameterSource.COMMANDLINE:
                setattr(cfg, key, value)
        cfg.seeds = _int_list(None, None, seeds)
    else:
        cfg = _config_from_kwargs(kwargs, _int_list(None, None, seeds))
    records, timings = run_experiment(cfg)
    write_results(output, records + summarize(records), timings)
    failures = sum(1 for r in records if r["error"])
    click.echo(f"wrote {output} ({len(records)} seeds, {failures} failed)")
    if failures == len(records):
        sys.exit(1)


if __name__ == "__main__":
    main()
