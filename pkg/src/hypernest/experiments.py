"""Seeded experiment grids over contagion configurations.

A grid crosses variants x seed strategies x seed counts; each cell is run
repeatedly with RNG streams derived from the master seed and the cell/run
index, so results are reproducible and independent of execution order or
worker count.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from math import sqrt
from pathlib import Path
from typing import Sequence

from .dynamics import (
    DynamicsConfig,
    Trajectory,
    select_seeds,
    simulate_encapsulation,
    simulate_encapsulation_empirical_adjacent,
    simulate_threshold,
)
from .hypergraph import Hypergraph
from .linegraph import HyperedgeDag, adjacent_layer_dag, build_encapsulation_dag
from .randomize import layer_randomize
from .rng import spawn_rng


@dataclass(frozen=True)
class ExperimentGrid:
    variants: tuple[str, ...] = ("strict",)
    strategies: tuple[str, ...] = ("uniform",)
    seed_counts: tuple[int, ...] = (1,)
    tau: int = 1
    max_steps: int = 25
    comparison: str = ">="

    def cells(self) -> list[tuple[str, str, int]]:
        return list(product(self.variants, self.strategies, self.seed_counts))


@dataclass(frozen=True)
class RunRecord:
    dataset: str
    variant: str
    strategy: str
    seeds: int
    tau: int
    run: int
    steps: int
    final_active: int
    non_seed_active: int
    proportion: float
    complete_by_seeding: bool


@dataclass(frozen=True)
class CellSummary:
    dataset: str
    variant: str
    strategy: str
    seeds: int
    tau: int
    runs: int
    mean_proportion: float
    stderr: float


@dataclass
class PreparedDynamics:
    """Line-graph structures shared by every cell run on one hypergraph."""

    hypergraph: Hypergraph
    full_dag: HyperedgeDag
    adjacent_dag: HyperedgeDag


def prepare_dynamics(h: Hypergraph) -> PreparedDynamics:
    dag = build_encapsulation_dag(h)
    return PreparedDynamics(hypergraph=h, full_dag=dag, adjacent_dag=adjacent_layer_dag(dag, h))


def run_dynamics(prepared: PreparedDynamics, config: DynamicsConfig, seeds: Sequence[int]) -> Trajectory:
    h = prepared.hypergraph
    if config.variant in ("strict", "non-strict"):
        return simulate_encapsulation(h, prepared.adjacent_dag, config, seeds)
    if config.variant == "empirical-adjacent":
        return simulate_encapsulation_empirical_adjacent(h, prepared.full_dag, config, seeds)
    return simulate_threshold(h, config, seeds)


def _run_cell(args) -> list[RunRecord]:
    prepared, grid, cell_index, cell, runs, master_seed, dataset = args
    variant, strategy, seed_count = cell
    config = DynamicsConfig(
        variant=variant,
        tau=grid.tau,
        max_steps=grid.max_steps,
        seed_strategy=strategy,
        seed_count=seed_count,
        rng_seed=master_seed,
        comparison=grid.comparison,
    )
    records = []
    for run in range(runs):
        rng = spawn_rng(master_seed, "seed-selection", cell_index, run)
        seeds = select_seeds(prepared.hypergraph, strategy, seed_count, rng)
        traj = run_dynamics(prepared, config, seeds)
        records.append(
            RunRecord(
                dataset=dataset,
                variant=variant,
                strategy=strategy,
                seeds=seed_count,
                tau=grid.tau,
                run=run,
                steps=traj.num_steps,
                final_active=traj.final_active,
                non_seed_active=traj.non_seed_active,
                proportion=traj.activation_proportion(),
                complete_by_seeding=traj.complete_by_seeding,
            )
        )
    return records


def run_experiment(
    h: Hypergraph,
    grid: ExperimentGrid,
    runs: int,
    master_seed: int,
    dataset: str = "",
    jobs: int = 1,
    prepared: PreparedDynamics | None = None,
) -> list[RunRecord]:
    """All (cell, run) results in deterministic cell-major order."""
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    if prepared is None:
        prepared = prepare_dynamics(h)
    tasks = [
        (prepared, grid, idx, cell, runs, master_seed, dataset)
        for idx, cell in enumerate(grid.cells())
    ]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_cell = list(pool.map(_run_cell, tasks))
    else:
        per_cell = [_run_cell(t) for t in tasks]
    return [rec for cell_records in per_cell for rec in cell_records]


def summarize(records: Sequence[RunRecord]) -> list[CellSummary]:
    groups: dict[tuple, list[RunRecord]] = {}
    for rec in records:
        groups.setdefault((rec.dataset, rec.variant, rec.strategy, rec.seeds, rec.tau), []).append(rec)
    summaries = []
    for (dataset, variant, strategy, seeds, tau), recs in groups.items():
        props = [r.proportion for r in recs]
        n = len(props)
        mean = sum(props) / n
        if n > 1:
            var = sum((p - mean) ** 2 for p in props) / (n - 1)
            stderr = sqrt(var / n)
        else:
            stderr = 0.0
        summaries.append(
            CellSummary(
                dataset=dataset,
                variant=variant,
                strategy=strategy,
                seeds=seeds,
                tau=tau,
                runs=n,
                mean_proportion=mean,
                stderr=stderr,
            )
        )
    return summaries


@dataclass(frozen=True)
class RandomizedComparison:
    """Per-cell mean activation on the observed hypergraph vs the average
    over layer-randomized samples, and their difference."""

    dataset: str
    variant: str
    strategy: str
    seeds: int
    tau: int
    observed_mean: float
    randomized_mean: float
    difference: float


def randomized_comparison(
    h: Hypergraph,
    grid: ExperimentGrid,
    runs: int,
    samples: int,
    master_seed: int,
    dataset: str = "",
    jobs: int = 1,
) -> tuple[list[RunRecord], list[RandomizedComparison]]:
    """Run the grid on the observed hypergraph and on ``samples`` layer
    randomizations; returns observed records plus per-cell comparisons."""
    observed_records = run_experiment(h, grid, runs, master_seed, dataset=dataset, jobs=jobs)
    observed = {
        (s.variant, s.strategy, s.seeds): s.mean_proportion for s in summarize(observed_records)
    }
    randomized_sums: dict[tuple, float] = {key: 0.0 for key in observed}
    for i in range(samples):
        randomized = layer_randomize(h, spawn_rng(master_seed, "layer-randomization", i))
        records = run_experiment(
            randomized, grid, runs, master_seed, dataset=f"{dataset}[rand{i}]", jobs=jobs
        )
        for s in summarize(records):
            randomized_sums[(s.variant, s.strategy, s.seeds)] += s.mean_proportion
    comparisons = []
    for variant, strategy, seed_count in grid.cells():
        key = (variant, strategy, seed_count)
        rand_mean = randomized_sums[key] / samples
        comparisons.append(
            RandomizedComparison(
                dataset=dataset,
                variant=variant,
                strategy=strategy,
                seeds=seed_count,
                tau=grid.tau,
                observed_mean=observed[key],
                randomized_mean=rand_mean,
                difference=observed[key] - rand_mean,
            )
        )
    return observed_records, comparisons


CSV_COLUMNS = (
    "dataset",
    "variant",
    "strategy",
    "seeds",
    "tau",
    "run",
    "steps",
    "final_active",
    "non_seed_active",
    "proportion",
)


def write_records_csv(records: Sequence[RunRecord], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow(
                [
                    rec.dataset,
                    rec.variant,
                    rec.strategy,
                    rec.seeds,
                    rec.tau,
                    rec.run,
                    rec.steps,
                    rec.final_active,
                    rec.non_seed_active,
                    f"{rec.proportion:.10g}",
                ]
            )
