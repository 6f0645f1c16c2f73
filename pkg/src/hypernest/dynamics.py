"""Hyperedge contagion processes.

The main process spreads activation upward through containment: an
inactive hyperedge activates once enough of the hyperedges one size below
it that it contains are active. Individual nodes matter only as explicit
1-node hyperedges ("strict"), or additionally as virtual 1-node hyperedges
influencing 2-node hyperedges ("non-strict", where activating a hyperedge
also activates its member nodes). A relaxed variant lets each hyperedge be
influenced by the largest-size hyperedges it actually contains, whatever
that size is. A conventional node-counting threshold process is included
for comparison.

All processes run in synchronous rounds and are deterministic once the
seed hyperedges are fixed; activation is monotone, so a run stops at the
first round with no change (or after ``max_steps`` rounds).
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .hypergraph import Hypergraph
from .linegraph import HyperedgeDag
from .rng import RngLike, as_rng

VARIANTS = ("strict", "non-strict", "empirical-adjacent", "threshold")
STRATEGIES = ("uniform", "size-biased", "inverse-size-biased", "smallest-first")


@dataclass(frozen=True)
class DynamicsConfig:
    """Knobs of one simulation run.

    ``tau`` is the activation threshold: a hyperedge needs at least that
    many active influencers (``comparison`` flips it to strictly more
    than). For the threshold process ``tau`` is instead the number of
    member nodes allowed to still be inactive.
    """

    variant: str = "strict"
    tau: int = 1
    max_steps: int = 25
    seed_strategy: str = "uniform"
    seed_count: int = 1
    rng_seed: int | None = None
    comparison: str = ">="

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.seed_strategy not in STRATEGIES:
            raise ValueError(f"unknown seed strategy {self.seed_strategy!r}")
        if self.comparison not in (">=", ">"):
            raise ValueError(f"comparison must be '>=' or '>', got {self.comparison!r}")
        if self.tau < 0:
            raise ValueError(f"tau must be >= 0, got {self.tau}")
        if self.max_steps < 1:
            raise ValueError(f"max_steps must be >= 1, got {self.max_steps}")
        if self.seed_count < 0:
            raise ValueError(f"seed_count must be >= 0, got {self.seed_count}")


@dataclass
class Trajectory:
    """Outcome of one run: per-round newly activated hyperedge ids (round 0
    holds the seeds) and the final activation vectors."""

    steps: list[list[int]]
    edge_active: list[bool]
    node_active: list[bool]

    @property
    def num_steps(self) -> int:
        return len(self.steps) - 1

    @property
    def seed_count(self) -> int:
        return len(self.steps[0])

    @property
    def final_active(self) -> int:
        return sum(self.edge_active)

    @property
    def non_seed_active(self) -> int:
        return self.final_active - self.seed_count

    @property
    def complete_by_seeding(self) -> bool:
        """True when every hyperedge was a seed, leaving nothing to activate."""
        return self.seed_count == len(self.edge_active)

    def activation_proportion(self) -> float:
        """Activated share of the non-seed hyperedges; 1.0 by convention when
        everything was seeded."""
        remaining = len(self.edge_active) - self.seed_count
        if remaining == 0:
            return 1.0
        return self.non_seed_active / remaining

    def to_json_dict(self) -> dict:
        return {"steps": self.steps, "final_active": self.final_active}

    def write_json(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict()) + "\n")


def select_seeds(h: Hypergraph, strategy: str, count: int, rng: RngLike) -> list[int]:
    """Choose ``count`` distinct seed hyperedges.

    uniform: uniformly at random. size-biased / inverse-size-biased:
    successive draws proportional to size or its inverse (realized with
    exponential sort keys, which is distribution-identical). smallest-first:
    ascending size with ties in random order.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown seed strategy {strategy!r}")
    if not 0 <= count <= h.m:
        raise ValueError(f"seed count {count} outside 0..{h.m}")
    gen = as_rng(rng)
    if strategy == "uniform":
        picked = gen.choice(h.m, size=count, replace=False)
    elif strategy == "smallest-first":
        shuffled = gen.permutation(h.m)
        order = shuffled[np.argsort(h.sizes[shuffled], kind="stable")]
        picked = order[:count]
    else:
        weights = h.sizes.astype(float)
        if strategy == "inverse-size-biased":
            weights = 1.0 / weights
        keys = gen.standard_exponential(h.m) / weights
        picked = np.argsort(keys, kind="stable")[:count]
    return sorted(int(i) for i in picked)


def _meets(count: int, config: DynamicsConfig) -> bool:
    return count >= config.tau if config.comparison == ">=" else count > config.tau


def _activate_nodes(h: Hypergraph, edge_ids: Iterable[int], node_active: list[bool]) -> list[int]:
    newly = []
    for eid in edge_ids:
        for u in h.edges[eid]:
            if not node_active[u]:
                node_active[u] = True
                newly.append(u)
    return newly


def _check_seeds(h: Hypergraph, seeds: Sequence[int]) -> list[int]:
    ids = sorted(set(int(s) for s in seeds))
    if ids and not 0 <= ids[0] <= ids[-1] < h.m:
        raise ValueError("seed ids out of range")
    return ids


def simulate_encapsulation(
    h: Hypergraph,
    dag: HyperedgeDag,
    config: DynamicsConfig,
    seeds: Sequence[int],
    seed_nodes: Sequence[int] = (),
    debug_checks: bool = False,
) -> Trajectory:
    """Containment contagion over the adjacent-size DAG.

    ``dag`` must be restricted to containment edges with size difference 1.
    In the non-strict variant every active node counts toward the 2-node
    hyperedges it belongs to, and activating a hyperedge activates its
    member nodes; otherwise nodes never feed back. ``seed_nodes`` may
    pre-activate nodes without seeding any hyperedge (non-strict only).
    """
    if config.variant not in ("strict", "non-strict"):
        raise ValueError(f"variant {config.variant!r} is not handled by this engine")
    if config.tau < 1:
        raise ValueError("containment contagion needs tau >= 1")
    non_strict = config.variant == "non-strict"
    m = h.m
    sizes = h.sizes
    edge_active = [False] * m
    node_active = [False] * h.n
    sub_count = [0] * m
    node_count = [0] * m if non_strict else None
    pair_edges: list[list[int]] | None = None
    if non_strict:
        pair_edges = [[] for _ in range(h.n)]
        for eid in range(m):
            if sizes[eid] == 2:
                for u in h.edges[eid]:
                    pair_edges[u].append(eid)

    new_edges = _check_seeds(h, seeds)
    for eid in new_edges:
        edge_active[eid] = True
    new_nodes = _activate_nodes(h, new_edges, node_active)
    for u in seed_nodes:
        if not node_active[u]:
            node_active[u] = True
            new_nodes.append(u)
    steps = [list(new_edges)]

    for _ in range(config.max_steps):
        touched: set[int] = set()
        for beta in new_edges:
            for alpha in dag.in_adj[beta]:
                sub_count[alpha] += 1
                if not edge_active[alpha]:
                    touched.add(alpha)
        if non_strict:
            for u in new_nodes:
                for eid in pair_edges[u]:
                    node_count[eid] += 1
                    if not edge_active[eid]:
                        touched.add(eid)
        if debug_checks:
            # counts now cover exactly the activations of all earlier rounds
            _assert_counts_consistent(
                h, dag, edge_active, node_active, sub_count, node_count, non_strict
            )
        new_edges = []
        for alpha in sorted(touched):
            influence = (
                node_count[alpha] if non_strict and sizes[alpha] == 2 else sub_count[alpha]
            )
            if _meets(influence, config):
                edge_active[alpha] = True
                new_edges.append(alpha)
        new_nodes = _activate_nodes(h, new_edges, node_active) if non_strict else []
        if not new_edges:
            break
        steps.append(new_edges)
    return Trajectory(steps=steps, edge_active=edge_active, node_active=node_active)


def _assert_counts_consistent(h, dag, edge_active, node_active, sub_count, node_count, non_strict):
    for alpha in range(h.m):
        expect = sum(1 for b in dag.out_adj[alpha] if edge_active[b])
        assert sub_count[alpha] == expect, (alpha, sub_count[alpha], expect)
    if non_strict:
        for alpha in range(h.m):
            if h.sizes[alpha] == 2:
                expect = sum(1 for u in h.edges[alpha] if node_active[u])
                assert node_count[alpha] == expect, (alpha, node_count[alpha], expect)


def simulate_encapsulation_empirical_adjacent(
    h: Hypergraph,
    dag: HyperedgeDag,
    config: DynamicsConfig,
    seeds: Sequence[int],
) -> Trajectory:
    """Relaxed containment contagion over the full containment DAG: each
    hyperedge is influenced only by contained hyperedges of the largest
    size it actually contains, wherever that falls below its own size."""
    if config.variant != "empirical-adjacent":
        raise ValueError(f"variant {config.variant!r} is not handled by this engine")
    if config.tau < 1:
        raise ValueError("containment contagion needs tau >= 1")
    m = h.m
    sizes = h.sizes
    influence_size = [
        max((int(sizes[b]) for b in nbrs), default=0) for nbrs in dag.out_adj
    ]
    edge_active = [False] * m
    node_active = [False] * h.n
    sub_count = [0] * m

    new_edges = _check_seeds(h, seeds)
    for eid in new_edges:
        edge_active[eid] = True
    _activate_nodes(h, new_edges, node_active)
    steps = [list(new_edges)]

    for _ in range(config.max_steps):
        touched: set[int] = set()
        for beta in new_edges:
            for alpha in dag.in_adj[beta]:
                if int(sizes[beta]) == influence_size[alpha]:
                    sub_count[alpha] += 1
                    if not edge_active[alpha]:
                        touched.add(alpha)
        new_edges = []
        for alpha in sorted(touched):
            if _meets(sub_count[alpha], config):
                edge_active[alpha] = True
                new_edges.append(alpha)
        _activate_nodes(h, new_edges, node_active)
        if not new_edges:
            break
        steps.append(new_edges)
    return Trajectory(steps=steps, edge_active=edge_active, node_active=node_active)


def simulate_threshold(
    h: Hypergraph,
    config: DynamicsConfig,
    seeds: Sequence[int],
    seed_nodes: Sequence[int] = (),
) -> Trajectory:
    """Node-counting threshold contagion: an inactive hyperedge activates
    once at most ``tau`` of its member nodes are still inactive, and an
    activated hyperedge activates all of its member nodes."""
    m = h.m
    sizes = h.sizes
    if m and config.tau >= int(sizes.min()):
        warnings.warn(
            f"tau={config.tau} >= smallest hyperedge size {int(sizes.min())}: "
            "such hyperedges self-activate with no active nodes",
            stacklevel=2,
        )
    edge_active = [False] * m
    node_active = [False] * h.n
    node_count = [0] * m

    new_edges = _check_seeds(h, seeds)
    for eid in new_edges:
        edge_active[eid] = True
    new_nodes = _activate_nodes(h, new_edges, node_active)
    for u in seed_nodes:
        if not node_active[u]:
            node_active[u] = True
            new_nodes.append(u)
    steps = [list(new_edges)]
    # hyperedges no larger than tau need no active nodes at all
    degenerate = [eid for eid in range(m) if sizes[eid] <= config.tau and not edge_active[eid]]

    for step in range(config.max_steps):
        touched: set[int] = set(degenerate) if step == 0 else set()
        for u in new_nodes:
            for eid in h.memberships[u]:
                node_count[eid] += 1
                if not edge_active[eid]:
                    touched.add(int(eid))
        new_edges = []
        for alpha in sorted(touched):
            if not edge_active[alpha] and node_count[alpha] >= int(sizes[alpha]) - config.tau:
                edge_active[alpha] = True
                new_edges.append(alpha)
        new_nodes = _activate_nodes(h, new_edges, node_active)
        if not new_edges:
            break
        steps.append(new_edges)
    return Trajectory(steps=steps, edge_active=edge_active, node_active=node_active)
