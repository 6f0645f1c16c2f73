"""Path structure of containment DAGs: transitive reduction and the heights
of paths starting from root hyperedges.

Long root-to-leaf paths in the reduced DAG mean containment is deep (a
chain of intermediate hyperedges of every size), while short paths mean it
only links two sizes at a time.
"""

from __future__ import annotations

import csv
from collections import deque
from dataclasses import dataclass
from pathlib import Path

from .hypergraph import Hypergraph
from .linegraph import HyperedgeDag


def topological_order(out_adj: list[list[int]]) -> list[int]:
    """Kahn's algorithm; raises if the graph has a cycle."""
    n = len(out_adj)
    in_deg = [0] * n
    for nbrs in out_adj:
        for b in nbrs:
            in_deg[b] += 1
    queue = deque(i for i in range(n) if in_deg[i] == 0)
    order: list[int] = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in out_adj[v]:
            in_deg[w] -= 1
            if in_deg[w] == 0:
                queue.append(w)
    if len(order) != n:
        raise ValueError("graph contains a cycle; expected a DAG")
    return order


@dataclass
class ReducedDag:
    """Transitively reduced DAG plus the per-root path statistics.

    ``heights[r]`` is the maximum path length (edge count) reachable from
    root r in the reduced DAG; ``dag_degree`` keeps out-degrees of the
    unreduced DAG, which is how a root's containment breadth is measured.
    """

    out_adj: list[list[int]]
    root_ids: list[int]
    heights: dict[int, int]
    dag_degree: list[int]

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.out_adj)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(i, j) for i, nbrs in enumerate(self.out_adj) for j in nbrs}


def transitive_reduction(dag: HyperedgeDag) -> ReducedDag:
    """Remove every edge implied by a longer path; unique for a DAG.

    An edge (u, w) is redundant exactly when w is a descendant of another
    out-neighbor of u, so each vertex keeps the out-neighbors not reachable
    through its siblings. Descendant sets are accumulated in reverse
    topological order.
    """
    out_adj = dag.out_adj
    n = len(out_adj)
    order = topological_order(out_adj)
    descendants: list[frozenset[int]] = [frozenset()] * n
    for v in reversed(order):
        if out_adj[v]:
            acc: set[int] = set(out_adj[v])
            for w in out_adj[v]:
                acc |= descendants[w]
            descendants[v] = frozenset(acc)
    reduced: list[list[int]] = [[] for _ in range(n)]
    for u in range(n):
        children = out_adj[u]
        if len(children) <= 1:
            reduced[u] = list(children)
            continue
        indirect: set[int] = set()
        for v in children:
            indirect |= descendants[v]
        reduced[u] = [w for w in children if w not in indirect]

    in_deg = [0] * n
    for nbrs in out_adj:
        for b in nbrs:
            in_deg[b] += 1
    roots = [v for v in range(n) if in_deg[v] == 0 and out_adj[v]]

    # longest path from every vertex in the reduced DAG, leaves upward
    longest = [0] * n
    for v in reversed(order):
        if reduced[v]:
            longest[v] = 1 + max(longest[w] for w in reduced[v])
    heights = {r: longest[r] for r in roots}
    dag_degree = [len(nbrs) for nbrs in out_adj]
    return ReducedDag(out_adj=reduced, root_ids=roots, heights=heights, dag_degree=dag_degree)


@dataclass(frozen=True)
class RootHeightRecord:
    root_id: int
    size: int
    dag_degree: int
    max_height: int
    norm_degree: float
    norm_height: float


@dataclass
class RootedHeightReport:
    records: list[RootHeightRecord]

    def height_distribution(self) -> dict[int, int]:
        dist: dict[int, int] = {}
        for rec in self.records:
            dist[rec.max_height] = dist.get(rec.max_height, 0) + 1
        return dict(sorted(dist.items()))

    def max_height(self) -> int:
        return max((rec.max_height for rec in self.records), default=0)

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["root_id", "size", "dag_degree", "max_height", "norm_degree", "norm_height"]
            )
            for rec in self.records:
                writer.writerow(
                    [
                        rec.root_id,
                        rec.size,
                        rec.dag_degree,
                        rec.max_height,
                        f"{rec.norm_degree:.6g}",
                        f"{rec.norm_height:.6g}",
                    ]
                )


def max_root_out_degree(size: int, singletons_present: bool) -> int:
    """Largest possible containment out-degree of a size-``size`` hyperedge:
    the number of proper non-empty subsets, excluding single nodes when the
    dataset has no 1-node hyperedges at all."""
    full = 2**size - 2
    return full if singletons_present else full - size


def rooted_heights(reduced: ReducedDag, h: Hypergraph) -> RootedHeightReport:
    """Per-root (containment breadth, maximum path height) pairs, raw and
    normalized by their maxima; the height of a size-k root can never
    exceed k - 1 since each step descends at least one size."""
    singletons = h.has_singletons()
    records = []
    for r in reduced.root_ids:
        size = int(h.sizes[r])
        degree = reduced.dag_degree[r]
        height = reduced.heights[r]
        max_deg = max_root_out_degree(size, singletons)
        norm_degree = degree / max_deg if max_deg > 0 else float("nan")
        norm_height = height / (size - 1) if size > 1 else float("nan")
        records.append(
            RootHeightRecord(
                root_id=r,
                size=size,
                dag_degree=degree,
                max_height=height,
                norm_degree=norm_degree,
                norm_height=norm_height,
            )
        )
    return RootedHeightReport(records=records)
