"""Hamming graphs of solution spaces and the median-graph check.

The Hamming graph of a solution space joins two states when they differ in
exactly one variable. Solution sets of two-variable clause systems form
median graphs: every vertex triple has a unique vertex simultaneously on
shortest paths between all three pairs. The check here is the direct triple
scan over the distance matrix, capped at desk scale by design.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .config import DEFAULTS
from .constraints import SolutionSpace
from .errors import CapacityError, ValidationError


@dataclass(frozen=True)
class HammingGraph:
    """Simple undirected graph over basis indices with bitstring vertex labels."""

    labels: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        norm = sorted({(min(u, v), max(u, v)) for u, v in self.edges})
        if any(u == v for u, v in norm):
            raise ValidationError("self-loops are not allowed")
        if norm and norm[-1][1] >= len(self.labels):
            raise ValidationError("edge endpoint beyond vertex count")
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.vertex_count, self.vertex_count), dtype=np.uint8)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        return a


@dataclass(frozen=True)
class MedianVerdict:
    """Outcome of the median test; witness is a violating triple when false."""

    is_median: bool
    witness: tuple[int, int, int] | None = None
    median_count: int | None = None


def build_hamming_graph(space: SolutionSpace) -> HammingGraph:
    """Graph with exactly the Hamming-distance-1 edges of the space."""
    edges = []
    for u, state in enumerate(space.states):
        for pos in range(space.num_vars):
            flipped = state[:pos] + ("1" if state[pos] == "0" else "0") + state[pos + 1 :]
            v = space.index_of.get(flipped)
            if v is not None and u < v:
                edges.append((u, v))
    return HammingGraph(space.states, tuple(edges))


def all_pairs_distances(graph: HammingGraph) -> np.ndarray:
    """Symmetric integer distance matrix; unreachable pairs are marked -1."""
    n = graph.vertex_count
    if not graph.edges:
        d = np.full((n, n), -1, dtype=np.int64)
        np.fill_diagonal(d, 0)
        return d
    rows = [u for u, v in graph.edges] + [v for u, v in graph.edges]
    cols = [v for u, v in graph.edges] + [u for u, v in graph.edges]
    adj = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    d = shortest_path(adj, method="D", unweighted=True)
    out = np.where(np.isinf(d), -1, d).astype(np.int64)
    return out


def is_connected(graph: HammingGraph) -> bool:
    return not np.any(all_pairs_distances(graph) < 0)


def is_median_graph(graph: HammingGraph, cap: int = DEFAULTS.median_cap) -> MedianVerdict:
    """Triple-scan median check with early exit on the first violating triple.

    Raises
    ------
    CapacityError
        If the vertex count exceeds ``cap``.
    ValidationError
        If the graph is disconnected (median graphs are connected).
    """
    n = graph.vertex_count
    if n > cap:
        raise CapacityError(f"vertex count {n} exceeds median-scan cap {cap}")
    d = all_pairs_distances(graph)
    if np.any(d < 0):
        raise ValidationError("median test requires a connected graph")
    # interval membership: on_geo[x][y, m] is True when m lies on a shortest
    # x..y path; built per anchor vertex to keep memory at O(V^2)
    for u in range(n):
        on_u = d[u][None, :] + d == d[u][:, None]
        for v in range(u + 1, n):
            i_uv = on_u[v]
            on_v = d[v][None, :] + d == d[v][:, None]
            cand = on_u[v + 1 :] & on_v[v + 1 :] & i_uv[None, :]
            counts = cand.sum(axis=1)
            bad = np.nonzero(counts != 1)[0]
            if bad.size:
                w = int(bad[0]) + v + 1
                return MedianVerdict(False, (u, v, w), int(counts[bad[0]]))
    return MedianVerdict(True)


def write_edge_list(graph: HammingGraph, path: str | Path) -> None:
    Path(path).write_text("".join(f"{u} {v}\n" for u, v in graph.edges))


def write_labels(graph: HammingGraph, path: str | Path) -> None:
    Path(path).write_text("".join(f"{i} {s}\n" for i, s in enumerate(graph.labels)))
