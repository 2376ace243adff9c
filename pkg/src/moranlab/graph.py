"""Undirected simple graphs, G(n,p) generation, degree classification, and thresholds.

Graphs are immutable after construction: sorted adjacency lists plus a CSR view
shared with the simulation kernels. Classification splits vertices into the
very-low-degree set S0 (d(v) <= np/10) and the degree-atypical set S1
(d(v) outside [(1-eps)np, (1+eps)np]).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ParameterError

UNREACHABLE = -1  # sentinel for infinite distance in bfs_distances


class Graph:
    """Immutable undirected simple graph with 0-indexed vertices.

    Invariants enforced at construction: no self-loops, no duplicate edges,
    symmetric sorted neighbor lists, edge_count == sum(degrees)/2.
    """

    __slots__ = ("n", "edge_count", "indptr", "indices", "degrees", "_connected")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 1:
            raise ParameterError(f"vertex count must be >= 1, got {n}")
        edge_arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if edge_arr.size:
            if edge_arr.min() < 0 or edge_arr.max() >= n:
                raise ParameterError("edge endpoint out of range")
            if np.any(edge_arr[:, 0] == edge_arr[:, 1]):
                raise ParameterError("self-loops are not allowed")
            lo = np.minimum(edge_arr[:, 0], edge_arr[:, 1])
            hi = np.maximum(edge_arr[:, 0], edge_arr[:, 1])
            keys = lo * n + hi
            if len(np.unique(keys)) != len(keys):
                raise ParameterError("duplicate edges are not allowed")
            heads = np.concatenate([lo, hi])
            tails = np.concatenate([hi, lo])
            order = np.lexsort((tails, heads))
            heads, tails = heads[order], tails[order]
        else:
            heads = tails = np.empty(0, dtype=np.int64)
        self.n = int(n)
        self.edge_count = int(len(heads) // 2)
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(self.indptr, heads + 1, 1)
        np.cumsum(self.indptr, out=self.indptr)
        self.indices = tails.astype(np.int32)
        self.degrees = np.diff(self.indptr).astype(np.int64)
        self._connected: bool | None = None

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.degrees[v])

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < len(nb) and nb[i] == v)

    def is_connected(self) -> bool:
        if self._connected is None:
            self._connected = bool(self.n == 1 or np.all(bfs_distances(self, 0) != UNREACHABLE))
        return self._connected

    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.n):
            for u in self.neighbors(v):
                if v < u:
                    out.append((v, int(u)))
        return out

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


@dataclass(frozen=True)
class ThresholdParams:
    """Degree-classification thresholds derived from nominal (n, p)."""

    eps: float
    omega0: float
    n1: float
    np_nominal: float
    s0_cutoff: float
    i_eps: tuple[float, float]

    def omega0_clamped(self, floor: float = 3.0) -> float:
        """omega0 with the distance/cycle-length floor applied (small-n regime)."""
        return max(self.omega0, floor)

    def to_json_dict(self) -> dict:
        return {
            "eps": self.eps,
            "omega0": self.omega0,
            "n1": self.n1,
            "s0_cutoff": self.s0_cutoff,
        }


@dataclass(frozen=True)
class VertexClasses:
    """S0 (very low degree) and S1 (degree-atypical) vertex sets."""

    s0: frozenset
    s1: frozenset

    def s0_mask(self, n: int) -> np.ndarray:
        mask = np.zeros(n, dtype=bool)
        mask[list(self.s0)] = True
        return mask

    def s1_mask(self, n: int) -> np.ndarray:
        mask = np.zeros(n, dtype=bool)
        mask[list(self.s1)] = True
        return mask


def generate_gnp(n: int, p: float, seed: int) -> Graph:
    """Sample G(n,p): each of the C(n,2) possible edges appears independently.

    Deterministic for fixed (n, p, seed). Candidate pairs are enumerated with
    geometric skipping, so the expected work is O(n^2 p) rather than O(n^2).
    """
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"edge probability must lie in [0,1], got {p}")
    if n < 1:
        raise ParameterError(f"vertex count must be >= 1, got {n}")
    edges: list[tuple[int, int]] = []
    if p == 1.0:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif p > 0.0:
        rng = np.random.default_rng(seed)
        log1mp = math.log1p(-p)
        total = n * (n - 1) // 2
        k = -1
        while True:
            u = rng.random()
            # skip a geometric number of non-edges
            k += 1 + int(math.log(u) / log1mp) if u > 0.0 else total
            if k >= total:
                break
            # invert the linear pair index: row i owns n-1-i consecutive slots
            i = int((2 * n - 1 - math.sqrt((2 * n - 1) ** 2 - 8 * k)) / 2)
            start = i * (2 * n - i - 1) // 2
            while start > k:  # guard float rounding in the row inversion
                i -= 1
                start = i * (2 * n - i - 1) // 2
            while start + (n - 1 - i) <= k:
                start += n - 1 - i
                i += 1
            j = i + 1 + (k - start)
            edges.append((i, j))
    return Graph(n, edges)


def derive_thresholds(n: int, p: float, eps_override: float | None = None) -> ThresholdParams:
    """Derive eps, omega0, n1 and the S0/S1 cutoffs for nominal (n, p).

    The default eps is min(1, 1/ln ln ln n), which clamps to 1 at any size
    where the triple log is not both defined and > 1; pass eps_override for a
    non-degenerate classification at small n. Requires np > 1 so log(np) > 0.
    """
    np_nominal = n * p
    if np_nominal <= 1.0:
        raise ParameterError(f"np must exceed 1 (got {np_nominal:g}); log(np) would be non-positive")
    if eps_override is not None:
        if not 0.0 < eps_override <= 1.0:
            raise ParameterError(f"eps must lie in (0,1], got {eps_override}")
        eps = float(eps_override)
    else:
        eps = 1.0
        if n > 15:  # ln ln n defined and positive
            lll = math.log(math.log(math.log(n)))
            if lll > 0.0:
                eps = min(1.0, 1.0 / lll)
    omega0 = eps * eps * np_nominal / (100.0 * math.log(np_nominal))
    n1 = n - n / math.sqrt(np_nominal)
    return ThresholdParams(
        eps=eps,
        omega0=omega0,
        n1=n1,
        np_nominal=np_nominal,
        s0_cutoff=np_nominal / 10.0,
        i_eps=((1.0 - eps) * np_nominal, (1.0 + eps) * np_nominal),
    )


def classify(graph: Graph, params: ThresholdParams) -> VertexClasses:
    """Exact S0/S1 membership from degrees; a pure function of the degree sequence."""
    d = graph.degrees
    lo, hi = params.i_eps
    s0 = np.flatnonzero(d <= params.s0_cutoff)
    s1 = np.flatnonzero((d < lo) | (d > hi))
    return VertexClasses(s0=frozenset(int(v) for v in s0), s1=frozenset(int(v) for v in s1))


def bfs_distances(graph: Graph, source: int, max_depth: int | None = None) -> np.ndarray:
    """Hop counts from source; UNREACHABLE (-1) marks vertices beyond reach or max_depth."""
    if not 0 <= source < graph.n:
        raise ParameterError(f"source {source} out of range for n={graph.n}")
    dist = np.full(graph.n, UNREACHABLE, dtype=np.int64)
    dist[source] = 0
    frontier = [source]
    depth = 0
    indptr, indices = graph.indptr, graph.indices
    while frontier:
        if max_depth is not None and depth >= max_depth:
            break
        depth += 1
        nxt = []
        for v in frontier:
            for u in indices[indptr[v]:indptr[v + 1]]:
                if dist[u] == UNREACHABLE:
                    dist[u] = depth
                    nxt.append(int(u))
        frontier = nxt
    return dist


def save_edge_list(graph: Graph, path: str) -> None:
    """Write the plain-text edge list: header "n m", then one "u v" line per edge."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{graph.n} {graph.edge_count}\n")
        for u, v in graph.edges():
            fh.write(f"{u} {v}\n")


def load_edge_list(path: str) -> Graph:
    """Read a graph written by save_edge_list."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ParameterError(f"malformed edge-list header in {path!r}")
        n, m = int(header[0]), int(header[1])
        edges = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            a, b = line.split()
            edges.append((int(a), int(b)))
    if len(edges) != m:
        raise ParameterError(f"edge-list {path!r} declares {m} edges but contains {len(edges)}")
    return Graph(n, edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ParameterError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """Hub-and-spoke graph; vertex 0 is the hub."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def from_edges(n: int, edges: Sequence[tuple[int, int]]) -> Graph:
    return Graph(n, edges)
