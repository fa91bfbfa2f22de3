"""Undirected simple graphs and the structural tree-likeness panel.

The panel collects eight summaries chosen as tractable proxies for how
close a network is to a tree: a perfect tree has zero circuit rank, zero
clustering, long paths, and betweenness concentrated on internal nodes.
Conventions for disconnected graphs (common for sparse Euclidean
ensembles) are documented on each function.
"""

import heapq
import math
from collections import deque
from dataclasses import dataclass

import numpy as np


class Graph:
    """Immutable undirected simple graph over nodes 0..n-1."""

    __slots__ = ("n", "edges", "_adj", "_neighbors")

    def __init__(self, n, edges):
        if n < 0:
            raise ValueError("node count must be nonnegative")
        self.n = int(n)
        seen = set()
        for i, j in edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self-loop at node {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i},{j}) outside 0..{n - 1}")
            seen.add((i, j) if i < j else (j, i))
        self.edges = np.array(sorted(seen), dtype=np.int64).reshape(-1, 2)
        self._adj = None
        self._neighbors = None

    @property
    def m(self):
        return self.edges.shape[0]

    @property
    def density(self):
        pairs = self.n * (self.n - 1) // 2
        return self.m / pairs if pairs else 0.0

    def adjacency(self):
        """Dense symmetric uint8 adjacency with zero diagonal (cached)."""
        if self._adj is None:
            a = np.zeros((self.n, self.n), dtype=np.uint8)
            if self.m:
                a[self.edges[:, 0], self.edges[:, 1]] = 1
                a[self.edges[:, 1], self.edges[:, 0]] = 1
            self._adj = a
        return self._adj

    def neighbors(self):
        """Adjacency lists as a tuple of sorted int lists (cached)."""
        if self._neighbors is None:
            nbrs = [[] for _ in range(self.n)]
            for i, j in self.edges:
                nbrs[i].append(int(j))
                nbrs[j].append(int(i))
            self._neighbors = tuple(sorted(v) for v in nbrs)
        return self._neighbors

    def degrees(self):
        deg = np.zeros(self.n, dtype=np.int64)
        if self.m:
            np.add.at(deg, self.edges[:, 0], 1)
            np.add.at(deg, self.edges[:, 1], 1)
        return deg

    def edge_set(self):
        return {(int(i), int(j)) for i, j in self.edges}

    @classmethod
    def from_adjacency(cls, a):
        a = np.asarray(a)
        i, j = np.nonzero(np.triu(a, k=1))
        return cls(a.shape[0], zip(i.tolist(), j.tolist()))

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges.shape == other.edges.shape
            and bool(np.all(self.edges == other.edges))
        )

    def __hash__(self):
        return hash((self.n, self.edges.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class MetricPanel:
    """The structural summary panel plus edge density."""

    circuit_rank: int
    clustering: float
    mean_betweenness: float
    mean_closeness: float
    mean_eigenvector: float
    mean_path_length: float
    modularity: float
    edge_density: float

    CSV_COLUMNS = (
        "n", "m", "density", "circuit_rank", "clustering", "mean_betweenness",
        "mean_closeness", "mean_eigenvector", "mean_path_length", "modularity",
    )

    def csv_row(self, g: Graph):
        return [
            g.n, g.m, g.density, self.circuit_rank, self.clustering,
            self.mean_betweenness, self.mean_closeness, self.mean_eigenvector,
            self.mean_path_length, self.modularity,
        ]


def connected_components(g: Graph):
    """Node partition into components, each sorted, ordered by first node."""
    nbrs = g.neighbors()
    seen = [False] * g.n
    parts = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        q = deque([s])
        while q:
            v = q.popleft()
            for w in nbrs[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    q.append(w)
        parts.append(sorted(comp))
    return parts


def circuit_rank(g: Graph) -> int:
    """m - n + k: the number of independent cycles; 0 exactly on forests."""
    return g.m - g.n + len(connected_components(g))


def triangle_count(g: Graph) -> int:
    """Number of triangles, each counted once."""
    nbrs = [set(v) for v in g.neighbors()]
    count = 0
    for i, j in g.edges:
        common = nbrs[int(i)] & nbrs[int(j)]
        count += sum(1 for k in common if k > j)
    return count


def global_clustering(g: Graph) -> float:
    """3 * triangles / connected triples; 0 when no triples exist."""
    deg = g.degrees()
    triples = int(np.sum(deg * (deg - 1) // 2))
    if triples == 0:
        return 0.0
    return 3.0 * triangle_count(g) / triples


def _bfs_sources(g: Graph):
    """Brandes-style BFS from every source.

    Yields (source, order, sigma, preds, dist) where sigma counts
    shortest paths and preds are shortest-path predecessors.
    """
    nbrs = g.neighbors()
    n = g.n
    for s in range(n):
        dist = [-1] * n
        sigma = [0] * n
        preds = [[] for _ in range(n)]
        dist[s] = 0
        sigma[s] = 1
        order = []
        q = deque([s])
        while q:
            v = q.popleft()
            order.append(v)
            dv = dist[v]
            sv = sigma[v]
            for w in nbrs[v]:
                if dist[w] < 0:
                    dist[w] = dv + 1
                    q.append(w)
                if dist[w] == dv + 1:
                    sigma[w] += sv
                    preds[w].append(v)
        yield s, order, sigma, preds, dist


def _centrality_sweep(g: Graph):
    """One pass of BFS work shared by betweenness, closeness, path length.

    Returns (betweenness accumulation over ordered pairs, per-node sum of
    distances to reachable nodes, per-node reachable count including self).
    """
    n = g.n
    acc = np.zeros(n)
    dist_sum = np.zeros(n)
    reach = np.zeros(n, dtype=np.int64)
    for s, order, sigma, preds, dist in _bfs_sources(g):
        delta = [0.0] * n
        for w in reversed(order):
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                acc[w] += delta[w]
        d = np.array(dist)
        mask = d > 0
        dist_sum[s] = d[mask].sum()
        reach[s] = mask.sum() + 1
    return acc, dist_sum, reach


def betweenness_mean(g: Graph) -> float:
    """Mean normalized betweenness.

    Per node: unordered source/target pairs (s < t, both != i) weighted by
    the fraction of s-t shortest paths through i, divided by (n-1)(n-2).
    The path graph 1-2-3 gives the center 0.5 and a mean of 1/6.
    """
    acc, _, _ = _centrality_sweep(g)
    return _betweenness_mean_from_acc(acc, g.n)


def _betweenness_mean_from_acc(acc, n):
    if n < 3:
        return 0.0
    # Brandes accumulates ordered pairs; halve for unordered s < t
    return float(np.mean(acc / 2.0 / ((n - 1) * (n - 2))))


def closeness_mean(g: Graph) -> float:
    """Mean normalized closeness, (n-1)/sum_j d(i,j) on connected graphs.

    Disconnected convention: each node is scored within its component and
    scaled by (c-1)/(n-1) so values stay in [0, 1]; isolated nodes score 0.
    """
    _, dist_sum, reach = _centrality_sweep(g)
    return _closeness_mean_from_sums(dist_sum, reach, g.n)


def _closeness_mean_from_sums(dist_sum, reach, n):
    if n < 2:
        return 0.0
    vals = np.zeros(n)
    mask = dist_sum > 0
    c = reach[mask].astype(np.float64)
    vals[mask] = (c - 1.0) / (n - 1.0) * ((c - 1.0) / dist_sum[mask])
    return float(np.mean(vals))


def mean_path_length(g: Graph) -> float:
    """Average shortest-path length over ordered reachable pairs.

    Pairs in different components are excluded; an edgeless graph returns 0.
    """
    _, dist_sum, reach = _centrality_sweep(g)
    return _path_length_from_sums(dist_sum, reach)


def _path_length_from_sums(dist_sum, reach):
    pairs = int(np.sum(reach - 1))
    if pairs == 0:
        return 0.0
    return float(np.sum(dist_sum) / pairs)


def eigenvector_mean(g: Graph, tol=1e-10, max_iter=10_000) -> float:
    """Mean entry of the leading adjacency eigenvector.

    Computed on the largest connected component (ties broken by lowest
    node id), unit L2 norm with nonnegative entries, zeros elsewhere; an
    edgeless graph scores 0 everywhere. Power iteration runs on A + I so
    bipartite components cannot oscillate.
    """
    if g.m == 0:
        return 0.0
    comp = max(connected_components(g), key=len)
    idx = np.array(comp)
    sub = g.adjacency()[np.ix_(idx, idx)].astype(np.float64)
    c = len(comp)
    v = np.full(c, 1.0 / math.sqrt(c))
    for _ in range(max_iter):
        w = sub @ v + v  # (A + I) v
        w /= np.linalg.norm(w)
        if np.max(np.abs(w - v)) < tol:
            v = w
            break
        v = w
    if v.sum() < 0:
        v = -v
    v = np.maximum(v, 0.0)
    v /= np.linalg.norm(v)
    full = np.zeros(g.n)
    full[idx] = v
    return float(np.mean(full))


def modularity_of_partition(g: Graph, communities) -> float:
    """Direct evaluation of Q = sum_c [E_c/m - (D_c/2m)^2]."""
    if g.m == 0:
        return 0.0
    label = np.empty(g.n, dtype=np.int64)
    for cid, comm in enumerate(communities):
        for v in comm:
            label[v] = cid
    deg = g.degrees()
    m = g.m
    q = 0.0
    n_comm = len(communities)
    within = np.zeros(n_comm)
    for i, j in g.edges:
        if label[i] == label[j]:
            within[label[i]] += 1
    for cid, comm in enumerate(communities):
        d_c = float(deg[list(comm)].sum())
        q += within[cid] / m - (d_c / (2.0 * m)) ** 2
    return q


def modularity_greedy(g: Graph):
    """Fast greedy agglomerative modularity maximization.

    Singleton communities are merged by the largest modularity gain using
    a lazy max-heap of candidate merges; the best partition seen along
    the full merge path is returned as (Q, communities). Ties in the gain
    are broken toward the lowest community-id pair for determinism.
    Edgeless graphs return (0.0, singletons).
    """
    n = g.n
    if g.m == 0:
        return 0.0, [[v] for v in range(n)]
    m = float(g.m)
    deg = g.degrees().astype(np.float64)

    # community state: edge-weight maps between live communities
    members = {v: [v] for v in range(n)}
    dsum = {v: deg[v] for v in range(n)}
    links = {v: {} for v in range(n)}
    for i, j in g.edges:
        i, j = int(i), int(j)
        links[i][j] = links[i].get(j, 0.0) + 1.0
        links[j][i] = links[j].get(i, 0.0) + 1.0

    def gain(a, b):
        return links[a][b] / m - dsum[a] * dsum[b] / (2.0 * m * m)

    heap = []
    for a in links:
        for b in links[a]:
            if a < b:
                heapq.heappush(heap, (-gain(a, b), a, b))

    q = modularity_of_partition(g, list(members.values()))
    best_q = q
    best_parts = [list(v) for v in members.values()]

    while heap and len(members) > 1:
        neg_dq, a, b = heapq.heappop(heap)
        if a not in members or b not in members or b not in links[a]:
            continue
        dq = gain(a, b)
        if not math.isclose(-neg_dq, dq, rel_tol=0.0, abs_tol=1e-12):
            continue  # stale entry; a fresh one is (or was) in the heap
        # merge b into a (a < b by construction)
        q += dq
        members[a].extend(members[b])
        dsum[a] += dsum[b]
        for c, w in links[b].items():
            if c == a:
                continue
            links[a][c] = links[a].get(c, 0.0) + w
            links[c][a] = links[c].get(a, 0.0) + w
            del links[c][b]
        del links[a][b]
        del links[b], members[b], dsum[b]
        for c in links[a]:
            lo, hi = (a, c) if a < c else (c, a)
            heapq.heappush(heap, (-gain(lo, hi), lo, hi))
        if q > best_q + 1e-12:
            best_q = q
            best_parts = [list(v) for v in members.values()]

    best_parts = sorted((sorted(p) for p in best_parts), key=lambda p: p[0])
    return modularity_of_partition(g, best_parts), best_parts


def metric_panel(g: Graph) -> MetricPanel:
    """All panel metrics, sharing the all-sources BFS sweep."""
    acc, dist_sum, reach = _centrality_sweep(g)
    q, _ = modularity_greedy(g)
    return MetricPanel(
        circuit_rank=circuit_rank(g),
        clustering=global_clustering(g),
        mean_betweenness=_betweenness_mean_from_acc(acc, g.n),
        mean_closeness=_closeness_mean_from_sums(dist_sum, reach, g.n),
        mean_eigenvector=eigenvector_mean(g),
        mean_path_length=_path_length_from_sums(dist_sum, reach),
        modularity=q,
        edge_density=g.density,
    )
