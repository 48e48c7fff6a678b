"""Undirected simple graphs at desk scale.

Provides validated construction, BFS hop distances with a first-class
infinite value, exact and greedy dominating sets with deterministic
tie-breaking, and seeded instance generators.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import GenerationError, GuardExceeded

INF = math.inf

Distance = float | int
VertexSet = frozenset[int]

DOMSET_ENUMERATION_GUARD = 24
GENERATION_RETRY_BUDGET = 1000

GENERATOR_KINDS = ("path", "cycle", "star", "complete", "erdos_renyi")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Edges are stored normalized as (u, v) with u < v.  Instances are
    immutable and hashable, which lets distance computations be cached.
    """

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop ({u},{v}) is not allowed")
            if u > v:
                raise ValueError(f"edge ({u},{v}) is not normalized, expected u < v")
            if not 0 <= u < self.n or not 0 <= v < self.n:
                raise ValueError(f"edge ({u},{v}) has an endpoint outside [0,{self.n})")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def adjacency(self) -> list[list[int]]:
        """Neighbor lists, each in ascending vertex order."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        return adj


def new_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a Graph from a raw edge list, naming the offending pair on error.

    Rejects self-loops, endpoints outside [0, n), and duplicate edges.  A
    reversed repeat such as (0,1) after (1,0) counts as a duplicate.
    """
    seen: set[tuple[int, int]] = set()
    for pair in edges:
        u, v = pair
        if u == v:
            raise ValueError(f"self-loop ({u},{v}) is not allowed")
        if not 0 <= u < n or not 0 <= v < n:
            raise ValueError(f"edge ({u},{v}) has an endpoint outside [0,{n})")
        key = (v, u) if u > v else (u, v)
        if key in seen:
            raise ValueError(f"duplicate edge ({u},{v})")
        seen.add(key)
    return Graph(n, frozenset(seen))


def single_source_distances(g: Graph, source: int) -> list[Distance]:
    """Hop distances from source to every vertex, INF where unreachable."""
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} outside [0,{g.n})")
    adj = g.adjacency()
    dist: list[Distance] = [INF] * g.n
    dist[source] = 0
    queue: deque[int] = deque([source])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if dist[w] == INF:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs hop distances; rows[u][v] is the distance from u to v."""

    n: int
    rows: tuple[tuple[Distance, ...], ...]

    def dist(self, u: int, v: int) -> Distance:
        return self.rows[u][v]


@lru_cache(maxsize=256)
def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """BFS from every source; symmetric with a zero diagonal."""
    rows = tuple(tuple(single_source_distances(g, s)) for s in range(g.n))
    return DistanceMatrix(g.n, rows)


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        raise ValueError("connectivity is undefined for the empty graph")
    return INF not in single_source_distances(g, 0)


def _check_members(g: Graph, members: Iterable[int]) -> frozenset[int]:
    s = frozenset(members)
    for v in s:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} outside [0,{g.n})")
    return s


def is_dominating_set(g: Graph, members: Iterable[int]) -> bool:
    """True when every vertex is in the set or adjacent to a member."""
    s = _check_members(g, members)
    adj = g.adjacency()
    for v in range(g.n):
        if v in s:
            continue
        if not any(w in s for w in adj[v]):
            return False
    return True


def _closed_neighborhood_masks(g: Graph) -> list[int]:
    masks = [1 << v for v in range(g.n)]
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def greedy_dominating_set(g: Graph) -> VertexSet:
    """Max-coverage greedy dominating set; ties go to the lowest index."""
    adj = g.adjacency()
    closed = [set(adj[v]) | {v} for v in range(g.n)]
    uncovered = set(range(g.n))
    chosen: list[int] = []
    while uncovered:
        best_v = -1
        best_gain = 0
        for v in range(g.n):
            gain = len(closed[v] & uncovered)
            if gain > best_gain:
                best_v, best_gain = v, gain
        chosen.append(best_v)
        uncovered -= closed[best_v]
    return frozenset(chosen)


def min_dominating_set(g: Graph, guard: int = DOMSET_ENUMERATION_GUARD) -> VertexSet:
    """Exact minimum dominating set by subset enumeration.

    Scans subsets in increasing cardinality and, within a cardinality, in
    lexicographic member order, so the first hit is the lexicographically
    smallest minimum set.  The greedy solution caps the search depth.
    Refuses graphs larger than the guard.
    """
    if g.n > guard:
        raise GuardExceeded("dominating-set enumeration", guard, g.n)
    masks = _closed_neighborhood_masks(g)
    full = (1 << g.n) - 1
    upper = len(greedy_dominating_set(g))
    for k in range(upper + 1):
        for combo in itertools.combinations(range(g.n), k):
            cover = 0
            for v in combo:
                cover |= masks[v]
            if cover == full:
                return frozenset(combo)
    raise AssertionError("unreachable: the greedy set bounds the search")


def generate(
    kind: str,
    n: int,
    p: float | None = None,
    seed: int | None = None,
    require_connected: bool = False,
    max_retries: int = GENERATION_RETRY_BUDGET,
) -> Graph:
    """Build a named instance; deterministic for fixed arguments.

    Kinds: path, cycle, star (center 0), complete, erdos_renyi.  The
    Erdos-Renyi kind needs p and seed; with require_connected it redraws
    up to max_retries times and then raises GenerationError.
    """
    if n < 1:
        raise ValueError(f"generator needs n >= 1, got {n}")
    if kind == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "cycle":
        edges = [(i, i + 1) for i in range(n - 1)]
        if n > 2:
            edges.append((0, n - 1))
    elif kind == "star":
        edges = [(0, i) for i in range(1, n)]
    elif kind == "complete":
        edges = list(itertools.combinations(range(n), 2))
    elif kind == "erdos_renyi":
        if p is None or not 0.0 <= p <= 1.0:
            raise ValueError(f"erdos_renyi needs edge probability p in [0,1], got {p}")
        if seed is None:
            raise ValueError("erdos_renyi needs an explicit seed")
        rng = random.Random(seed)
        for _ in range(max_retries):
            drawn = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
            g = Graph(n, frozenset(drawn))
            if not require_connected or is_connected(g):
                return g
        raise GenerationError(
            f"no connected graph in {max_retries} draws (n={n}, p={p}, seed={seed})"
        )
    else:
        raise ValueError(f"unknown generator kind {kind!r}, expected one of {GENERATOR_KINDS}")
    g = Graph(n, frozenset(edges))
    if require_connected and not is_connected(g):
        raise GenerationError(f"{kind} instance with n={n} is not connected")
    return g
