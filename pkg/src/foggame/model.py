"""Two-level game state and cost functions.

Level 1: each fog device is a vertex that buys links to other fog devices
(price alpha each) and pays the sum of its hop distances to every fog
vertex.  Level 2: each job is an extra vertex that buys links into the fog
graph (price beta each) and pays a distance term over all fog vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable

from .graph import (
    INF,
    Graph,
    VertexSet,
    all_pairs_distances,
    single_source_distances,
)


class JobCostType(Enum):
    """How a job is charged for its distance to the fog vertices.

    TYPE_I:  beta * |S| - 1 / (sum of distances); the distance term is a
             bounded utility, so connectivity is worth at most 1.
    TYPE_II: beta * |S| + sum of distances.
    """

    TYPE_I = "type1"
    TYPE_II = "type2"


class TransitPolicy(Enum):
    """Whether job-to-fog paths may pass through other job vertices.

    FULL_COMBINED routes in the full two-level graph.  FOG_ONLY restricts a
    job to one hop over its own links followed by fog-internal paths, which
    makes job costs independent of each other.
    """

    FOG_ONLY = "fog_only"
    FULL_COMBINED = "full_combined"


@dataclass(frozen=True)
class GameConfig:
    """Cost parameters for both levels.

    A job whose distance sum is infinite has infinite cost under both cost
    types; the TYPE_I utility term is not read as -1/inf.  rcs_constant is
    the multiplier used by the sum-of-reciprocals bound helpers.
    """

    alpha: float = 1.0
    beta: float = 1.0
    job_cost_type: JobCostType = JobCostType.TYPE_II
    rcs_constant: float = 1.0
    transit_policy: TransitPolicy = TransitPolicy.FULL_COMBINED

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError(f"alpha must be non-negative, got {self.alpha}")
        if self.beta < 0:
            raise ValueError(f"beta must be non-negative, got {self.beta}")
        if self.rcs_constant <= 0:
            raise ValueError(f"rcs_constant must be positive, got {self.rcs_constant}")


def _normalize_strategies(raw: Iterable[Iterable[int]]) -> tuple[VertexSet, ...]:
    return tuple(frozenset(s) for s in raw)


@dataclass(frozen=True)
class Level1Profile:
    """One purchase set per fog player; player i may not buy a link to itself."""

    strategies: tuple[VertexSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "strategies", _normalize_strategies(self.strategies))
        n1 = len(self.strategies)
        for i, s in enumerate(self.strategies):
            if i in s:
                raise ValueError(f"fog player {i} cannot buy a link to itself")
            for v in s:
                if not 0 <= v < n1:
                    raise ValueError(f"fog player {i} strategy member {v} outside [0,{n1})")

    @property
    def n1(self) -> int:
        return len(self.strategies)

    def replace(self, player: int, strategy: Iterable[int]) -> "Level1Profile":
        parts = list(self.strategies)
        parts[player] = frozenset(strategy)
        return Level1Profile(tuple(parts))


@dataclass(frozen=True)
class Level2Profile:
    """One fog-vertex subset per job; n1 fixes the purchasable range."""

    n1: int
    strategies: tuple[VertexSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "strategies", _normalize_strategies(self.strategies))
        if self.n1 < 0:
            raise ValueError(f"n1 must be non-negative, got {self.n1}")
        for j, s in enumerate(self.strategies):
            for v in s:
                if not 0 <= v < self.n1:
                    raise ValueError(f"job {j} strategy member {v} outside [0,{self.n1})")

    @property
    def n2(self) -> int:
        return len(self.strategies)

    def replace(self, job: int, strategy: Iterable[int]) -> "Level2Profile":
        parts = list(self.strategies)
        parts[job] = frozenset(strategy)
        return Level2Profile(self.n1, tuple(parts))


@dataclass(frozen=True)
class GameState:
    """Immutable snapshot of both levels.

    level1 is either a Level1Profile (profile mode, purchases are charged)
    or a fixed Graph (the fog network is given and only distances count).
    Equal player counts are required unless allow_unequal is set; the
    closed-form bound evaluators refuse unequal counts either way.
    """

    level1: Level1Profile | Graph
    level2: Level2Profile
    allow_unequal: bool = False

    def __post_init__(self):
        n1 = self.level1.n if isinstance(self.level1, Graph) else self.level1.n1
        if self.level2.n1 != n1:
            raise ValueError(
                f"level-2 profile addresses {self.level2.n1} fog vertices, level 1 has {n1}"
            )
        if not self.allow_unequal and n1 != self.level2.n2:
            raise ValueError(
                f"player counts differ (n1={n1}, n2={self.level2.n2}); "
                "pass allow_unequal=True to permit this"
            )

    @property
    def profile_mode(self) -> bool:
        return isinstance(self.level1, Level1Profile)

    @property
    def n1(self) -> int:
        return self.level1.n if isinstance(self.level1, Graph) else self.level1.n1

    @property
    def n2(self) -> int:
        return self.level2.n2

    @property
    def g1(self) -> Graph:
        """The fog graph: fixed, or built from the level-1 profile."""
        if isinstance(self.level1, Graph):
            return self.level1
        return build_level1_graph(self.level1)

    def with_level1_strategy(self, player: int, strategy: Iterable[int]) -> "GameState":
        if not self.profile_mode:
            raise ValueError("level-1 strategies cannot change in fixed-graph mode")
        return GameState(self.level1.replace(player, strategy), self.level2, self.allow_unequal)

    def with_level2_strategy(self, job: int, strategy: Iterable[int]) -> "GameState":
        return GameState(self.level1, self.level2.replace(job, strategy), self.allow_unequal)


@lru_cache(maxsize=1024)
def build_level1_graph(profile: Level1Profile) -> Graph:
    """Union semantics: edge {i,k} exists iff i bought k or k bought i.

    Both sides of a duplicate purchase are still charged in the cost
    functions; the built graph keeps a single edge.
    """
    edges = set()
    for i, s in enumerate(profile.strategies):
        for k in s:
            edges.add((min(i, k), max(i, k)))
    return Graph(profile.n1, frozenset(edges))


def build_combined_graph(g1: Graph, profile: Level2Profile) -> Graph:
    """Two-level graph: job j becomes vertex n1 + j with its bought links.

    Jobs never link to each other, so every added edge has one fog endpoint.
    """
    if profile.n1 != g1.n:
        raise ValueError(f"profile addresses {profile.n1} fog vertices, graph has {g1.n}")
    edges = set(g1.edges)
    for j, s in enumerate(profile.strategies):
        jv = g1.n + j
        for v in s:
            edges.add((v, jv))
    return Graph(g1.n + profile.n2, frozenset(edges))


def edge_fog_player_cost(i: int, state: GameState, cfg: GameConfig) -> float:
    """alpha * |S_i| plus the sum of hop distances from i to every fog vertex.

    In fixed-graph mode the purchase term is zero.  Infinite whenever some
    fog vertex is unreachable inside the fog graph.
    """
    if not 0 <= i < state.n1:
        raise ValueError(f"fog player {i} outside [0,{state.n1})")
    dist = single_source_distances(state.g1, i)
    total = sum(dist)
    if state.profile_mode:
        total += cfg.alpha * len(state.level1.strategies[i])
    return total


def _job_distance_sum(j: int, state: GameState, cfg: GameConfig) -> float:
    n1 = state.n1
    if n1 == 0:
        return 0
    strategy = state.level2.strategies[j]
    if cfg.transit_policy is TransitPolicy.FOG_ONLY:
        dm = all_pairs_distances(state.g1)
        total: float = 0
        for w in range(n1):
            best = INF
            for s in strategy:
                d = 1 + dm.rows[s][w]
                if d < best:
                    best = d
            total += best
        return total
    combined = build_combined_graph(state.g1, state.level2)
    dist = single_source_distances(combined, n1 + j)
    return sum(dist[:n1])


def job_player_cost(j: int, state: GameState, cfg: GameConfig) -> float:
    """Job cost under the configured cost type and transit policy.

    TYPE_II: beta * |S| + D where D sums the job's distances to all fog
    vertices.  TYPE_I: beta * |S| - 1/D, infinite when D is infinite.  With
    no fog vertices at all the distance term is zero by convention.
    """
    if not 0 <= j < state.n2:
        raise ValueError(f"job {j} outside [0,{state.n2})")
    purchase = cfg.beta * len(state.level2.strategies[j])
    d = _job_distance_sum(j, state, cfg)
    if cfg.job_cost_type is JobCostType.TYPE_II:
        return purchase + d
    if d == INF:
        return INF
    if d == 0:
        return purchase
    return purchase - 1.0 / d


def interconnection_count(profile: Level2Profile) -> int:
    """Total number of job-to-fog links, counting one per purchase."""
    return sum(len(s) for s in profile.strategies)


def interconnection_union(profile: Level2Profile) -> VertexSet:
    """Diagnostic alternative reading: fog vertices touched by any job."""
    return frozenset().union(*profile.strategies) if profile.strategies else frozenset()


def social_cost_level1(state: GameState, cfg: GameConfig) -> float:
    """Sum of fog player costs; purchase terms count only in profile mode."""
    return sum(edge_fog_player_cost(i, state, cfg) for i in range(state.n1))


def social_cost_level2(state: GameState, cfg: GameConfig) -> float:
    return sum(job_player_cost(j, state, cfg) for j in range(state.n2))


@dataclass(frozen=True)
class CostReport:
    """Per-player costs plus the social totals of one state."""

    level1_costs: tuple[float, ...]
    level2_costs: tuple[float, ...]
    social_level1: float
    social_level2: float
    interconnection_count: int


def cost_report(state: GameState, cfg: GameConfig) -> CostReport:
    """Evaluate every player once; the social totals are exact sums."""
    level1 = tuple(edge_fog_player_cost(i, state, cfg) for i in range(state.n1))
    level2 = tuple(job_player_cost(j, state, cfg) for j in range(state.n2))
    return CostReport(
        level1_costs=level1,
        level2_costs=level2,
        social_level1=sum(level1),
        social_level2=sum(level2),
        interconnection_count=interconnection_count(state.level2),
    )
