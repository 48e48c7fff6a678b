"""Scenario files: strict parsing and execution.

A scenario is a JSON object with a mode, an instance description, and
mode-specific options.  Parsing is strict: unknown keys anywhere are
rejected with the offending key named, so misspelled fields never pass
silently.  run_record wraps a run's payload with the echoed scenario, the
tool version, and the wall-clock duration; everything inside the payload
is deterministic for fixed seeds.
"""

from __future__ import annotations

import copy
import time
from typing import Any

from . import __version__
from .bounds import check_bounds_on_instance
from .equilibrium import (
    Scope,
    best_response_dynamics,
    empirical_poa,
    is_nash,
)
from .errors import ScenarioError
from .graph import Graph, generate, new_graph
from .model import (
    GameConfig,
    GameState,
    JobCostType,
    Level1Profile,
    Level2Profile,
    TransitPolicy,
    cost_report,
)
from .serialize import to_jsonable
from .verify import run_all

MODES = ("gen", "cost", "dynamics", "nash", "poa", "bounds", "verify", "sweep")

_TOP_KEYS = {
    "gen": {"mode", "graph"},
    "cost": {"mode", "graph", "n2", "config", "options", "allow_unequal"},
    "nash": {"mode", "graph", "n2", "config", "options", "allow_unequal"},
    "dynamics": {"mode", "graph", "n2", "config", "options", "allow_unequal"},
    "bounds": {"mode", "graph", "n2", "config", "options", "allow_unequal"},
    "poa": {"mode", "graph", "n2", "config"},
    "verify": {"mode"},
}

_GENERATOR_KEYS = {"kind", "n", "p", "seed", "require_connected"}
_INLINE_KEYS = {"n", "edges"}
_CONFIG_KEYS = {"alpha", "beta", "job_cost_type", "rcs_constant", "transit"}

_OPTION_KEYS = {
    "cost": {"level1_strategies", "level2_strategies"},
    "nash": {"level1_strategies", "level2_strategies", "scope"},
    "bounds": {"level1_strategies", "level2_strategies"},
    "dynamics": {
        "level1_strategies",
        "level2_strategies",
        "scope",
        "schedule",
        "seed",
        "max_rounds",
        "oracle",
    },
}


def _check_keys(section: dict, allowed: set[str], where: str) -> None:
    for key in sorted(section):
        if key not in allowed:
            raise ScenarioError(f"{where}: unknown key {key!r}")


def _require(section: dict, key: str, where: str) -> Any:
    if key not in section:
        raise ScenarioError(f"{where}: missing required key {key!r}")
    return section[key]


def _parse_graph(section: Any) -> Graph:
    if not isinstance(section, dict):
        raise ScenarioError("graph: expected an object")
    if "edges" in section:
        _check_keys(section, _INLINE_KEYS, "graph")
        n = _require(section, "n", "graph")
        edges = section["edges"]
        if not isinstance(edges, list):
            raise ScenarioError("graph: edges must be a list of pairs")
        return new_graph(n, [tuple(e) for e in edges])
    _check_keys(section, _GENERATOR_KEYS, "graph")
    kind = _require(section, "kind", "graph")
    n = _require(section, "n", "graph")
    return generate(
        kind,
        n,
        p=section.get("p"),
        seed=section.get("seed"),
        require_connected=bool(section.get("require_connected", False)),
    )


def _parse_config(section: Any) -> GameConfig:
    if section is None:
        return GameConfig()
    if not isinstance(section, dict):
        raise ScenarioError("config: expected an object")
    _check_keys(section, _CONFIG_KEYS, "config")
    kwargs: dict[str, Any] = {}
    if "alpha" in section:
        kwargs["alpha"] = float(section["alpha"])
    if "beta" in section:
        kwargs["beta"] = float(section["beta"])
    if "rcs_constant" in section:
        kwargs["rcs_constant"] = float(section["rcs_constant"])
    if "job_cost_type" in section:
        try:
            kwargs["job_cost_type"] = JobCostType(section["job_cost_type"])
        except ValueError:
            raise ScenarioError(
                f"config: job_cost_type must be one of "
                f"{[t.value for t in JobCostType]}, got {section['job_cost_type']!r}"
            ) from None
    if "transit" in section:
        try:
            kwargs["transit_policy"] = TransitPolicy(section["transit"])
        except ValueError:
            raise ScenarioError(
                f"config: transit must be one of "
                f"{[t.value for t in TransitPolicy]}, got {section['transit']!r}"
            ) from None
    return GameConfig(**kwargs)


def _parse_strategies(raw: Any, where: str) -> tuple[frozenset[int], ...]:
    if not isinstance(raw, list):
        raise ScenarioError(f"{where}: expected a list of vertex lists")
    out = []
    for entry in raw:
        if not isinstance(entry, list):
            raise ScenarioError(f"{where}: each strategy must be a list of vertices")
        out.append(frozenset(entry))
    return tuple(out)


def _parse_scope(raw: Any) -> Scope:
    try:
        return Scope(raw)
    except ValueError:
        raise ScenarioError(
            f"options: scope must be one of {[s.value for s in Scope]}, got {raw!r}"
        ) from None


def _build_state(data: dict, options: dict, mode: str) -> GameState:
    has_graph = "graph" in data
    has_profile = "level1_strategies" in options
    if has_graph and has_profile:
        raise ScenarioError(
            f"{mode}: give either a graph or options.level1_strategies, not both"
        )
    if not has_graph and not has_profile:
        raise ScenarioError(f"{mode}: needs a graph or options.level1_strategies")

    if has_profile:
        level1: Level1Profile | Graph = Level1Profile(
            _parse_strategies(options["level1_strategies"], "options.level1_strategies")
        )
        n1 = level1.n1
    else:
        level1 = _parse_graph(data["graph"])
        n1 = level1.n

    if "level2_strategies" in options:
        strategies = _parse_strategies(options["level2_strategies"], "options.level2_strategies")
    elif "n2" in data:
        strategies = (frozenset(),) * int(data["n2"])
    else:
        raise ScenarioError(f"{mode}: needs options.level2_strategies or n2")
    if "n2" in data and int(data["n2"]) != len(strategies):
        raise ScenarioError(
            f"{mode}: n2={data['n2']} disagrees with {len(strategies)} level-2 strategies"
        )
    level2 = Level2Profile(n1, strategies)
    return GameState(level1, level2, allow_unequal=bool(data.get("allow_unequal", False)))


def run_spec(data: Any) -> dict:
    """Execute one parsed scenario object and return its payload."""
    if not isinstance(data, dict):
        raise ScenarioError("scenario: expected a JSON object")
    mode = _require(data, "mode", "scenario")
    if mode == "sweep":
        raise ScenarioError("scenario: sweep runs through the sweep command, not a mode")
    if mode not in MODES:
        raise ScenarioError(f"scenario: unknown mode {mode!r}, expected one of {MODES}")
    _check_keys(data, _TOP_KEYS[mode], "scenario")

    if mode == "gen":
        g = _parse_graph(_require(data, "graph", "scenario"))
        return {"graph": to_jsonable(g)}

    if mode == "verify":
        results = run_all()
        return {
            "checks": [to_jsonable(r) for r in results],
            "all_passed": all(r.passed for r in results),
        }

    cfg = _parse_config(data.get("config"))
    options = data.get("options", {})
    if not isinstance(options, dict):
        raise ScenarioError("options: expected an object")

    if mode == "poa":
        g = _parse_graph(_require(data, "graph", "scenario"))
        n2 = int(data.get("n2", g.n))
        report = empirical_poa(g, n2, cfg)
        return to_jsonable(report)

    _check_keys(options, _OPTION_KEYS[mode], "options")
    state = _build_state(data, options, mode)

    if mode == "cost":
        return to_jsonable(cost_report(state, cfg))

    if mode == "nash":
        scope = _parse_scope(options.get("scope", Scope.LEVEL2.value))
        stable, witness = is_nash(state, cfg, scope)
        return {"is_nash": stable, "witness": to_jsonable(witness)}

    if mode == "bounds":
        checks = check_bounds_on_instance(state, cfg)
        return {
            "checks": [to_jsonable(c) for c in checks],
            "all_hold": all(c.holds for c in checks),
        }

    # dynamics
    scope = _parse_scope(options.get("scope", Scope.LEVEL2.value))
    trace = best_response_dynamics(
        state,
        cfg,
        scope,
        schedule=options.get("schedule", "round_robin"),
        seed=int(options.get("seed", 0)),
        max_rounds=int(options.get("max_rounds", 100)),
        oracle=options.get("oracle", "exact"),
    )
    return to_jsonable(trace)


def run_record(data: Any) -> dict:
    """Run a scenario and wrap the payload with its echo and version."""
    started = time.monotonic()
    payload = run_spec(data)
    return {
        "spec": to_jsonable(data),
        "version": __version__,
        "duration_seconds": time.monotonic() - started,
        "payload": payload,
    }


_SWEEP_PARAMETERS = ("beta", "alpha", "n", "p")


def sweep_records(template: Any, parameter: str, values: list) -> dict:
    """Run a template scenario once per parameter value.

    beta and alpha patch the config section; n and p patch the graph
    section and therefore need a generator graph.
    """
    if parameter not in _SWEEP_PARAMETERS:
        raise ScenarioError(
            f"sweep: parameter must be one of {_SWEEP_PARAMETERS}, got {parameter!r}"
        )
    if not isinstance(template, dict):
        raise ScenarioError("sweep: template must be a JSON object")
    if not values:
        raise ScenarioError("sweep: needs at least one value")
    records = []
    for value in values:
        data = copy.deepcopy(template)
        if parameter in ("beta", "alpha"):
            data.setdefault("config", {})[parameter] = value
        else:
            graph = data.get("graph")
            if not isinstance(graph, dict) or "kind" not in graph:
                raise ScenarioError(f"sweep: sweeping {parameter!r} needs a generator graph")
            graph[parameter] = int(value) if parameter == "n" else value
        records.append(run_record(data))
    return {"parameter": parameter, "values": list(values), "records": records}
