"""Causal contextuality scenarios: enabling relation, causal bridges and covers."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property

from ._maps import EventSet, FrozenMap, action_key, format_action, format_set
from .cover import Cover, facets
from .errors import (
    CycleDetected,
    InconsistentAncestry,
    NoBridge,
    NonUniqueBridge,
    ScenarioError,
)


def _as_events(t) -> EventSet:
    if isinstance(t, EventSet):
        return t
    if isinstance(t, Mapping):
        return EventSet(t)
    return EventSet.from_pairs(t)


@dataclass(frozen=True, eq=False)
class Scenario:
    """Measurements, their outcome sets, an enabling relation and a cover.

    ``measurements`` is ordered; the order is only used for display.
    Enabling relations are ``(event set, measurement)`` pairs and an empty
    event set must be listed explicitly for measurements enabled from the start.
    """

    measurements: tuple[str, ...]
    outcomes: Mapping[str, frozenset]
    enabling: frozenset[tuple[EventSet, str]]
    cover: Cover

    def __post_init__(self):
        xs = tuple(self.measurements)
        if len(set(xs)) != len(xs):
            raise ScenarioError("duplicate measurement")
        object.__setattr__(self, "measurements", xs)
        outs = FrozenMap((x, frozenset(o)) for x, o in self.outcomes.items())
        object.__setattr__(self, "outcomes", outs)
        if set(outs) != set(xs):
            raise ScenarioError("outcome sets must be given for exactly the measurements")
        for x, o in outs.items():
            if not o:
                raise ScenarioError(f"measurement {x} has no outcomes")
        rel = frozenset((_as_events(t), x) for t, x in self.enabling)
        object.__setattr__(self, "enabling", rel)
        for t, x in rel:
            if x not in outs:
                raise ScenarioError(f"enabling relation targets unknown measurement {x}")
            for y, o in t.items():
                if y not in outs:
                    raise ScenarioError(f"enabling event mentions unknown measurement {y}")
                if o not in outs[y]:
                    raise ScenarioError(f"enabling event {y}={format_action(o)} is not an outcome of {y}")
        if not isinstance(self.cover, Cover):
            object.__setattr__(self, "cover", Cover(frozenset(frozenset(f) for f in self.cover)))
        stray = self.cover.vertices - set(xs)
        if stray:
            raise ScenarioError(f"cover mentions unknown measurements: {sorted(stray)}")

    def _key(self):
        return (frozenset(self.measurements), self.outcomes, self.enabling, self.cover)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scenario):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    @cached_property
    def order(self) -> Mapping[str, int]:
        return FrozenMap((x, k) for k, x in enumerate(self.measurements))

    @cached_property
    def enabling_sets(self) -> tuple[EventSet, ...]:
        """Distinct left-hand sides of the enabling relation, sorted for display."""
        return tuple(sorted({t for t, _ in self.enabling}, key=self.events_key))

    def events_key(self, t: Mapping) -> tuple:
        return (len(t), sorted((self.order.get(y, 0), action_key(o)) for y, o in t.items()))

    def bridges(self, x: str) -> tuple[EventSet, ...]:
        return tuple(sorted((t for t, y in self.enabling if y == x), key=self.events_key))

    def sorted_outcomes(self, x: str) -> list:
        return sorted(self.outcomes[x], key=action_key)

    def format_events(self, t: Mapping) -> str:
        items = sorted(t.items(), key=lambda kv: self.order.get(kv[0], 0))
        return "{" + ",".join(f"{y}={format_action(o)}" for y, o in items) + "}"

    def format_cover(self, cover: Cover | None = None) -> str:
        return (cover or self.cover).format(self.order)


def enabled(scenario: Scenario, t: Mapping) -> frozenset[str]:
    t = _as_events(t)
    return frozenset(x for s, x in scenario.enabling if s == t)


def tau(scenario: Scenario, x: str) -> EventSet:
    """The unique event set enabling ``x``."""
    found = scenario.bridges(x)
    if not found:
        raise NoBridge(f"no enabling relation targets {x}")
    if len(found) > 1:
        raise NonUniqueBridge(f"{x} has {len(found)} causal bridges: " + ", ".join(map(str, found)))
    return found[0]


def tau_bar(scenario: Scenario, x: str) -> EventSet:
    """All past events required to enable ``x`` (transitive closure of its bridge)."""
    memo: dict[str, EventSet] = {}

    def closure(y: str, path: tuple) -> EventSet:
        if y in path:
            raise CycleDetected(" -> ".join(path[path.index(y):] + (y,)))
        if y in memo:
            return memo[y]
        acc = tau(scenario, y)
        for z in sorted(acc, key=str):
            merged = acc.union(closure(z, path + (y,)))
            if merged is None:
                raise InconsistentAncestry(f"the ancestry of {y} is inconsistent; {y} can never be enabled")
            acc = merged
        memo[y] = acc
        return acc

    return closure(x, ())


def local_cover_restriction(scenario: Scenario, t: Mapping) -> Cover:
    """Facets of the cover restricted to the measurements enabled by ``t``."""
    return scenario.cover.restrict(enabled(scenario, t))


def local_cover_restriction_formula(scenario: Scenario, t: Mapping) -> frozenset[frozenset]:
    """Intersections with the enabled set, empties dropped, nothing else removed."""
    en = enabled(scenario, t)
    return frozenset(c & en for c in scenario.cover.facets if c & en)


@dataclass(frozen=True)
class BridgeReport:
    unique: bool
    witnesses: Mapping[str, tuple[EventSet, ...]]

    def __bool__(self) -> bool:
        return self.unique


def check_unique_causal_bridges(scenario: Scenario) -> BridgeReport:
    witnesses = {x: scenario.bridges(x) for x in scenario.measurements if len(scenario.bridges(x)) > 1}
    return BridgeReport(not witnesses, FrozenMap(witnesses))


def dependency_graph(scenario: Scenario) -> dict[str, set[str]]:
    """Edges from every measurement in an enabling event set to the measurement it enables."""
    graph: dict[str, set[str]] = {x: set() for x in scenario.measurements}
    for t, x in scenario.enabling:
        for y in t:
            graph[y].add(x)
    return graph


def check_acyclic(scenario: Scenario) -> bool:
    graph = dependency_graph(scenario)
    indeg = {x: 0 for x in graph}
    for y, xs in graph.items():
        for x in xs:
            indeg[x] += 1
    ready = [x for x, k in indeg.items() if k == 0]
    seen = 0
    while ready:
        y = ready.pop()
        seen += 1
        for x in graph[y]:
            indeg[x] -= 1
            if indeg[x] == 0:
                ready.append(x)
    return seen == len(graph)


@dataclass(frozen=True)
class SecurityViolation:
    criterion: str
    witness: tuple
    detail: str = ""


@dataclass(frozen=True)
class SecurityReport:
    violations: tuple[SecurityViolation, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def failed_criteria(self) -> frozenset[str]:
        return frozenset(v.criterion for v in self.violations)

    def __bool__(self) -> bool:
        return self.passed


def check_causally_secured(scenario: Scenario) -> SecurityReport:
    """Check propagation, consistency and maximality of the cover.

    Propagation is read as: for every facet C and every x in C, the
    measurements of x's bridge lie in C.  Maximality compares the cover with
    the natural cover of the associated game, which realizes the largest
    cover with the same local restrictions.
    """
    from .categories import associated_game  # circular at import time
    from .game import natural_cover

    out: list[SecurityViolation] = []
    order = scenario.order
    for c in scenario.cover.sorted(order):
        for x in sorted(c, key=lambda v: order[v]):
            missing = set(tau(scenario, x)) - c
            if missing:
                out.append(
                    SecurityViolation(
                        "propagation",
                        (tuple(sorted(c, key=order.get)), x),
                        f"bridge measurements {format_set(missing, order)} of {x} are outside facet {format_set(c, order)}",
                    )
                )
    closures = {x: tau_bar(scenario, x) for x in scenario.measurements}
    for x, y in itertools.combinations(scenario.measurements, 2):
        if closures[x].union(closures[y]) is None:
            for c in scenario.cover.sorted(order):
                if x in c and y in c:
                    out.append(
                        SecurityViolation(
                            "consistency",
                            (x, y, tuple(sorted(c, key=order.get))),
                            f"{x} and {y} have inconsistent ancestry but share facet {format_set(c, order)}",
                        )
                    )
    try:
        game = associated_game(scenario)
    except ScenarioError as exc:
        out.append(SecurityViolation("maximality", (), f"associated game cannot be built: {exc}"))
    else:
        realized = natural_cover(game)
        if realized != scenario.cover:
            extra = realized.facets - scenario.cover.facets
            lacking = scenario.cover.facets - realized.facets
            out.append(
                SecurityViolation(
                    "maximality",
                    (
                        tuple(tuple(sorted(f, key=order.get)) for f in Cover(extra).sorted(order)),
                        tuple(tuple(sorted(f, key=order.get)) for f in Cover(lacking).sorted(order)),
                    ),
                    "cover differs from the largest cover with the same local restrictions"
                    f" (expected {Cover(realized.facets).format(order)})",
                )
            )
    return SecurityReport(tuple(out))


def _possible_closures(scenario: Scenario) -> dict[str, list[EventSet]]:
    """For every measurement, the consistent ancestries under which it can be enabled."""
    result: dict[str, list[EventSet]] = {}
    visiting: set[str] = set()

    def go(x: str) -> list[EventSet]:
        if x in result:
            return result[x]
        if x in visiting:
            return []
        visiting.add(x)
        found: set[EventSet] = set()
        for t in scenario.bridges(x):
            partial = [t]
            for y in t:
                nxt = []
                for acc in partial:
                    for cl in go(y):
                        merged = acc.union(cl)
                        if merged is not None:
                            nxt.append(merged)
                partial = nxt
            found.update(partial)
        visiting.discard(x)
        result[x] = sorted(found, key=scenario.events_key)
        return result[x]

    for x in scenario.measurements:
        go(x)
    return result


def is_clean(scenario: Scenario) -> bool:
    """Every measurement can be enabled by some consistent ancestry."""
    closures = _possible_closures(scenario)
    return all(closures[x] for x in scenario.measurements)


def prune_unused_settings(scenario: Scenario) -> Scenario:
    """Remove measurements that can never be enabled, repeating until none are left."""
    current = scenario
    while True:
        closures = _possible_closures(current)
        dead = {x for x in current.measurements if not closures[x]}
        if not dead:
            return current
        keep = tuple(x for x in current.measurements if x not in dead)
        current = Scenario(
            measurements=keep,
            outcomes={x: current.outcomes[x] for x in keep},
            enabling=frozenset((t, x) for t, x in current.enabling if x not in dead and not (set(t) & dead)),
            cover=Cover(facets(f - dead for f in current.cover.facets)),
        )


# -- scenario histories ----------------------------------------------------------------


@dataclass(frozen=True)
class ScenarioHistory:
    """Context choices at reached enabling event sets, plus the events observed."""

    choices: FrozenMap  # EventSet -> context (frozenset of measurements)
    events: EventSet

    def size(self) -> int:
        return len(self.choices) + len(self.events)


def enumerate_scenario_histories(scenario: Scenario, closed: bool = True, complete: bool = False) -> list[ScenarioHistory]:
    """Histories of an acyclic scenario with unique causal bridges.

    A context may be chosen at an enabling event set only once all its events
    have occurred; each observed event belongs to the context chosen at its
    bridge.  ``closed`` histories carry out every measurement of each chosen
    context; ``complete`` ones also make a choice at every reached event set.
    """
    lhs = list(scenario.enabling_sets)
    restrictions = {t: local_cover_restriction(scenario, t).sorted(scenario.order) for t in lhs}
    bridge = {x: tau(scenario, x) for x in scenario.measurements}
    out: list[ScenarioHistory] = []

    def ready(t: EventSet, settled: set) -> bool:
        return all(y in settled for y in t)

    def step(pending: list, choices: dict, events: dict, settled: set):
        idx = next((k for k, t in enumerate(pending) if ready(t, settled)), None)
        if idx is None:
            if not pending:
                out.append(ScenarioHistory(FrozenMap(choices), EventSet(events)))
            else:
                # remaining event sets wait on measurements that were never carried out
                step([], choices, events, settled | {y for t in pending for y in t})
            return
        t = pending[idx]
        rest = pending[:idx] + pending[idx + 1:]
        targets = {x for x, b in bridge.items() if b == t}
        reached = all(events.get(y) == o for y, o in t.items())
        if not reached or not complete:
            step(rest, choices, events, settled | targets)
        if not reached:
            return
        for c in restrictions[t]:
            choices[t] = c
            members = sorted(c, key=scenario.order.get)
            per_x = []
            for x in members:
                opts = [(x, o) for o in scenario.sorted_outcomes(x)]
                if not closed:
                    opts = [None] + opts
                per_x.append(opts)
            for combo in itertools.product(*per_x):
                assigned = [p for p in combo if p is not None]
                for x, o in assigned:
                    events[x] = o
                step(rest, choices, events, settled | targets)
                for x, _ in assigned:
                    del events[x]
            del choices[t]

    step(lhs, {}, {}, set())
    # the "never reached" branch can produce duplicates when settling is deferred
    unique = list(dict.fromkeys(out))
    return unique


def describe(scenario: Scenario) -> str:
    return (
        f"scenario with measurements {format_set(scenario.measurements, scenario.order)},"
        f" {len(scenario.enabling)} enabling relations, cover {scenario.format_cover()}"
    )


__all__ = [
    "BridgeReport",
    "Scenario",
    "ScenarioHistory",
    "SecurityReport",
    "SecurityViolation",
    "check_acyclic",
    "check_causally_secured",
    "check_unique_causal_bridges",
    "dependency_graph",
    "enabled",
    "enumerate_scenario_histories",
    "is_clean",
    "local_cover_restriction",
    "local_cover_restriction_formula",
    "prune_unused_settings",
    "tau",
    "tau_bar",
]
