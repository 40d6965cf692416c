"""Spacetime games: structure, histories, validity, alternation and natural covers."""

from __future__ import annotations

import heapq
import itertools
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterator

from ._maps import Action, FrozenMap, History, action_key, format_action, format_set
from .cover import Cover, facets
from .errors import (
    CyclicGraph,
    EdgeLabelNotAvailable,
    EmptyActionSet,
    GameStructureError,
    InfoSetOwnerMismatch,
    NotAlternating,
)

NATURE = "Alfred"
OBSERVER = "Bob"

ALTERNATION_RULES = ("2-PLAYERS", "BIPARTITE", "EVEN", "BOB-S", "BOB-A", "BA1", "BA2", "AB1", "AB2")


def _find_cycle(nodes: Iterable, succs: Mapping) -> list:
    color = {n: 0 for n in nodes}
    stack: list = []

    def visit(n):
        color[n] = 1
        stack.append(n)
        for m in sorted(succs.get(n, ()), key=str):
            if color[m] == 1:
                return stack[stack.index(m):] + [m]
            if color[m] == 0:
                found = visit(m)
                if found:
                    return found
        stack.pop()
        color[n] = 2
        return None

    for n in sorted(color, key=str):
        if color[n] == 0:
            found = visit(n)
            if found:
                return found
    return []


@dataclass(frozen=True)
class SpacetimeGame:
    """A directed acyclic graph of decision nodes with players, actions and information sets.

    Instances are immutable and always structurally valid: the constructor
    rejects cycles, edge labels outside the source's action set, empty action
    sets and information sets mixing owners or action sets.  Whether the
    declared outcomes are exactly the complete histories is checked separately
    by :func:`validate`.  Leaving ``outcomes`` as ``None`` computes them.
    """

    nodes: frozenset[str]
    edges: frozenset[tuple[str, str]]
    owner: Mapping[str, str]
    available: Mapping[str, frozenset]
    edge_label: Mapping[tuple[str, str], Action]
    info_sets: Mapping[str, frozenset[str]]
    outcomes: frozenset[History] | None = None
    players: frozenset[str] | None = None
    actions: frozenset | None = None
    nature: str = NATURE
    observer: str = OBSERVER

    def __post_init__(self):
        set_ = lambda name, value: object.__setattr__(self, name, value)  # noqa: E731
        set_("nodes", frozenset(self.nodes))
        set_("edges", frozenset(tuple(e) for e in self.edges))
        set_("owner", FrozenMap(self.owner))
        set_("available", FrozenMap((n, frozenset(a)) for n, a in self.available.items()))
        set_("edge_label", FrozenMap((tuple(e), a) for e, a in self.edge_label.items()))
        set_("info_sets", FrozenMap((i, frozenset(ns)) for i, ns in self.info_sets.items()))
        if self.players is None:
            set_("players", frozenset(self.owner.values()))
        else:
            set_("players", frozenset(self.players))
        if self.actions is None:
            set_("actions", frozenset().union(*self.available.values()) if self.available else frozenset())
        else:
            set_("actions", frozenset(self.actions))
        self._check_structure()
        if self.outcomes is None:
            set_("outcomes", frozenset(enumerate_complete_histories(self)))
        else:
            outs = frozenset(h if isinstance(h, History) else History(h) for h in self.outcomes)
            for h in outs:
                for i, a in h.items():
                    if i not in self.info_sets:
                        raise GameStructureError(f"outcome {h} assigns unknown information set {i}")
                    if a not in self.info_available(i):
                        raise EdgeLabelNotAvailable(f"outcome {h} assigns {format_action(a)} outside the actions of {i}")
            set_("outcomes", outs)

    def _check_structure(self):
        for n in self.nodes:
            if n not in self.owner:
                raise GameStructureError(f"node {n} has no owner")
            if n not in self.available:
                raise GameStructureError(f"node {n} has no action set")
            if not self.available[n]:
                raise EmptyActionSet(f"node {n} has an empty action set")
            if self.owner[n] not in self.players:
                raise GameStructureError(f"node {n} is owned by undeclared player {self.owner[n]}")
        extra = (set(self.owner) | set(self.available)) - self.nodes
        if extra:
            raise GameStructureError(f"owner/action maps mention unknown nodes: {sorted(extra)}")
        for src, dst in self.edges:
            if src not in self.nodes or dst not in self.nodes:
                raise GameStructureError(f"edge ({src}, {dst}) references an unknown node")
            if (src, dst) not in self.edge_label:
                raise GameStructureError(f"edge ({src}, {dst}) has no label")
            label = self.edge_label[(src, dst)]
            if label not in self.available[src]:
                raise EdgeLabelNotAvailable(
                    f"edge ({src}, {dst}) is labeled {format_action(label)}, not an action of {src}"
                )
        if set(self.edge_label) - self.edges:
            raise GameStructureError("edge labels given for non-edges")
        seen: dict[str, str] = {}
        for i, members in self.info_sets.items():
            if not members:
                raise GameStructureError(f"information set {i} is empty")
            for n in members:
                if n not in self.nodes:
                    raise GameStructureError(f"information set {i} contains unknown node {n}")
                if n in seen:
                    raise GameStructureError(f"node {n} belongs to information sets {seen[n]} and {i}")
                seen[n] = i
            owners = {self.owner[n] for n in members}
            acts = {self.available[n] for n in members}
            if len(owners) > 1 or len(acts) > 1:
                raise InfoSetOwnerMismatch(f"information set {i} mixes owners or action sets")
        missing = self.nodes - set(seen)
        if missing:
            raise GameStructureError(f"nodes outside every information set: {sorted(missing)}")
        succs: dict[str, set] = {}
        for s, d in self.edges:
            succs.setdefault(s, set()).add(d)
        if self._levels_or_none(succs) is None:
            raise CyclicGraph(_find_cycle(self.nodes, succs))

    def _levels_or_none(self, succs):
        indeg = {n: 0 for n in self.nodes}
        for s, d in self.edges:
            indeg[d] += 1
        level = {n: 0 for n in self.nodes}
        ready = [n for n, k in indeg.items() if k == 0]
        done = 0
        while ready:
            n = ready.pop()
            done += 1
            for m in succs.get(n, ()):
                level[m] = max(level[m], level[n] + 1)
                indeg[m] -= 1
                if indeg[m] == 0:
                    ready.append(m)
        return level if done == len(self.nodes) else None

    # -- derived structure -------------------------------------------------

    @cached_property
    def predecessors(self) -> Mapping[str, frozenset[str]]:
        preds: dict[str, set] = {n: set() for n in self.nodes}
        for s, d in self.edges:
            preds[d].add(s)
        return FrozenMap((n, frozenset(p)) for n, p in preds.items())

    @cached_property
    def successors(self) -> Mapping[str, frozenset[str]]:
        succs: dict[str, set] = {n: set() for n in self.nodes}
        for s, d in self.edges:
            succs[s].add(d)
        return FrozenMap((n, frozenset(p)) for n, p in succs.items())

    @cached_property
    def iota(self) -> Mapping[str, str]:
        """Node -> information set containing it."""
        return FrozenMap((n, i) for i, ns in self.info_sets.items() for n in ns)

    @cached_property
    def level(self) -> Mapping[str, int]:
        return FrozenMap(self._levels_or_none(self.successors))

    @cached_property
    def info_set_order(self) -> tuple[str, ...]:
        """Info sets ordered by level of their earliest node, ties by id."""
        return tuple(sorted(self.info_sets, key=lambda i: (min(self.level[n] for n in self.info_sets[i]), i)))

    @cached_property
    def info_rank(self) -> Mapping[str, int]:
        return FrozenMap((i, k) for k, i in enumerate(self.info_set_order))

    @cached_property
    def node_order(self) -> tuple[str, ...]:
        return tuple(sorted(self.nodes, key=lambda n: (self.level[n], n)))

    @cached_property
    def _activation_order(self) -> tuple[str, ...] | None:
        """Info sets in an order where every dependency comes first; None if impossible."""
        deps = {i: set() for i in self.info_sets}
        for i, ns in self.info_sets.items():
            for n in ns:
                for m in self.predecessors[n]:
                    deps[i].add(self.iota[m])
        if any(i in d for i, d in deps.items()):
            return None
        rdeps: dict[str, set] = {i: set() for i in self.info_sets}
        for i, d in deps.items():
            for j in d:
                rdeps[j].add(i)
        remaining = {i: len(d) for i, d in deps.items()}
        heap = [(self.info_rank[i], i) for i, k in remaining.items() if k == 0]
        heapq.heapify(heap)
        out = []
        while heap:
            _, i = heapq.heappop(heap)
            out.append(i)
            for j in rdeps[i]:
                remaining[j] -= 1
                if remaining[j] == 0:
                    heapq.heappush(heap, (self.info_rank[j], j))
        return tuple(out) if len(out) == len(self.info_sets) else None

    def info_owner(self, i: str) -> str:
        return self.owner[next(iter(self.info_sets[i]))]

    def info_available(self, i: str) -> frozenset:
        return self.available[next(iter(self.info_sets[i]))]

    def nodes_of(self, player: str) -> frozenset[str]:
        return frozenset(n for n in self.nodes if self.owner[n] == player)

    def info_sets_of(self, player: str) -> tuple[str, ...]:
        return tuple(i for i in self.info_set_order if self.info_owner(i) == player)

    @property
    def roots(self) -> frozenset[str]:
        return frozenset(n for n in self.nodes if not self.predecessors[n])

    @property
    def leaves(self) -> frozenset[str]:
        return frozenset(n for n in self.nodes if not self.successors[n])

    def parent(self, node: str) -> str:
        preds = self.predecessors[node]
        if len(preds) != 1:
            raise GameStructureError(f"node {node} has {len(preds)} parents, not exactly one")
        return next(iter(preds))

    def label(self, src: str, dst: str) -> Action:
        return self.edge_label[(src, dst)]

    def node_activated(self, node: str, history: Mapping) -> bool:
        return all(history.get(self.iota[m]) == self.edge_label[(m, node)] for m in self.predecessors[node])

    def activated(self, info_set: str, history: Mapping) -> bool:
        return any(self.node_activated(n, history) for n in self.info_sets[info_set])

    def history_key(self, history: Mapping) -> tuple:
        return tuple((1, action_key(history[i])) if i in history else (0,) for i in self.info_set_order)

    def format_history(self, history: Mapping) -> str:
        items = sorted(history.items(), key=lambda kv: self.info_rank[kv[0]])
        return "{" + ", ".join(f"{i}={format_action(a)}" for i, a in items) + "}"

    def sorted_actions(self, info_set: str) -> list:
        return sorted(self.info_available(info_set), key=action_key)


def build_game(spec: Mapping[str, Any]) -> SpacetimeGame:
    """Build a game from a plain description.

    ``spec`` keys: ``nodes`` (mapping node -> {owner, info_set, actions} or a
    list of ``(node, owner, info_set, actions)`` rows), ``edges`` (list of
    ``(source, target, label)``), and optionally ``outcomes``, ``players``,
    ``nature`` and ``observer``.  When ``info_set`` is omitted a node forms
    its own singleton information set named after it.
    """
    raw_nodes = spec["nodes"]
    rows = []
    if isinstance(raw_nodes, Mapping):
        for n, d in raw_nodes.items():
            rows.append((n, d["owner"], d.get("info_set", n), d["actions"]))
    else:
        for row in raw_nodes:
            rows.append(tuple(row))
    owner, available, info_sets = {}, {}, {}
    for n, p, i, acts in rows:
        if n in owner:
            raise GameStructureError(f"duplicate node {n}")
        owner[n] = p
        available[n] = frozenset(acts)
        info_sets.setdefault(i, set()).add(n)
    edges, labels = set(), {}
    for s, d, a in spec.get("edges", ()):
        if (s, d) in edges:
            raise GameStructureError(f"duplicate edge ({s}, {d})")
        edges.add((s, d))
        labels[(s, d)] = a
    outcomes = spec.get("outcomes")
    return SpacetimeGame(
        nodes=frozenset(owner),
        edges=frozenset(edges),
        owner=owner,
        available=available,
        edge_label=labels,
        info_sets={i: frozenset(ns) for i, ns in info_sets.items()},
        outcomes=None if outcomes is None else frozenset(History(h) for h in outcomes),
        players=spec.get("players"),
        nature=spec.get("nature", NATURE),
        observer=spec.get("observer", OBSERVER),
    )


# -- histories ---------------------------------------------------------------


def is_history(game: SpacetimeGame, h: Mapping) -> bool:
    return all(i in game.info_sets and a in game.info_available(i) and game.activated(i, h) for i, a in h.items())


def is_complete_history(game: SpacetimeGame, h: Mapping) -> bool:
    if not is_history(game, h):
        return False
    return all((i in h) == game.activated(i, h) for i in game.info_sets)


def _enumerate(game: SpacetimeGame, complete: bool) -> list[History]:
    order = game._activation_order
    found: list[History] = []
    if order is None:
        # dependency cycle between information sets: brute force and filter
        options = [[None] + game.sorted_actions(i) for i in game.info_set_order]
        check = is_complete_history if complete else is_history
        for combo in itertools.product(*options):
            h = History((i, a) for i, a in zip(game.info_set_order, combo) if a is not None)
            if check(game, h):
                found.append(h)
    else:
        acts = {i: game.sorted_actions(i) for i in order}

        def extend(k: int, current: dict):
            if k == len(order):
                found.append(History(current))
                return
            i = order[k]
            if game.activated(i, current):
                if not complete:
                    extend(k + 1, current)
                for a in acts[i]:
                    current[i] = a
                    extend(k + 1, current)
                    del current[i]
            else:
                extend(k + 1, current)

        extend(0, {})
    found.sort(key=game.history_key)
    return found


def enumerate_complete_histories(game: SpacetimeGame) -> list[History]:
    """All complete histories, sorted by the canonical information-set order."""
    return _enumerate(game, complete=True)


def enumerate_histories(game: SpacetimeGame) -> list[History]:
    """All histories, partial ones included."""
    return _enumerate(game, complete=False)


def support(history: Mapping) -> frozenset:
    return frozenset(history)


# -- validity ----------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    missing: tuple[History, ...] = ()
    extra: tuple[History, ...] = ()
    unused_info_sets: tuple[str, ...] = ()
    unused_actions: tuple = ()
    messages: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


def validate(game: SpacetimeGame) -> ValidationReport:
    """Compare declared outcomes with the complete histories and look for unused parts."""
    computed = enumerate_complete_histories(game)
    computed_set = set(computed)
    missing = tuple(h for h in computed if h not in game.outcomes)
    extra = tuple(sorted((h for h in game.outcomes if h not in computed_set), key=game.history_key))
    used_sets = set().union(*(h.keys() for h in computed)) if computed else set()
    unused_sets = tuple(i for i in game.info_set_order if i not in used_sets)
    used_actions = {a for h in computed for a in h.values()}
    unused_actions = tuple(sorted(game.actions - used_actions, key=action_key))
    messages = []
    for h in missing:
        messages.append(f"missing complete history {game.format_history(h)}")
    for h in extra:
        messages.append(f"declared outcome is not a complete history: {game.format_history(h)}")
    if unused_sets:
        messages.append(
            "information sets never activated: " + ", ".join(unused_sets) + " (remove them with prune_unused_info_sets)"
        )
    if unused_actions:
        messages.append("actions never used: " + ", ".join(format_action(a) for a in unused_actions))
    valid = not (missing or extra or unused_sets or unused_actions)
    return ValidationReport(valid, missing, extra, unused_sets, unused_actions, tuple(messages))


def prune_unused_info_sets(game: SpacetimeGame) -> SpacetimeGame:
    """Drop information sets no complete history activates, with their nodes and edges."""
    histories = enumerate_complete_histories(game)
    used = set().union(*(h.keys() for h in histories)) if histories else set()
    keep_nodes = frozenset(n for n in game.nodes if game.iota[n] in used)
    edges = frozenset(e for e in game.edges if e[0] in keep_nodes and e[1] in keep_nodes)
    return SpacetimeGame(
        nodes=keep_nodes,
        edges=edges,
        owner={n: game.owner[n] for n in keep_nodes},
        available={n: game.available[n] for n in keep_nodes},
        edge_label={e: game.edge_label[e] for e in edges},
        info_sets={i: ns for i, ns in game.info_sets.items() if i in used},
        players=frozenset(game.owner[n] for n in keep_nodes),
        nature=game.nature,
        observer=game.observer,
    )


# -- alternation ---------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    rule: str
    ids: tuple
    detail: str = ""


@dataclass(frozen=True)
class AlternationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def failed_rules(self) -> frozenset[str]:
        return frozenset(v.rule for v in self.violations)

    def __bool__(self) -> bool:
        return self.passed


def check_alternating(game: SpacetimeGame, allow_one_unused_action: bool = False) -> AlternationReport:
    """Evaluate the nine alternation rules literally.

    With ``allow_one_unused_action`` each observer node may leave at most one
    of its actions off every outgoing edge (relaxed BOB-A).
    """
    A, B = game.nature, game.observer
    out: list[Violation] = []
    if set(game.players) != {A, B}:
        out.append(Violation("2-PLAYERS", tuple(sorted(game.players)), f"players must be exactly {A} and {B}"))
    for s, d in sorted(game.edges):
        pair = (game.owner[s], game.owner[d])
        if pair not in ((A, B), (B, A)):
            out.append(Violation("BIPARTITE", (s, d), f"edge joins {pair[0]} to {pair[1]}"))
    for n in sorted(game.roots):
        if game.owner[n] != B:
            out.append(Violation("EVEN", (n,), "root not played by the observer"))
    for n in sorted(game.leaves):
        if game.owner[n] != A:
            out.append(Violation("EVEN", (n,), "leaf not played by nature"))
    for i in game.info_set_order:
        if game.info_owner(i) == B and len(game.info_sets[i]) != 1:
            out.append(Violation("BOB-S", (i,), "observer information set is not a singleton"))
    bob_nodes = sorted(game.nodes_of(B))
    alf_nodes = sorted(game.nodes_of(A))
    for t in bob_nodes:
        used = {game.edge_label[(t, n)] for n in game.successors[t] if game.owner[n] == A}
        unused = game.available[t] - used
        limit = 1 if allow_one_unused_action else 0
        if len(unused) > limit:
            for c in sorted(unused, key=action_key):
                out.append(Violation("BOB-A", (t, c), f"action {format_action(c)} labels no edge"))
    for n in alf_nodes:
        parents = [t for t in game.predecessors[n] if game.owner[t] == B]
        if len(parents) != 1 or len(game.predecessors[n]) != 1:
            out.append(Violation("BA1", (n,), f"nature node has {len(game.predecessors[n])} parents"))
    for t in bob_nodes:
        kids = sorted(game.successors[t])
        for n, m in itertools.combinations(kids, 2):
            if game.edge_label[(t, n)] == game.edge_label[(t, m)] and game.iota[n] == game.iota[m]:
                out.append(Violation("BA2", (t, n, m), "same context reaches one information set twice"))
    for x in game.info_set_order:
        if game.info_owner(x) != A:
            continue
        members = sorted(game.info_sets[x])
        ref = members[0]
        for m in members[1:]:
            if game.successors[m] != game.successors[ref]:
                out.append(Violation("AB1", (x, ref, m), "nodes of one information set have different successors"))
            elif any(game.edge_label[(m, u)] != game.edge_label[(ref, u)] for u in game.successors[ref]):
                out.append(Violation("AB1", (x, ref, m), "nodes of one information set label edges differently"))
    bridges: dict = {}
    for t in bob_nodes:
        bridge = frozenset((m, game.edge_label[(m, t)]) for m in game.predecessors[t])
        bridges.setdefault(bridge, []).append(t)
    for group in bridges.values():
        for t, u in itertools.combinations(group, 2):
            out.append(Violation("AB2", (t, u), "observer nodes share a causal bridge"))
    return AlternationReport(tuple(out))


def is_alternating(game: SpacetimeGame) -> bool:
    return validate(game).valid and check_alternating(game).passed


def require_alternating(game: SpacetimeGame) -> None:
    report = check_alternating(game)
    if not report.passed:
        raise NotAlternating(report)
    v = validate(game)
    if v.missing or v.extra:
        raise NotAlternating(AlternationReport((Violation("VALID", (), "; ".join(v.messages)),)))


# -- covers and contexts ----------------------------------------------------------


def natural_cover(game: SpacetimeGame) -> Cover:
    """Facets of the nature-owned supports of all outcomes."""
    nature_sets = {i for i in game.info_sets if game.info_owner(i) == game.nature}
    return Cover(facets(frozenset(h) & nature_sets for h in game.outcomes))


def context_of(game: SpacetimeGame, node: str, action: Action) -> frozenset[str]:
    """Information sets reached from an observer node through edges labeled ``action``."""
    return frozenset(game.iota[n] for n in game.successors[node] if game.edge_label[(node, n)] == action)


def canonicalize_contexts(game: SpacetimeGame) -> SpacetimeGame:
    """Rename every observer action to the set of information sets it activates."""
    require_alternating(game)
    rename: dict[str, dict] = {}
    for t in game.nodes_of(game.observer):
        mapping = {c: context_of(game, t, c) for c in game.available[t]}
        if len(set(mapping.values())) != len(mapping):
            raise GameStructureError(f"two actions of {t} activate the same information sets; renaming is not injective")
        rename[t] = mapping
    available = {n: frozenset(rename[n][a] for a in acts) if n in rename else acts for n, acts in game.available.items()}
    labels = {(s, d): rename[s][a] if s in rename else a for (s, d), a in game.edge_label.items()}
    outcomes = frozenset(
        History((i, rename[next(iter(game.info_sets[i]))][a] if game.info_owner(i) == game.observer else a) for i, a in h.items())
        for h in game.outcomes
    )
    return SpacetimeGame(
        nodes=game.nodes,
        edges=game.edges,
        owner=game.owner,
        available=available,
        edge_label=labels,
        info_sets=game.info_sets,
        outcomes=outcomes,
        players=game.players,
        nature=game.nature,
        observer=game.observer,
    )


# -- extensive form --------------------------------------------------------------


@dataclass
class TreeNode:
    id: int
    history: History
    info_set: str | None = None
    player: str | None = None
    children: dict = field(default_factory=dict)

    @property
    def is_leaf(self) -> bool:
        return self.info_set is None


@dataclass
class ExtensiveForm:
    """Game tree whose decision nodes are tagged with spacetime information sets."""

    nodes: list[TreeNode]

    @property
    def root(self) -> TreeNode:
        return self.nodes[0]

    @property
    def leaves(self) -> list[TreeNode]:
        return [n for n in self.nodes if n.is_leaf]

    @property
    def information_sets(self) -> dict[str, list[int]]:
        groups: dict[str, list[int]] = {}
        for n in self.nodes:
            if n.info_set is not None:
                groups.setdefault(n.info_set, []).append(n.id)
        return groups

    @property
    def perfect_information(self) -> bool:
        return all(len(ids) == 1 for ids in self.information_sets.values())

    def depth(self) -> int:
        def d(n: TreeNode) -> int:
            return 0 if n.is_leaf else 1 + max(d(self.nodes[c]) for c in n.children.values())

        return d(self.root)

    def iter_paths(self) -> Iterator[list[str]]:
        def walk(n: TreeNode, path):
            if n.is_leaf:
                yield path
            for c in n.children.values():
                yield from walk(self.nodes[c], path + [n.info_set])

        yield from walk(self.root, [])


def to_extensive_form(game: SpacetimeGame) -> ExtensiveForm:
    """Unfold the game into a tree: at each step the first activated, unassigned
    information set (canonical order) moves; leaves are complete histories."""
    nodes: list[TreeNode] = []

    def build(current: dict) -> int:
        node = TreeNode(len(nodes), History(current))
        nodes.append(node)
        pending = [i for i in game.info_set_order if i not in current and game.activated(i, current)]
        if pending:
            i = pending[0]
            node.info_set = i
            node.player = game.info_owner(i)
            for a in game.sorted_actions(i):
                current[i] = a
                node.children[a] = build(current)
                del current[i]
        return node.id

    build({})
    return ExtensiveForm(nodes)


def describe(game: SpacetimeGame) -> str:
    sets = ", ".join(f"{i}:{game.info_owner(i)}" for i in game.info_set_order)
    return f"game with {len(game.nodes)} nodes, info sets [{sets}], {len(game.outcomes)} outcomes"


__all__ = [
    "ALTERNATION_RULES",
    "AlternationReport",
    "ExtensiveForm",
    "NATURE",
    "OBSERVER",
    "SpacetimeGame",
    "TreeNode",
    "ValidationReport",
    "Violation",
    "build_game",
    "canonicalize_contexts",
    "check_alternating",
    "context_of",
    "enumerate_complete_histories",
    "enumerate_histories",
    "format_set",
    "is_alternating",
    "is_complete_history",
    "is_history",
    "natural_cover",
    "prune_unused_info_sets",
    "to_extensive_form",
    "validate",
]
