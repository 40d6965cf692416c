"""Named example games, scenarios and empirical models, plus random generators for tests."""

from __future__ import annotations

import random
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ._maps import EventSet, FrozenMap
from .categories import GameMorphism, functor_F_object, game_scenario
from .cover import Cover, facets
from .empirical import EmpiricalModel, make_model, model_from_section
from .game import NATURE, OBSERVER, SpacetimeGame, build_game, enumerate_complete_histories
from .scenario import Scenario

BITS = ("0", "1")


@dataclass
class CorpusEntry:
    name: str
    game: SpacetimeGame | None = None
    scenario: Scenario | None = None
    models: dict[str, EmpiricalModel] = field(default_factory=dict)
    expected: dict[str, Any] = field(default_factory=dict)
    in_scope: bool = True
    description: str = ""


def ctx(*names: str) -> frozenset:
    return frozenset(names)


def _single_observer_game(root: str, contexts: Sequence[Sequence[str]], outcomes=BITS, labels: Sequence | None = None) -> SpacetimeGame:
    """One observer root choosing among contexts; one nature node per (measurement, context)."""
    nodes = {}
    edges = []
    acts = [labels[k] if labels else ctx(*c) for k, c in enumerate(contexts)]
    nodes[root] = {"owner": OBSERVER, "actions": acts}
    for c, a in zip(contexts, acts):
        tag = "".join(c)
        for x in c:
            nid = f"{x}@{tag}"
            nodes[nid] = {"owner": NATURE, "info_set": x, "actions": outcomes}
            edges.append((root, nid, a))
    return build_game({"nodes": nodes, "edges": edges})


def minimal_game(opaque: bool = False) -> SpacetimeGame:
    return build_game(
        {
            "nodes": {
                "B": {"owner": OBSERVER, "actions": ["c"] if opaque else [ctx("x")]},
                "x": {"owner": NATURE, "actions": BITS},
            },
            "edges": [("B", "x", "c" if opaque else ctx("x"))],
        }
    )


def minimal() -> CorpusEntry:
    g = minimal_game()
    return CorpusEntry(
        "minimal",
        g,
        functor_F_object(g),
        expected={"complete_histories": 2, "histories": 4, "cover": Cover.of(["x"])},
        description="one observer node choosing the only context {x}; nature answers 0 or 1",
    )


def bell_two_observer() -> CorpusEntry:
    nodes = {
        "A": {"owner": OBSERVER, "actions": [ctx("X"), ctx("Y")]},
        "B": {"owner": OBSERVER, "actions": [ctx("W"), ctx("Z")]},
    }
    for x in "XYWZ":
        nodes[x] = {"owner": NATURE, "actions": BITS}
    edges = [("A", "X", ctx("X")), ("A", "Y", ctx("Y")), ("B", "W", ctx("W")), ("B", "Z", ctx("Z"))]
    g = build_game({"nodes": nodes, "edges": edges})
    return CorpusEntry(
        "bell_two_observer",
        g,
        game_scenario(g),
        expected={
            "complete_histories": 16,
            "info_sets": frozenset("ABXYWZ"),
            "cover": Cover.of("XW", "XZ", "YW", "YZ"),
            "failed_rules": frozenset({"AB2"}),
        },
        in_scope=False,
        description="two spacelike-separated observers, each with singleton contexts (not alternating)",
    )


CYCLIC3_CONTEXTS = (("X", "Y"), ("X", "Z"), ("Y", "Z"))
CYCLIC4_CONTEXTS = (("X", "W"), ("W", "Y"), ("Y", "Z"), ("Z", "X"))


def cyclic3() -> CorpusEntry:
    g = _single_observer_game("B", CYCLIC3_CONTEXTS)
    return CorpusEntry(
        "cyclic3",
        g,
        functor_F_object(g),
        expected={"complete_histories": 12, "cover": Cover.of("XY", "XZ", "YZ")},
        description="one observer picks two of three measurements",
    )


def cyclic4_game(opaque: bool = False) -> SpacetimeGame:
    labels = ["a1", "a2", "a3", "a4"] if opaque else None
    return _single_observer_game("A", CYCLIC4_CONTEXTS, labels=labels)


def cyclic4() -> CorpusEntry:
    g = cyclic4_game()
    s = functor_F_object(g)
    return CorpusEntry(
        "cyclic4",
        g,
        s,
        models=bell_models(s),
        expected={"complete_histories": 16, "cover": Cover.of("XW", "XZ", "YW", "YZ"), "alternating": True},
        description="single observer picking one of the four contexts of the Bell cycle",
    )


def adaptive_game() -> SpacetimeGame:
    nodes = {
        "A": {"owner": OBSERVER, "actions": [ctx("X"), ctx("Y")]},
        "X": {"owner": NATURE, "actions": BITS},
        "Y": {"owner": NATURE, "actions": BITS},
        "B": {"owner": OBSERVER, "actions": [ctx("W"), ctx("Z")]},
        "W": {"owner": NATURE, "actions": BITS},
        "Z": {"owner": NATURE, "actions": BITS},
    }
    edges = [
        ("A", "X", ctx("X")),
        ("A", "Y", ctx("Y")),
        ("Y", "B", "0"),
        ("B", "W", ctx("W")),
        ("B", "Z", ctx("Z")),
    ]
    return build_game({"nodes": nodes, "edges": edges})


def adaptive() -> CorpusEntry:
    g = adaptive_game()
    return CorpusEntry(
        "adaptive",
        g,
        functor_F_object(g),
        expected={
            "complete_histories": 7,
            "cover": Cover.of("X", "YW", "YZ"),
            "tau_W": EventSet({"Y": "0"}),
            "perfect_information": True,
        },
        description="the second observer measures only after outcome 0 of Y",
    )


def gp_game() -> SpacetimeGame:
    nodes = {"A": {"owner": OBSERVER, "actions": [ctx("X"), ctx("Y")]}}
    edges = []
    for x in "XY":
        nodes[x] = {"owner": NATURE, "actions": BITS}
        edges.append(("A", x, ctx(x)))
        for o in BITS:
            tag = f"{x}{o}"
            b = f"B.{tag}"
            z, w = f"Z.{tag}", f"W.{tag}"
            nodes[b] = {"owner": OBSERVER, "actions": [ctx(z), ctx(w)]}
            nodes[z] = {"owner": NATURE, "actions": BITS}
            nodes[w] = {"owner": NATURE, "actions": BITS}
            edges += [(x, b, o), (b, z, ctx(z)), (b, w, ctx(w))]
    return build_game({"nodes": nodes, "edges": edges})


def gp() -> CorpusEntry:
    g = gp_game()
    return CorpusEntry(
        "gp",
        g,
        functor_F_object(g),
        expected={
            "complete_histories": 16,
            "nature_strategies": 1024,
            "reduced_nature_classes": 64,
            "second_stage_choices": 4,
            "second_stage_sets": 8,
        },
        description="temporal scenario: the second choice happens after the first outcome is known",
    )


def ghz_or_game() -> SpacetimeGame:
    """Reading of the OR-gate game: the first two inputs form a four-context cycle,
    and the third measurement setting is their parity, chosen after both outcomes."""
    ctxs = [(f"A{a}", f"B{b}") for a in "01" for b in "01"]
    nodes = {"R": {"owner": OBSERVER, "actions": [ctx(*c) for c in ctxs]}}
    edges = []
    for a in "01":
        for b in "01":
            c = ctx(f"A{a}", f"B{b}")
            na, nb = f"A{a}@{a}{b}", f"B{b}@{a}{b}"
            nodes[na] = {"owner": NATURE, "info_set": f"A{a}", "actions": BITS}
            nodes[nb] = {"owner": NATURE, "info_set": f"B{b}", "actions": BITS}
            edges += [("R", na, c), ("R", nb, c)]
            s = str(int(a) ^ int(b))
            for o1 in BITS:
                for o2 in BITS:
                    t = f"C@{a}{b}|{o1}{o2}"
                    nc = f"C{s}@{a}{b}|{o1}{o2}"
                    nodes[t] = {"owner": OBSERVER, "actions": [ctx(f"C{s}")]}
                    nodes[nc] = {"owner": NATURE, "info_set": f"C{s}", "actions": BITS}
                    edges += [(na, t, o1), (nb, t, o2), (t, nc, ctx(f"C{s}"))]
    return build_game({"nodes": nodes, "edges": edges})


def ghz_or() -> CorpusEntry:
    g = ghz_or_game()
    return CorpusEntry(
        "ghz_or",
        g,
        game_scenario(g),
        expected={"complete_histories": 32, "unique_bridges": False, "valid": True},
        in_scope=False,
        description="OR gate on a GHZ scenario; the third setting has several causal bridges",
    )


GHZ_CONTEXTS = (("X1", "X2", "X3"), ("X1", "Y2", "Y3"), ("Y1", "X2", "Y3"), ("Y1", "Y2", "X3"))


def ghz() -> CorpusEntry:
    g = _single_observer_game("B", GHZ_CONTEXTS)
    s = functor_F_object(g)
    return CorpusEntry(
        "ghz",
        g,
        s,
        models={"ghz": ghz_model(s)},
        expected={"complete_histories": 32, "possibilistic_section": False},
        description="three-party GHZ contexts flattened under one observer",
    )


# -- standard models --------------------------------------------------------------------------


def _pair_table(f, relation: str) -> dict:
    x, y = f
    half = Fraction(1, 2)
    if relation == "correlated":
        return {((x, "0"), (y, "0")): half, ((x, "1"), (y, "1")): half}
    if relation == "anticorrelated":
        return {((x, "0"), (y, "1")): half, ((x, "1"), (y, "0")): half}
    quarter = Fraction(1, 4)
    return {((x, a), (y, b)): quarter for a in BITS for b in BITS}


def pr_box_model(scenario: Scenario) -> EmpiricalModel:
    """Correlated on three Bell contexts, anticorrelated on {Y,Z}; uniform single marginals."""
    table = {}
    for f in (("X", "W"), ("X", "Z"), ("Y", "W"), ("Y", "Z")):
        rel = "anticorrelated" if f == ("Y", "Z") else "correlated"
        table[frozenset(f)] = _pair_table(f, rel)
    return make_model(scenario, table)


def classical_bell_model(scenario: Scenario) -> EmpiricalModel:
    """Uniform mix of the four strategies with X=W and Y=Z."""
    weights = {}
    for a in BITS:
        for b in BITS:
            weights[FrozenMap({"X": a, "W": a, "Y": b, "Z": b})] = Fraction(1, 4)
    return model_from_section(scenario, weights)


def ghz_model(scenario: Scenario) -> EmpiricalModel:
    """Possibilistic GHZ support: even parity on X1X2X3, odd parity on the other contexts."""
    table = {}
    for c in GHZ_CONTEXTS:
        want = 0 if c == GHZ_CONTEXTS[0] else 1
        rows = {}
        for bits in ((a, b, d) for a in BITS for b in BITS for d in BITS):
            rows[tuple(zip(c, bits))] = (sum(map(int, bits)) % 2) == want
        table[frozenset(c)] = rows
    return make_model(scenario, table, "possibility")


def bell_models(scenario: Scenario) -> dict[str, EmpiricalModel]:
    return {"classical-bell": classical_bell_model(scenario), "pr-box": pr_box_model(scenario)}


def standard_models() -> dict[str, EmpiricalModel]:
    s4 = functor_F_object(cyclic4_game())
    out = bell_models(s4)
    out["ghz"] = ghz_model(functor_F_object(_single_observer_game("B", GHZ_CONTEXTS)))
    return out


# -- registry ------------------------------------------------------------------------------------

ENTRIES: dict[str, Callable[[], CorpusEntry]] = {
    "minimal": minimal,
    "bell_two_observer": bell_two_observer,
    "cyclic3": cyclic3,
    "adaptive": adaptive,
    "cyclic4": cyclic4,
    "gp": gp,
    "ghz_or": ghz_or,
    "ghz": ghz,
}

ALIASES = {
    "fig1": "bell_two_observer",
    "fig2": "bell_two_observer",
    "bell": "bell_two_observer",
    "fig3": "cyclic3",
    "fig4": "cyclic3",
    "fig5": "adaptive",
    "fig6": "adaptive",
    "fig7": "cyclic4",
    "fig8": "cyclic4",
    "fig11": "gp",
    "fig12": "ghz_or",
}

MODEL_NAMES = ("classical-bell", "pr-box", "ghz")

_cache: dict[str, CorpusEntry] = {}


def get(name: str) -> CorpusEntry:
    key = ALIASES.get(name, name).replace("-", "_")
    if key not in ENTRIES:
        raise KeyError(f"unknown corpus entry {name!r}; known: {', '.join(sorted(ENTRIES))}")
    if key not in _cache:
        _cache[key] = ENTRIES[key]()
    return _cache[key]


def all_entries() -> list[CorpusEntry]:
    return [get(n) for n in ENTRIES]


def get_model(name: str) -> EmpiricalModel:
    models = standard_models()
    if name not in models:
        raise KeyError(f"unknown model {name!r}; known: {', '.join(sorted(models))}")
    return models[name]


# -- random generators ---------------------------------------------------------------------------


def _random_antichain(rng: random.Random, vertices: Sequence[str], max_size: int = 3) -> frozenset[frozenset]:
    faces = []
    for _ in range(rng.randint(1, 3)):
        k = rng.randint(1, min(max_size, len(vertices)))
        faces.append(frozenset(rng.sample(list(vertices), k)))
    covered = set().union(*faces)
    faces += [frozenset([v]) for v in vertices if v not in covered]
    return facets(faces)


def random_alternating_game(
    rng: random.Random,
    max_stages: int = 3,
    max_new: int = 3,
    max_outcomes: int = 2,
    opaque: bool | None = None,
) -> SpacetimeGame:
    """A small valid alternating game.

    Each stage adds an observer node whose bridge is part of a reachable
    outcome of the game built so far, and new nature information sets below it.
    """
    if opaque is None:
        opaque = rng.random() < 0.3
    counter = 0
    stages: list[tuple[EventSet, list[str], frozenset]] = []
    outcomes: dict[str, tuple[str, ...]] = {}
    game = None
    for k in range(rng.randint(1, max_stages)):
        if k == 0:
            t = EventSet()
        else:
            histories = enumerate_complete_histories(game)
            z = rng.choice(histories)
            alf = [i for i in z if i in outcomes]
            if not alf:
                break
            support = rng.sample(alf, rng.randint(1, min(2, len(alf))))
            t = EventSet((y, z[y]) for y in support)
            if any(t == s for s, _, _ in stages):
                continue
        new = []
        for _ in range(rng.randint(1, max_new)):
            new.append(f"m{counter}")
            outcomes[f"m{counter}"] = BITS if max_outcomes <= 2 else tuple(str(i) for i in range(rng.randint(2, max_outcomes)))
            counter += 1
        stages.append((t, new, _random_antichain(rng, new)))
        game = _game_from_stages(stages, outcomes, opaque)
    return game


def _game_from_stages(stages, outcomes, opaque: bool) -> SpacetimeGame:
    nodes, edges = {}, []
    owner_of = {}
    for k, (t, new, cover) in enumerate(stages):
        b = f"b{k}"
        ordered = sorted(cover, key=lambda c: sorted(c))
        labels = {c: (f"c{k}.{j}" if opaque else c) for j, c in enumerate(ordered)}
        nodes[b] = {"owner": OBSERVER, "actions": list(labels.values())}
        for j, c in enumerate(ordered):
            for x in sorted(c):
                nid = f"{x}.{k}.{j}"
                nodes[nid] = {"owner": NATURE, "info_set": x, "actions": outcomes[x]}
                owner_of.setdefault(x, []).append(nid)
                edges.append((b, nid, labels[c]))
    for k, (t, _, _) in enumerate(stages):
        for y, o in t.items():
            for nid in owner_of[y]:
                edges.append((nid, f"b{k}", o))
    return build_game({"nodes": nodes, "edges": edges})


def relabeled_copy(game: SpacetimeGame, rng: random.Random, tag: str = "r") -> tuple[SpacetimeGame, GameMorphism]:
    """A renamed isomorphic copy ``g2`` and the isomorphism ``g2 -> game``.

    Nodes and nature information sets get fresh names and the outcomes of
    every nature information set are permuted.
    """
    nodes = sorted(game.nodes)
    fresh = list(range(len(nodes)))
    rng.shuffle(fresh)
    ren = {n: f"{tag}{fresh[k]}_{n}" for k, n in enumerate(nodes)}
    alf_sets = game.info_sets_of(game.nature)
    iren = {i: f"{tag}_{i}" for i in alf_sets}
    perm = {}
    for x in alf_sets:
        acts = game.sorted_actions(x)
        shuffled = list(acts)
        rng.shuffle(shuffled)
        perm[x] = dict(zip(acts, shuffled))

    def new_action(src: str, a):
        if game.owner[src] == game.nature:
            return perm[game.iota[src]][a]
        if isinstance(a, frozenset) and a <= set(alf_sets):
            return frozenset(iren[i] for i in a)
        return a

    rows = {}
    for n in nodes:
        info = iren.get(game.iota[n], ren[n]) if game.owner[n] == game.nature else ren[n]
        rows[ren[n]] = {
            "owner": game.owner[n],
            "info_set": info,
            "actions": [new_action(n, a) for a in game.available[n]],
        }
    edges = [(ren[s], ren[d], new_action(s, game.edge_label[(s, d)])) for s, d in sorted(game.edges)]
    copy = build_game({"nodes": rows, "edges": edges, "players": game.players})
    nu_prime = {n: ren[n] for n in game.nodes_of(game.nature)}
    beta = {x: {perm[x][a]: a for a in perm[x]} for x in alf_sets}
    return copy, GameMorphism(copy, game, nu_prime, beta)


__all__ = [
    "ALIASES",
    "CorpusEntry",
    "ENTRIES",
    "MODEL_NAMES",
    "adaptive",
    "adaptive_game",
    "all_entries",
    "bell_two_observer",
    "classical_bell_model",
    "ctx",
    "cyclic3",
    "cyclic4",
    "cyclic4_game",
    "get",
    "get_model",
    "ghz",
    "ghz_model",
    "ghz_or",
    "ghz_or_game",
    "gp",
    "gp_game",
    "minimal",
    "minimal_game",
    "pr_box_model",
    "random_alternating_game",
    "relabeled_copy",
    "standard_models",
]
