"""Generators of morphisms and morphism chains shared by the test modules."""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterator

from spacetime_games import corpus
from spacetime_games.categories import (
    GameMorphism,
    ScenarioMorphism,
    check_scenario_morphism,
    functor_F_object,
    identity_game_morphism,
    lift_morphism,
)
from spacetime_games.errors import PreconditionViolated
from spacetime_games.game import SpacetimeGame
from spacetime_games.scenario import Scenario, tau

IN_SCOPE = ("minimal", "cyclic3", "adaptive", "cyclic4", "gp", "ghz")
SMALL = ("minimal", "cyclic3", "adaptive", "cyclic4")


def scenario_endomorphisms(s: Scenario, limit: int | None = None, onto_contexts: bool = False) -> Iterator[ScenarioMorphism]:
    """Every endomorphism of a small scenario, found by brute force over measurement maps.

    Rules 1, 2 and the simplicial condition depend only on the measurement
    map; rule 3 constrains each outcome map separately, so the outcome maps
    are filtered per measurement before taking the product.  With
    ``onto_contexts`` every facet must map bijectively onto a facet, which the
    lift to games needs.
    """
    xs = list(s.measurements)
    bridges = {x: tau(s, x) for x in xs}
    count = 0
    for images in itertools.product(xs, repeat=len(xs)):
        pi = dict(zip(xs, images))
        if not all(s.cover.contains_face({pi[x] for x in c}) for c in s.cover.facets):
            continue
        if onto_contexts and not all(
            len({pi[x] for x in c}) == len(c) and frozenset(pi[x] for x in c) in s.cover.facets for c in s.cover.facets
        ):
            continue
        src = {x: bridges[pi[x]] for x in xs}
        if any(src[x] == src[y] and bridges[x] != bridges[y] for x in xs for y in xs):
            continue
        image = set(images)
        if any(yp not in image for x in xs for yp in src[x]):
            continue
        options = []
        for y in xs:
            outs_src = sorted(s.outcomes[pi[y]])
            outs_tgt = sorted(s.outcomes[y])
            allowed = []
            for vals in itertools.product(outs_tgt, repeat=len(outs_src)):
                a = dict(zip(outs_src, vals))
                if all(
                    y in bridges[x] and a[src[x][pi[y]]] == bridges[x][y]
                    for x in xs
                    if pi[y] in src[x]
                ):
                    allowed.append(a)
            options.append(allowed)
        for combo in itertools.product(*options):
            m = ScenarioMorphism(s, s, pi, dict(zip(xs, combo)))
            assert check_scenario_morphism(m).passed
            yield m
            count += 1
            if limit is not None and count >= limit:
                return


def game_endomorphisms(g: SpacetimeGame, limit: int = 200) -> list[GameMorphism]:
    """Lifts of the scenario endomorphisms of F(g) that admit a lift."""
    s = functor_F_object(g)
    out = []
    for mu in scenario_endomorphisms(s, limit=limit, onto_contexts=True):
        try:
            out.append(lift_morphism(mu, g, g))
        except PreconditionViolated:
            continue
    return out


def small_games(rng: random.Random, n: int) -> list[SpacetimeGame]:
    games = [corpus.get(name).game for name in SMALL]
    while len(games) < n:
        g = corpus.random_alternating_game(rng, max_stages=2, max_new=2)
        if len(g.info_sets_of(g.nature)) <= 5:
            games.append(g)
    return games


class ChainFactory:
    """Random composable chains ``g1, g2, g3`` with ``g1: G1 -> G0``, ``g2: G2 -> G1``, ..."""

    def __init__(self, rng: random.Random, games: list[SpacetimeGame]):
        self.rng = rng
        self.games = games
        self._endo: dict[int, list[GameMorphism]] = {}
        self._tags = itertools.count()

    def endos(self, g: SpacetimeGame) -> list[GameMorphism]:
        key = id(g)
        if key not in self._endo:
            self._endo[key] = game_endomorphisms(g) or [identity_game_morphism(g)]
        return self._endo[key]

    def step(self, target: SpacetimeGame, base: SpacetimeGame, base_endos: list[GameMorphism]) -> GameMorphism:
        """A morphism into ``target`` whose source is ``target`` or a relabeled copy of it."""
        choice = self.rng.random()
        if choice < 0.45 and target is base:
            return self.rng.choice(base_endos)
        if choice < 0.55:
            return identity_game_morphism(target)
        copy, iso = corpus.relabeled_copy(target, self.rng, tag=f"r{next(self._tags)}")
        return iso

    def chain(self, length: int = 3) -> list[GameMorphism]:
        base = self.rng.choice(self.games)
        endos = self.endos(base)
        out = []
        target = base
        for _ in range(length):
            m = self.step(target, base, endos)
            out.append(m)
            target = m.source
        return out


def compatible_families(cover, options) -> Iterator[dict]:
    """Every family of pairwise-compatible total assignments, one per facet (backtracking)."""
    facets = cover.sorted()
    per_facet = []
    for f in facets:
        xs = sorted(f)
        per_facet.append([dict(zip(xs, combo)) for combo in itertools.product(*(sorted(options[x]) for x in xs))])

    def go(k: int, chosen: dict, family: dict):
        if k == len(facets):
            yield dict(family)
            return
        for a in per_facet[k]:
            if all(chosen.get(x, v) == v for x, v in a.items()):
                added = {x: v for x, v in a.items() if x not in chosen}
                chosen.update(added)
                family[facets[k]] = a
                yield from go(k + 1, chosen, family)
                del family[facets[k]]
                for x in added:
                    del chosen[x]

    yield from go(0, {}, {})
