"""Morphisms of games and scenarios, the functors F and G, round trips and lifting."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property

from ._maps import EventSet, FrozenMap, History, format_action
from .cover import Cover
from .errors import DomainMismatch, PreconditionViolated, ScenarioError
from .game import (
    NATURE,
    OBSERVER,
    SpacetimeGame,
    check_alternating,
    context_of,
    natural_cover,
    require_alternating,
)
from .scenario import (
    Scenario,
    ScenarioHistory,
    check_acyclic,
    check_causally_secured,
    check_unique_causal_bridges,
    is_clean,
    local_cover_restriction,
    tau,
)


@dataclass(frozen=True)
class MorphismReport:
    violations: tuple[tuple[str, str], ...] = ()
    bridge_equivalence: bool = True

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def failed_rules(self) -> frozenset[str]:
        return frozenset(r for r, _ in self.violations)

    def __bool__(self) -> bool:
        return self.passed


def _freeze_family(family: Mapping) -> FrozenMap:
    return FrozenMap((k, FrozenMap(v)) for k, v in family.items())


# -- game morphisms ----------------------------------------------------------------


@dataclass(frozen=True)
class GameMorphism:
    """A morphism ``source -> target`` between alternating games.

    ``nu_prime`` sends the *target's* nature nodes to the source's nature
    nodes; ``beta[x]`` sends the actions of ``nu_prime(x)`` in the source to
    the actions of info set ``x`` in the target.
    """

    source: SpacetimeGame
    target: SpacetimeGame
    nu_prime: Mapping[str, str]
    beta: Mapping[str, Mapping]

    def __post_init__(self):
        object.__setattr__(self, "nu_prime", FrozenMap(self.nu_prime))
        object.__setattr__(self, "beta", _freeze_family(self.beta))

    @cached_property
    def nu_info(self) -> Mapping[str, str]:
        """The information-set map induced by ``nu_prime`` (first node wins if rule 1 fails)."""
        tgt, src = self.target, self.source
        out = {}
        for x in tgt.info_sets_of(tgt.nature):
            n = min(tgt.info_sets[x])
            if n in self.nu_prime and self.nu_prime[n] in src.iota:
                out[x] = src.iota[self.nu_prime[n]]
        return FrozenMap(out)

    @cached_property
    def nu(self) -> Mapping[str, str]:
        """Observer-node map on its domain: parent(nu'(n)) -> parent(n)."""
        tgt, src = self.target, self.source
        out = {}
        for n in sorted(tgt.nodes_of(tgt.nature)):
            m = self.nu_prime.get(n)
            if m is None or m not in src.nodes:
                continue
            if len(src.predecessors[m]) == 1 and len(tgt.predecessors[n]) == 1:
                out.setdefault(src.parent(m), tgt.parent(n))
        return FrozenMap(out)

    @property
    def domain_nu(self) -> frozenset[str]:
        return frozenset(self.nu)


def identity_game_morphism(game: SpacetimeGame) -> GameMorphism:
    alf = game.nodes_of(game.nature)
    return GameMorphism(
        game,
        game,
        {n: n for n in alf},
        {x: {a: a for a in game.info_available(x)} for x in game.info_sets_of(game.nature)},
    )


def check_game_morphism(m: GameMorphism) -> MorphismReport:
    """Evaluate the five structural rules of a game morphism."""
    G, Gp = m.target, m.source
    out: list[tuple[str, str]] = []
    A_nodes = sorted(G.nodes_of(G.nature))
    Ap_nodes = Gp.nodes_of(Gp.nature)
    for n in A_nodes:
        if n not in m.nu_prime:
            out.append(("domain", f"nu' undefined on nature node {n}"))
        elif m.nu_prime[n] not in Ap_nodes:
            out.append(("domain", f"nu'({n}) = {m.nu_prime[n]} is not a nature node of the source"))
    extra = set(m.nu_prime) - set(A_nodes)
    if extra:
        out.append(("domain", f"nu' defined outside the target's nature nodes: {sorted(extra)}"))
    if out:
        return MorphismReport(tuple(out))

    # rule 1: information sets are preserved
    for x in G.info_sets_of(G.nature):
        images = {Gp.iota[m.nu_prime[n]] for n in G.info_sets[x]}
        if len(images) > 1:
            out.append(("1", f"nodes of {x} are sent to different information sets {sorted(images)}"))
    nu_info = m.nu_info
    for x in G.info_sets_of(G.nature):
        if x not in m.beta:
            out.append(("domain", f"beta undefined at {x}"))
            continue
        b = m.beta[x]
        dom = Gp.info_available(nu_info[x])
        if set(b) != set(dom):
            out.append(("domain", f"beta[{x}] is not defined exactly on the actions of {nu_info[x]}"))
        bad = [a for a in b.values() if a not in G.info_available(x)]
        if bad:
            out.append(("domain", f"beta[{x}] takes values outside the actions of {x}"))
    if out:
        return MorphismReport(tuple(out))

    def single_parent(game, n):
        preds = game.predecessors[n]
        return next(iter(preds)) if len(preds) == 1 else None

    # rule 2: parents are preserved
    by_image_parent: dict = {}
    for n in A_nodes:
        pp = single_parent(Gp, m.nu_prime[n])
        p = single_parent(G, n)
        if pp is None or p is None:
            out.append(("2", f"{n} or its image lacks a unique parent"))
            continue
        by_image_parent.setdefault(pp, set()).add(p)
    for tp, parents in sorted(by_image_parent.items()):
        if len(parents) > 1:
            out.append(("2", f"nodes whose images share parent {tp} have parents {sorted(parents)}"))
    nu = m.nu

    # rule 3: outcome labels are mapped consistently
    for n in A_nodes:
        np_ = m.nu_prime[n]
        x = G.iota[n]
        for tp in sorted(Gp.successors[np_]):
            if tp not in nu:
                continue
            t = nu[tp]
            if (n, t) not in G.edge_label:
                out.append(("3", f"{np_} -> {tp} has no counterpart edge {n} -> {t}"))
                continue
            lhs = m.beta[x].get(Gp.edge_label[(np_, tp)])
            if lhs != G.edge_label[(n, t)]:
                out.append(
                    (
                        "3",
                        f"beta[{x}]({format_action(Gp.edge_label[(np_, tp)])}) = {format_action(lhs)}"
                        f" but {n} -> {t} is labeled {format_action(G.edge_label[(n, t)])}",
                    )
                )

    # rule 4: contexts are mapped to contexts, node by node
    for tp in sorted(nu):
        t = nu[tp]
        for n in sorted(G.successors[t]):
            np_ = m.nu_prime[n]
            if (tp, np_) not in Gp.edge_label:
                out.append(("4", f"{np_} is not a child of {tp}"))
                continue
            ctx = context_of(G, t, G.edge_label[(t, n)])
            image = frozenset(nu_info[y] for y in ctx)
            ctx_p = context_of(Gp, tp, Gp.edge_label[(tp, np_)])
            if image != ctx_p:
                out.append(("4", f"context of {n} maps to {sorted(image)}, not to the context {sorted(ctx_p)} of {np_}"))

    # rule 5: parents of observer nodes in the domain of nu are hit
    image = set(nu_info.values())
    for tp in sorted(nu):
        for mp in sorted(Gp.predecessors[tp]):
            xp = Gp.iota[mp]
            if xp not in image:
                out.append(("5", f"{xp} feeds {tp} but is not in the image of nu'"))
    return MorphismReport(tuple(dict.fromkeys(out)))


def compose_game_morphisms(g1: GameMorphism, g2: GameMorphism) -> GameMorphism:
    """``g1 ∘ g2`` for ``g1: G' -> G`` and ``g2: G'' -> G'``."""
    if g1.source != g2.target:
        raise DomainMismatch("cannot compose: source of the outer morphism differs from target of the inner one")
    nu3 = {n: g2.nu_prime[g1.nu_prime[n]] for n in g1.nu_prime}
    beta3 = {}
    for x, b1 in g1.beta.items():
        b2 = g2.beta[g1.nu_info[x]]
        beta3[x] = {a: b1[b2[a]] for a in b2}
    return GameMorphism(g2.source, g1.target, nu3, beta3)


def morphism_kind(m: GameMorphism) -> dict[str, bool]:
    """Diagnostic only: componentwise section/retraction flags."""
    src_nodes = m.source.nodes_of(m.source.nature)
    nu_surj = set(m.nu_prime.values()) == set(src_nodes)
    nu_inj = len(set(m.nu_prime.values())) == len(m.nu_prime)
    beta_inj = all(len(set(b.values())) == len(b) for b in m.beta.values())
    beta_surj = all(set(b.values()) == set(m.target.info_available(x)) for x, b in m.beta.items())
    return {"section": nu_surj and beta_inj, "retraction": nu_inj and beta_surj}


# -- scenario morphisms ------------------------------------------------------------


@dataclass(frozen=True)
class ScenarioMorphism:
    """A morphism ``source -> target``; ``pi_prime`` maps the target's
    measurements into the source's and ``alpha[x]`` translates outcomes of
    ``pi_prime(x)`` into outcomes of ``x``."""

    source: Scenario
    target: Scenario
    pi_prime: Mapping[str, str]
    alpha: Mapping[str, Mapping]

    def __post_init__(self):
        object.__setattr__(self, "pi_prime", FrozenMap(self.pi_prime))
        object.__setattr__(self, "alpha", _freeze_family(self.alpha))


def identity_scenario_morphism(scenario: Scenario) -> ScenarioMorphism:
    return ScenarioMorphism(
        scenario,
        scenario,
        {x: x for x in scenario.measurements},
        {x: {o: o for o in scenario.outcomes[x]} for x in scenario.measurements},
    )


def check_scenario_morphism(m: ScenarioMorphism) -> MorphismReport:
    """Evaluate rules 1-3 and the simplicial-map condition.

    ``bridge_equivalence`` additionally reports whether equal bridges in the
    target always map to equal bridges in the source; it is a diagnostic and
    does not affect ``passed``.
    """
    S, Sp = m.target, m.source
    out: list[tuple[str, str]] = []
    for x in S.measurements:
        if x not in m.pi_prime:
            out.append(("domain", f"pi' undefined at {x}"))
            continue
        xp = m.pi_prime[x]
        if xp not in Sp.outcomes:
            out.append(("domain", f"pi'({x}) = {xp} is not a measurement of the source"))
            continue
        a = m.alpha.get(x)
        if a is None or set(a) != set(Sp.outcomes[xp]):
            out.append(("domain", f"alpha[{x}] is not defined exactly on the outcomes of {xp}"))
        elif any(v not in S.outcomes[x] for v in a.values()):
            out.append(("domain", f"alpha[{x}] takes values outside the outcomes of {x}"))
    if set(m.pi_prime) - set(S.measurements):
        out.append(("domain", "pi' defined on unknown measurements"))
    if out:
        return MorphismReport(tuple(out))
    pi = m.pi_prime
    for c in S.cover.sorted(S.order):
        image = frozenset(pi[x] for x in c)
        if not Sp.cover.contains_face(image):
            out.append(("simplicial", f"facet {sorted(c)} maps to {sorted(image)}, which is in no facet of the source"))
    tau_t = {x: tau(S, x) for x in S.measurements}
    tau_s = {x: tau(Sp, pi[x]) for x in S.measurements}
    xs = list(S.measurements)
    for i, x in enumerate(xs):
        for y in xs[i + 1:]:
            if tau_s[x] == tau_s[y] and tau_t[x] != tau_t[y]:
                out.append(("1", f"{x} and {y} have equal bridge images but different bridges"))
    image = set(pi.values())
    for x in xs:
        for yp in sorted(tau_s[x], key=str):
            if yp not in image:
                out.append(("2", f"{yp} enables {pi[x]} but is not in the image of pi'"))
    for x in xs:
        for y in xs:
            if pi[y] in tau_s[x]:
                translated = m.alpha[y][tau_s[x][pi[y]]]
                if y not in tau_t[x] or tau_t[x][y] != translated:
                    out.append(("3", f"alpha[{y}] sends the bridge event of {pi[x]} to {format_action(translated)}, not to tau({x})({y})"))
    equiv = all(
        tau_s[x] == tau_s[y] for i, x in enumerate(xs) for y in xs[i + 1:] if tau_t[x] == tau_t[y]
    )
    return MorphismReport(tuple(dict.fromkeys(out)), equiv)


def compose_scenario_morphisms(s1: ScenarioMorphism, s2: ScenarioMorphism) -> ScenarioMorphism:
    """``s1 ∘ s2`` for ``s1: Γ' -> Γ`` and ``s2: Γ'' -> Γ'``."""
    if s1.source != s2.target:
        raise DomainMismatch("cannot compose: source of the outer morphism differs from target of the inner one")
    pi3 = {x: s2.pi_prime[s1.pi_prime[x]] for x in s1.pi_prime}
    alpha3 = {}
    for x, a1 in s1.alpha.items():
        a2 = s2.alpha[s1.pi_prime[x]]
        alpha3[x] = {o: a1[a2[o]] for o in a2}
    return ScenarioMorphism(s2.source, s1.target, pi3, alpha3)


# -- the functor F -----------------------------------------------------------------


def bridge_of(game: SpacetimeGame, t: str) -> EventSet:
    """The event set read off the incoming edges of an observer node."""
    return EventSet.from_pairs(
        (game.iota[m], game.edge_label[(m, t)]) for m in game.predecessors[t] if game.owner[m] == game.nature
    )


def game_scenario(game: SpacetimeGame) -> Scenario:
    """The scenario read off any two-player game, without the alternation check."""
    xs = game.info_sets_of(game.nature)
    enabling = set()
    for x in xs:
        for n in game.info_sets[x]:
            parents = [t for t in game.predecessors[n] if game.owner[t] != game.nature]
            if not game.predecessors[n]:
                enabling.add((EventSet(), x))
            for t in parents:
                enabling.add((bridge_of(game, t), x))
    return Scenario(
        measurements=xs,
        outcomes={x: game.info_available(x) for x in xs},
        enabling=frozenset(enabling),
        cover=natural_cover(game),
    )


def functor_F_object(game: SpacetimeGame) -> Scenario:
    require_alternating(game)
    return game_scenario(game)


def functor_F_morphism(gm: GameMorphism) -> ScenarioMorphism:
    return ScenarioMorphism(
        functor_F_object(gm.source),
        functor_F_object(gm.target),
        dict(gm.nu_info),
        {x: dict(b) for x, b in gm.beta.items()},
    )


# -- the functor G -----------------------------------------------------------------


def bob_node_id(scenario: Scenario, t: EventSet) -> str:
    items = sorted(t.items(), key=lambda kv: scenario.order[kv[0]])
    return "t:" + ",".join(f"{y}={format_action(o)}" for y, o in items)


def alfred_node_id(scenario: Scenario, t: EventSet, x: str, c: frozenset) -> str:
    ctx = "+".join(sorted(c, key=scenario.order.get))
    return f"{x}@{ctx}@{bob_node_id(scenario, t)}"


def associated_game(scenario: Scenario) -> SpacetimeGame:
    """The game built from a scenario, without checking that the scenario is in scope."""
    nodes, edges = {}, []
    restr = {}
    for t in scenario.enabling_sets:
        tid = bob_node_id(scenario, t)
        restr[t] = local_cover_restriction(scenario, t)
        if not restr[t].facets:
            raise ScenarioError(f"no facet meets the measurements enabled by {scenario.format_events(t)}")
        nodes[tid] = {"owner": OBSERVER, "info_set": tid, "actions": restr[t].facets}
    for t, x in sorted(scenario.enabling, key=lambda p: (scenario.events_key(p[0]), scenario.order[p[1]])):
        for c in restr[t].sorted(scenario.order):
            if x in c:
                nid = alfred_node_id(scenario, t, x, c)
                nodes[nid] = {"owner": NATURE, "info_set": x, "actions": scenario.outcomes[x]}
                edges.append((bob_node_id(scenario, t), nid, c))
    for t in scenario.enabling_sets:
        tid = bob_node_id(scenario, t)
        for nid, d in nodes.items():
            if d["owner"] == NATURE and d["info_set"] in t:
                edges.append((nid, tid, t[d["info_set"]]))
    from .game import build_game

    return build_game({"nodes": nodes, "edges": edges, "players": {NATURE, OBSERVER}})


def scope_checks(scenario: Scenario) -> dict[str, bool]:
    """The conditions under which a scenario belongs to the category."""
    checks = {"acyclic": check_acyclic(scenario), "unique-bridges": check_unique_causal_bridges(scenario).unique}
    checks["clean"] = checks["acyclic"] and checks["unique-bridges"] and is_clean(scenario)
    checks["causally-secured"] = checks["clean"] and check_causally_secured(scenario).passed
    return checks


def require_in_scope(scenario: Scenario) -> None:
    for name, ok in scope_checks(scenario).items():
        if not ok:
            raise PreconditionViolated(name)


def functor_G_object(scenario: Scenario) -> SpacetimeGame:
    require_in_scope(scenario)
    return associated_game(scenario)


# -- round trips and structural comparison ------------------------------------------


@dataclass(frozen=True)
class RoundTrip:
    forward: ScenarioMorphism  # F(G(Γ)) -> Γ
    backward: ScenarioMorphism  # Γ -> F(G(Γ))

    @property
    def image(self) -> Scenario:
        return self.forward.source


def roundtrip_iso(scenario: Scenario) -> RoundTrip:
    """The isomorphism between a scenario and F(G(scenario)), checked componentwise."""
    image = functor_F_object(functor_G_object(scenario))
    if set(image.measurements) != set(scenario.measurements):
        raise PreconditionViolated("roundtrip", "measurement sets differ")
    pi = {x: x for x in scenario.measurements}
    alpha = {x: {o: o for o in scenario.outcomes[x]} for x in scenario.measurements}
    fwd = ScenarioMorphism(image, scenario, pi, alpha)
    bwd = ScenarioMorphism(scenario, image, pi, alpha)
    for name, mor in (("forward", fwd), ("backward", bwd)):
        rep = check_scenario_morphism(mor)
        if not rep.passed:
            raise PreconditionViolated("roundtrip", f"{name} map is not a morphism: {rep.violations}")
    if compose_scenario_morphisms(fwd, bwd) != identity_scenario_morphism(scenario):
        raise PreconditionViolated("roundtrip", "forward after backward is not the identity")
    if compose_scenario_morphisms(bwd, fwd) != identity_scenario_morphism(image):
        raise PreconditionViolated("roundtrip", "backward after forward is not the identity")
    if image.enabling != scenario.enabling:
        raise PreconditionViolated("roundtrip", "enabling relations differ")
    return RoundTrip(fwd, bwd)


def node_signatures(game: SpacetimeGame) -> dict[str, tuple]:
    """Id-independent names for the nodes of an alternating game."""
    sig: dict[str, tuple] = {}
    for t in game.nodes_of(game.observer):
        sig[t] = ("B", bridge_of(game, t))
    for n in game.nodes_of(game.nature):
        t = game.parent(n)
        sig[n] = ("A", game.iota[n], sig[t], context_of(game, t, game.edge_label[(t, n)]))
    return sig


def canonical_form(game: SpacetimeGame):
    """A hashable description of an alternating game up to node renaming."""
    sig = node_signatures(game)
    if len(set(sig.values())) != len(sig):
        raise PreconditionViolated("canonical-form", "node signatures are not unique")

    def act(n, a):
        return context_of(game, n, a) if game.owner[n] == game.observer else a

    def info_key(i):
        n = next(iter(game.info_sets[i]))
        return sig[n] if game.owner[n] == game.observer else ("A", i)

    nodes = frozenset((sig[n], game.owner[n], frozenset(act(n, a) for a in game.available[n])) for n in game.nodes)
    edges = frozenset((sig[s], sig[d], act(s, game.edge_label[(s, d)])) for s, d in game.edges)
    infos = frozenset(frozenset(sig[n] for n in ns) for ns in game.info_sets.values())
    outs = frozenset(
        frozenset((info_key(i), act(next(iter(game.info_sets[i])), a)) for i, a in h.items()) for h in game.outcomes
    )
    return nodes, edges, infos, outs


def structurally_isomorphic(g1: SpacetimeGame, g2: SpacetimeGame) -> bool:
    """Equal up to renaming of nodes and observer actions (nature info-set ids must match)."""
    return canonical_form(g1) == canonical_form(g2)


def translate_history(game: SpacetimeGame, h) -> ScenarioHistory:
    """Read a game history in scenario terms: observer choices become contexts at bridges."""
    choices, events = {}, {}
    for i, a in h.items():
        n = next(iter(game.info_sets[i]))
        if game.owner[n] == game.observer:
            choices[bridge_of(game, n)] = context_of(game, n, a)
        else:
            events[i] = a
    return ScenarioHistory(FrozenMap(choices), EventSet(events))


def scenario_history_to_game(scenario: Scenario, sh: ScenarioHistory) -> History:
    """The history of G(scenario) matching a scenario history."""
    data = {bob_node_id(scenario, t): c for t, c in sh.choices.items()}
    data.update(sh.events)
    return History(data)


def is_closed_history(game: SpacetimeGame, h) -> bool:
    """Every nature information set activated by an assigned observer choice is assigned."""
    for i in h:
        n = next(iter(game.info_sets[i]))
        if game.owner[n] != game.observer:
            continue
        for m in game.successors[n]:
            if game.owner[m] == game.nature and game.edge_label[(n, m)] == h[i] and game.iota[m] not in h:
                return False
    return True


# -- fullness ------------------------------------------------------------------------


def lift_morphism(mu: ScenarioMorphism, g: SpacetimeGame, g_prime: SpacetimeGame) -> GameMorphism:
    """Construct the game morphism ``g_prime -> g`` whose F-image is ``mu``."""
    if mu.target != functor_F_object(g) or mu.source != functor_F_object(g_prime):
        raise DomainMismatch("the scenario morphism does not run between the F-images of the given games")
    bob_by_bridge = {bridge_of(g_prime, t): t for t in g_prime.nodes_of(g_prime.observer)}
    nu_prime = {}
    for n in sorted(g.nodes_of(g.nature)):
        t = g.parent(n)
        x = g.iota[n]
        xp = mu.pi_prime[x]
        tp = bob_by_bridge[tau(mu.source, xp)]
        ctx = frozenset(mu.pi_prime[y] for y in context_of(g, t, g.edge_label[(t, n)]))
        found = [
            m
            for m in g_prime.info_sets[xp]
            if (tp, m) in g_prime.edge_label and context_of(g_prime, tp, g_prime.edge_label[(tp, m)]) == ctx
        ]
        if len(found) != 1:
            raise PreconditionViolated(
                "lift",
                f"the image {sorted(ctx)} of the context of {n} is not a context of {tp}"
                if not found
                else f"several nodes of {xp} match",
            )
        nu_prime[n] = found[0]
    lifted = GameMorphism(g_prime, g, nu_prime, {x: dict(a) for x, a in mu.alpha.items()})
    rep = check_game_morphism(lifted)
    if not rep.passed:
        raise PreconditionViolated("lift", f"constructed map is not a game morphism: {rep.violations}")
    return lifted


__all__ = [
    "GameMorphism",
    "MorphismReport",
    "RoundTrip",
    "ScenarioMorphism",
    "alfred_node_id",
    "associated_game",
    "bob_node_id",
    "bridge_of",
    "canonical_form",
    "check_game_morphism",
    "check_scenario_morphism",
    "compose_game_morphisms",
    "compose_scenario_morphisms",
    "functor_F_morphism",
    "functor_F_object",
    "functor_G_object",
    "game_scenario",
    "identity_game_morphism",
    "identity_scenario_morphism",
    "is_closed_history",
    "lift_morphism",
    "morphism_kind",
    "node_signatures",
    "roundtrip_iso",
    "scenario_history_to_game",
    "scope_checks",
    "structurally_isomorphic",
    "translate_history",
]
