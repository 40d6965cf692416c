import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pools import IN_SCOPE, SMALL, ChainFactory, game_endomorphisms, scenario_endomorphisms, small_games
from spacetime_games import corpus
from spacetime_games._maps import EventSet
from spacetime_games.categories import (
    GameMorphism,
    ScenarioMorphism,
    check_game_morphism,
    check_scenario_morphism,
    compose_game_morphisms,
    compose_scenario_morphisms,
    functor_F_morphism,
    functor_F_object,
    functor_G_object,
    identity_game_morphism,
    identity_scenario_morphism,
    is_closed_history,
    lift_morphism,
    roundtrip_iso,
    scenario_history_to_game,
    scope_checks,
    structurally_isomorphic,
    translate_history,
)
from spacetime_games.cover import Cover
from spacetime_games.errors import DomainMismatch, NotAlternating, PreconditionViolated
from spacetime_games.game import check_alternating, enumerate_histories, validate
from spacetime_games.scenario import Scenario, check_causally_secured, enumerate_scenario_histories


def _scenario(xs, enabling, cover):
    return Scenario(tuple(xs), {x: ("0", "1") for x in xs}, frozenset((EventSet(t), x) for t, x in enabling), Cover.of(*cover))


# -- game morphisms ------------------------------------------------------------------------


@pytest.mark.parametrize("name", IN_SCOPE)
def test_identity_is_a_morphism(name):
    g = corpus.get(name).game
    assert check_game_morphism(identity_game_morphism(g)).passed


def test_relabeled_copy_iso_passes():
    g = corpus.get("cyclic4").game
    copy, iso = corpus.relabeled_copy(g, random.Random(3))
    assert iso.source == copy and iso.target == g
    assert check_game_morphism(iso).passed


def test_broken_info_set_map_fails_rule_1():
    g = corpus.get("cyclic3").game
    ident = identity_game_morphism(g)
    nu = dict(ident.nu_prime)
    nu["X@XY"] = "Y@XY"
    rep = check_game_morphism(GameMorphism(g, g, nu, ident.beta))
    assert "1" in rep.failed_rules


def test_wrong_outcome_map_fails_rule_3():
    g = corpus.get("fig5").game
    ident = identity_game_morphism(g)
    beta = {x: dict(b) for x, b in ident.beta.items()}
    beta["Y"] = {"0": "1", "1": "0"}
    rep = check_game_morphism(GameMorphism(g, g, ident.nu_prime, beta))
    assert "3" in rep.failed_rules


def test_partial_nu_prime_is_a_domain_error():
    g = corpus.get("minimal").game
    rep = check_game_morphism(GameMorphism(g, g, {}, {}))
    assert rep.failed_rules == {"domain"}


def test_compose_requires_matching_ends():
    a = identity_game_morphism(corpus.get("minimal").game)
    b = identity_game_morphism(corpus.get("cyclic3").game)
    with pytest.raises(DomainMismatch):
        compose_game_morphisms(a, b)


def test_endomorphism_pools_are_morphisms():
    for name in SMALL:
        g = corpus.get(name).game
        for m in game_endomorphisms(g, limit=30):
            assert check_game_morphism(m).passed


# -- scenario morphisms ---------------------------------------------------------------------


@pytest.mark.parametrize("name", SMALL)
def test_scenario_endomorphisms_pass(name):
    s = functor_F_object(corpus.get(name).game)
    ms = list(scenario_endomorphisms(s, limit=50))
    assert identity_scenario_morphism(s) in scenario_endomorphisms(s, onto_contexts=True)
    for m in ms:
        assert check_scenario_morphism(m).passed


def test_simplicial_condition():
    s = functor_F_object(corpus.get("cyclic4").game)
    pi = {"X": "X", "Y": "X", "W": "W", "Z": "X"}
    alpha = {x: {"0": "0", "1": "1"} for x in pi}
    # facet {X,Z} maps to {X}, {Y,W} to {X,W}: both faces; {Y,Z} maps to {X} too
    assert check_scenario_morphism(ScenarioMorphism(s, s, pi, alpha)).passed
    pi = {"X": "X", "Y": "Y", "W": "W", "Z": "Y"}
    # {X,Z} maps to {X,Y}, which is in no facet
    assert "simplicial" in check_scenario_morphism(ScenarioMorphism(s, s, pi, alpha)).failed_rules


def test_bridge_implication_is_not_an_equivalence():
    target = _scenario(["z", "x", "y"], [({}, "z"), ({"z": "0"}, "x"), ({"z": "0"}, "y")], [{"z", "x"}, {"z", "y"}])
    source = _scenario(["z'", "x'", "y'"], [({}, "z'"), ({"z'": "0"}, "x'"), ({"z'": "1"}, "y'")], [{"z'", "x'"}, {"z'", "y'"}])
    pi = {"z": "z'", "x": "x'", "y": "y'"}
    alpha = {"z": {"0": "0", "1": "0"}, "x": {"0": "0", "1": "1"}, "y": {"0": "0", "1": "1"}}
    rep = check_scenario_morphism(ScenarioMorphism(source, target, pi, alpha))
    assert rep.passed
    assert not rep.bridge_equivalence


def test_rule_3_violation():
    s = functor_F_object(corpus.get("fig5").game)
    ident = identity_scenario_morphism(s)
    alpha = {x: dict(a) for x, a in ident.alpha.items()}
    alpha["Y"] = {"0": "1", "1": "0"}
    assert "3" in check_scenario_morphism(ScenarioMorphism(s, s, ident.pi_prime, alpha)).failed_rules


# -- functor F ------------------------------------------------------------------------------


def test_F_requires_alternation():
    with pytest.raises(NotAlternating):
        functor_F_object(corpus.get("bell").game)


@pytest.mark.parametrize("name", IN_SCOPE)
def test_F_preserves_identities(name):
    g = corpus.get(name).game
    assert functor_F_morphism(identity_game_morphism(g)) == identity_scenario_morphism(functor_F_object(g))


def test_F_of_isomorphism_is_a_morphism():
    g = corpus.get("gp").game
    copy, iso = corpus.relabeled_copy(g, random.Random(5))
    fm = functor_F_morphism(iso)
    assert fm.source == functor_F_object(copy)
    assert check_scenario_morphism(fm).passed


def test_random_chains_obey_functor_and_category_laws():
    rng = random.Random(20240611)
    factory = ChainFactory(rng, small_games(rng, 12))
    for _ in range(40):
        g1, g2, g3 = factory.chain(3)
        for g in (g1, g2, g3):
            assert check_game_morphism(g).passed
        c12 = compose_game_morphisms(g1, g2)
        assert check_game_morphism(c12).passed
        assert functor_F_morphism(c12) == compose_scenario_morphisms(functor_F_morphism(g1), functor_F_morphism(g2))
        assert compose_game_morphisms(c12, g3) == compose_game_morphisms(g1, compose_game_morphisms(g2, g3))
        assert compose_game_morphisms(identity_game_morphism(g1.target), g1) == g1
        assert compose_game_morphisms(g1, identity_game_morphism(g1.source)) == g1


# -- functor G and the round trip -------------------------------------------------------------


@pytest.mark.parametrize("name", IN_SCOPE)
def test_G_of_F_is_alternating_and_isomorphic(name):
    g = corpus.get(name).game
    s = functor_F_object(g)
    gg = functor_G_object(s)
    assert validate(gg).valid
    assert check_alternating(gg).passed
    assert structurally_isomorphic(gg, g)
    assert len(gg.nodes_of(gg.observer)) == len(s.enabling_sets)


@pytest.mark.parametrize("name", IN_SCOPE)
def test_roundtrip(name):
    s = functor_F_object(corpus.get(name).game)
    rt = roundtrip_iso(s)
    assert compose_scenario_morphisms(rt.forward, rt.backward) == identity_scenario_morphism(s)
    assert compose_scenario_morphisms(rt.backward, rt.forward) == identity_scenario_morphism(rt.image)
    assert rt.image.enabling == s.enabling
    assert rt.image == s


def test_G_rejects_out_of_scope_scenarios():
    bad = _scenario(["X", "Y"], [({}, "X"), ({"X": "0"}, "Y"), ({"X": "1"}, "Y")], [{"X", "Y"}])
    assert not scope_checks(bad)["unique-bridges"]
    with pytest.raises(PreconditionViolated) as exc:
        functor_G_object(bad)
    assert exc.value.check == "unique-bridges"


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_random_roundtrips(seed):
    g = corpus.random_alternating_game(random.Random(seed))
    s = functor_F_object(g)
    assert check_causally_secured(s).passed
    rt = roundtrip_iso(s)
    assert rt.image == s
    assert structurally_isomorphic(functor_G_object(s), g)


# -- histories across the functors --------------------------------------------------------------


@pytest.mark.parametrize("name", IN_SCOPE)
def test_closed_game_histories_biject_with_scenario_histories(name):
    g = corpus.get(name).game
    s = functor_F_object(g)
    closed = [h for h in enumerate_histories(g) if is_closed_history(g, h)]
    translated = [translate_history(g, h) for h in closed]
    assert len(set(translated)) == len(closed)
    assert set(translated) == set(enumerate_scenario_histories(s))


@pytest.mark.parametrize("name", ["cyclic3", "adaptive", "cyclic4"])
def test_scenario_histories_map_into_G(name):
    s = functor_F_object(corpus.get(name).game)
    gg = functor_G_object(s)
    ghist = set(enumerate_histories(gg))
    for sh in enumerate_scenario_histories(s):
        assert scenario_history_to_game(s, sh) in ghist


# -- lifting (fullness) -----------------------------------------------------------------------


@pytest.mark.parametrize("name", SMALL)
def test_lift_then_F_is_identity_on_morphisms(name):
    g = corpus.get(name).game
    s = functor_F_object(g)
    lifted = 0
    for mu in scenario_endomorphisms(s, limit=60, onto_contexts=True):
        gm = lift_morphism(mu, g, g)
        assert check_game_morphism(gm).passed
        assert functor_F_morphism(gm) == mu
        lifted += 1
    assert lifted > 0


def test_lift_needs_exact_contexts():
    g = corpus.get("cyclic4").game
    s = functor_F_object(g)
    pi = {"X": "X", "Y": "X", "W": "W", "Z": "X"}
    alpha = {x: {"0": "0", "1": "1"} for x in pi}
    mu = ScenarioMorphism(s, s, pi, alpha)
    assert check_scenario_morphism(mu).passed
    with pytest.raises(PreconditionViolated):
        lift_morphism(mu, g, g)


def test_lift_across_relabeled_games():
    g = corpus.get("adaptive").game
    copy, iso = corpus.relabeled_copy(g, random.Random(9))
    mu = functor_F_morphism(iso)
    gm = lift_morphism(mu, g, copy)
    assert functor_F_morphism(gm) == mu
    assert check_game_morphism(gm).passed
