import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spacetime_games import corpus
from spacetime_games.cover import Cover
from spacetime_games.errors import (
    CyclicGraph,
    EdgeLabelNotAvailable,
    EmptyActionSet,
    GameStructureError,
    InfoSetOwnerMismatch,
    NotAlternating,
)
from spacetime_games.game import (
    ALTERNATION_RULES,
    build_game,
    canonicalize_contexts,
    check_alternating,
    enumerate_complete_histories,
    enumerate_histories,
    is_complete_history,
    natural_cover,
    prune_unused_info_sets,
    to_extensive_form,
    validate,
)


def brute_force_complete_histories(game):
    """Oracle: every partial assignment, filtered by the activation condition read off the edges."""
    sets = sorted(game.info_sets)
    options = [[None] + sorted(game.info_available(i), key=str) for i in sets]
    preds = {n: [(s, game.edge_label[(s, d)]) for (s, d) in game.edges if d == n] for n in game.nodes}
    node_set = {n: i for i, ns in game.info_sets.items() for n in ns}
    out = set()
    for combo in itertools.product(*options):
        h = {i: a for i, a in zip(sets, combo) if a is not None}

        def active(i):
            return any(all(h.get(node_set[m]) == lab for m, lab in preds[n]) for n in game.info_sets[i])

        if all((i in h) == active(i) for i in sets):
            out.add(frozenset(h.items()))
    return out


SMALL_FOR_ORACLE = ["minimal", "bell_two_observer", "cyclic3", "adaptive", "cyclic4"]


@pytest.mark.parametrize("name", SMALL_FOR_ORACLE)
def test_complete_histories_match_brute_force(name):
    g = corpus.get(name).game
    got = {frozenset(h.items()) for h in enumerate_complete_histories(g)}
    assert got == brute_force_complete_histories(g)


@pytest.mark.parametrize(
    "name,count",
    [("minimal", 2), ("bell_two_observer", 16), ("cyclic3", 12), ("adaptive", 7), ("cyclic4", 16), ("gp", 16), ("ghz", 32)],
)
def test_complete_history_counts(name, count):
    assert len(corpus.get(name).game.outcomes) == count


@pytest.mark.parametrize("entry", corpus.all_entries(), ids=lambda e: e.name)
def test_corpus_games_validate(entry):
    rep = validate(entry.game)
    assert rep.valid, rep.messages


def test_every_complete_history_is_a_history():
    g = corpus.get("adaptive").game
    complete = set(enumerate_complete_histories(g))
    every = set(enumerate_histories(g))
    assert complete <= every
    assert all(is_complete_history(g, h) for h in complete)
    assert frozenset() in {frozenset(h.items()) for h in every}


def _tiny(**overrides):
    spec = {
        "nodes": {
            "B": {"owner": "Bob", "actions": [frozenset({"x"})]},
            "x": {"owner": "Alfred", "actions": ["0", "1"]},
        },
        "edges": [("B", "x", frozenset({"x"}))],
    }
    spec.update(overrides)
    return spec


def test_minimal_game_builds():
    g = build_game(_tiny())
    assert len(g.outcomes) == 2
    assert natural_cover(g) == Cover.of({"x"})


def test_cycle_is_rejected_with_the_cycle():
    spec = _tiny()
    spec["nodes"]["y"] = {"owner": "Alfred", "actions": ["0"]}
    spec["edges"] = [("B", "x", frozenset({"x"})), ("x", "y", "0"), ("y", "x", "0")]
    with pytest.raises(CyclicGraph) as exc:
        build_game(spec)
    assert set(exc.value.cycle) >= {"x", "y"}


def test_edge_label_must_be_available():
    with pytest.raises(EdgeLabelNotAvailable):
        build_game(_tiny(edges=[("B", "x", "nope")]))


def test_empty_action_set_rejected():
    spec = _tiny()
    spec["nodes"]["x"] = {"owner": "Alfred", "actions": []}
    with pytest.raises(EmptyActionSet):
        build_game(spec)


def test_info_set_owner_mismatch():
    spec = _tiny()
    spec["nodes"]["B"]["info_set"] = "I"
    spec["nodes"]["x"]["info_set"] = "I"
    with pytest.raises(InfoSetOwnerMismatch):
        build_game(spec)


def test_duplicate_edge_rejected():
    with pytest.raises(GameStructureError):
        build_game(_tiny(edges=[("B", "x", frozenset({"x"})), ("B", "x", frozenset({"x"}))]))


def test_declared_outcomes_are_checked():
    g = build_game(_tiny(outcomes=[{"B": frozenset({"x"}), "x": "0"}]))
    rep = validate(g)
    assert not rep.valid and len(rep.missing) == 1


def _unreachable_game():
    # w needs x=1 and y=1, but y is only reached after x=0
    nodes = {
        "B": {"owner": "Bob", "actions": [frozenset({"x"})]},
        "x": {"owner": "Alfred", "actions": ["0", "1"]},
        "C": {"owner": "Bob", "actions": [frozenset({"y"})]},
        "y": {"owner": "Alfred", "actions": ["0", "1"]},
        "w": {"owner": "Alfred", "actions": ["0", "1"]},
    }
    edges = [
        ("B", "x", frozenset({"x"})),
        ("x", "C", "0"),
        ("C", "y", frozenset({"y"})),
        ("x", "w", "1"),
        ("y", "w", "1"),
    ]
    return build_game({"nodes": nodes, "edges": edges})


def test_unused_info_set_is_reported():
    rep = validate(_unreachable_game())
    assert not rep.valid
    assert rep.unused_info_sets == ("w",)


def test_prune_removes_never_activated_sets():
    g = prune_unused_info_sets(_unreachable_game())
    assert "w" not in g.info_sets
    assert validate(g).valid


# -- alternation -------------------------------------------------------------------------


def test_rule_names():
    assert ALTERNATION_RULES[0] == "2-PLAYERS" and ALTERNATION_RULES[-1] == "AB2" and len(ALTERNATION_RULES) == 9


def test_two_observer_bell_fails_exactly_ab2():
    rep = check_alternating(corpus.get("bell").game)
    assert {v.rule for v in rep.violations} == {"AB2"}


@pytest.mark.parametrize("name", ["minimal", "cyclic3", "adaptive", "cyclic4", "gp", "ghz"])
def test_in_scope_games_are_alternating(name):
    assert check_alternating(corpus.get(name).game).passed


def test_ghz_or_fails_ab1():
    rep = check_alternating(corpus.get("fig12").game)
    assert {v.rule for v in rep.violations} == {"AB1"}


def test_lone_nature_node_breaks_alternation():
    g = build_game({"nodes": {"x": {"owner": "Alfred", "actions": ["0", "1"]}}, "edges": []})
    rules = {v.rule for v in check_alternating(g).violations}
    assert {"2-PLAYERS", "EVEN"} <= rules


# -- covers -------------------------------------------------------------------------------


def test_natural_covers():
    c4 = natural_cover(corpus.get("cyclic4").game)
    assert c4 == Cover.of({"X", "W"}, {"X", "Z"}, {"Y", "W"}, {"Y", "Z"})
    c3 = natural_cover(corpus.get("cyclic3").game)
    assert c3 == Cover.of({"X", "Y"}, {"Y", "Z"}, {"X", "Z"})
    ad = natural_cover(corpus.get("adaptive").game)
    assert ad == Cover.of({"X"}, {"Y", "W"}, {"Y", "Z"})


def test_canonicalize_opaque_labels():
    opaque = corpus.cyclic4_game(opaque=True)
    plain = corpus.get("cyclic4").game
    canon = canonicalize_contexts(opaque)
    assert canon.actions == plain.actions
    assert natural_cover(canon) == natural_cover(plain)
    assert len(canon.outcomes) == len(plain.outcomes)


def test_canonicalize_requires_alternation():
    with pytest.raises(NotAlternating):
        canonicalize_contexts(corpus.get("bell").game)


# -- extensive form -----------------------------------------------------------------------


def test_bell_extensive_form():
    tree = to_extensive_form(corpus.get("bell").game)
    assert len(tree.leaves) == 16
    assert set(tree.information_sets) == {"A", "B", "X", "Y", "W", "Z"}
    assert tree.root.player == "Bob"
    assert not tree.perfect_information
    assert tree.depth() == 4


def test_adaptive_extensive_form_has_perfect_information():
    tree = to_extensive_form(corpus.get("fig5").game)
    assert tree.perfect_information


@pytest.mark.parametrize("entry", corpus.all_entries(), ids=lambda e: e.name)
def test_extensive_form_leaves_biject_with_outcomes(entry):
    g = entry.game
    tree = to_extensive_form(g)
    assert sorted(tree.leaves, key=lambda n: n.id)
    assert {leaf.history for leaf in tree.leaves} == set(g.outcomes)
    assert len(tree.leaves) == len(g.outcomes)
    assert set(tree.information_sets) == set(g.info_sets)


# -- randomized --------------------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_random_alternating_games(seed):
    g = corpus.random_alternating_game(random.Random(seed))
    assert validate(g).valid
    assert check_alternating(g).passed
    tree = to_extensive_form(g)
    assert len(tree.leaves) == len(g.outcomes)
    for h in g.outcomes:
        assert is_complete_history(g, h)
    if len(g.info_sets) <= 7:
        assert {frozenset(h.items()) for h in g.outcomes} == brute_force_complete_histories(g)
