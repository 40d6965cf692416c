import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spacetime_games import corpus
from spacetime_games._maps import EventSet, FrozenMap
from spacetime_games.categories import functor_F_object
from spacetime_games.errors import DomainMismatch, IncompatibleModel, NotNormalized, NotSubset
from spacetime_games.empirical import (
    Infeasible,
    LocalDistribution,
    SemiringSpec,
    boolean_section_exhaustive,
    check_compatibility,
    constraint_system,
    deterministic_hvm_from_section,
    find_global_section,
    history_distribution,
    make_model,
    marginalize,
    model_from_section,
    model_from_strategy_mix,
    nature_strategies,
    remix,
    section_residual,
    verify_certificate,
)
from spacetime_games.linear import vertex_enumeration_feasible
from spacetime_games.strategy import enumerate_pure_strategies

HALF = Fraction(1, 2)


def bell_scenario():
    return functor_F_object(corpus.get("cyclic4").game)


# -- semirings -----------------------------------------------------------------------------


def test_semiring_operations():
    p = SemiringSpec("probability")
    assert p.add(Fraction(1, 3), Fraction(1, 6)) == HALF and p.mul(HALF, HALF) == Fraction(1, 4)
    b = SemiringSpec("possibility")
    assert b.add(False, True) is True and b.mul(True, False) is False and b.zero is False
    s = SemiringSpec("signed")
    assert s.is_normalized([Fraction(2), Fraction(-1)])
    assert not p.is_normalized([Fraction(2), Fraction(-1)])


def test_semiring_rejects_floats_and_unknown_kinds():
    with pytest.raises(TypeError):
        SemiringSpec("probability").coerce(0.5)
    with pytest.raises(ValueError):
        SemiringSpec("tropical")
    assert SemiringSpec("probability").coerce("1/3") == Fraction(1, 3)
    assert SemiringSpec("possibility").coerce("true") is True


# -- local distributions ---------------------------------------------------------------------


def test_marginalize():
    d = LocalDistribution({"X", "W"}, {EventSet({"X": "0", "W": "0"}): HALF, EventSet({"X": "1", "W": "0"}): HALF}, "probability")
    m = marginalize(d, {"W"})
    assert m[{"W": "0"}] == 1 and m[{"W": "1"}] == 0
    with pytest.raises(NotSubset):
        marginalize(d, {"Q"})


def test_local_distribution_domain():
    with pytest.raises(DomainMismatch):
        LocalDistribution({"X", "W"}, {EventSet({"X": "0"}): 1}, "probability")


def test_models_need_normalized_locals_and_every_facet():
    s = bell_scenario()

    def table(facets, w):
        return {f: {tuple((x, "0") for x in sorted(f)): w} for f in facets}

    make_model(s, table(s.cover.facets, 1))
    with pytest.raises(DomainMismatch):
        make_model(s, table(s.cover.sorted()[1:], 1))
    with pytest.raises(NotNormalized):
        make_model(s, table(s.cover.facets, HALF))


def test_compatibility_witness():
    s = bell_scenario()
    table = {}
    for f in s.cover.facets:
        x = sorted(f)
        table[f] = {((x[0], "0"), (x[1], "0")): 1}
    # put W=1 on {X,W} only, so {X,W} and {Y,W} disagree on W
    fw = frozenset({"X", "W"})
    table[fw] = {(("W", "1"), ("X", "0")): 1}
    m = make_model(s, table)
    rep = check_compatibility(m)
    assert not rep
    assert rep.witness[0] in (("W",), ("X",))
    with pytest.raises(IncompatibleModel):
        find_global_section(m)


# -- standard models -------------------------------------------------------------------------


def _chsh(m):
    """Sum of correlators with the sign flipped on the anticorrelated context {Y,Z}."""
    total = Fraction(0)
    for f, d in m.locals.items():
        e = sum(((1 if len(set(a.values())) == 1 else -1) * v for a, v in d.weights.items()), Fraction(0))
        total += -e if f == frozenset({"Y", "Z"}) else e
    return total


def test_classical_bell_has_an_exact_section():
    m = corpus.get_model("classical-bell")
    assert check_compatibility(m)
    sec = find_global_section(m)
    assert sec
    assert section_residual(m, sec) == {}
    assert abs(_chsh(m)) <= 2


def test_pr_box_is_contextual():
    m = corpus.get_model("pr-box")
    assert check_compatibility(m)
    res = find_global_section(m)
    assert isinstance(res, Infeasible) and not res
    assert verify_certificate(m, res)
    system = constraint_system(m)
    assert len(system.strategies) == 16
    assert vertex_enumeration_feasible(system.matrix, system.rhs) is None
    # the CHSH expression reaches 4, past the bound 2 that every deterministic strategy obeys
    assert _chsh(m) == 4
    for s in system.strategies:
        det = model_from_section(m.scenario, {s: 1})
        assert abs(_chsh(det)) <= 2


def test_tampered_certificate_is_rejected():
    m = corpus.get_model("pr-box")
    res = find_global_section(m)
    bad = Infeasible(res.semiring, tuple(-v for v in res.certificate), res.reason, res.rows)
    assert not verify_certificate(m, bad)


def test_pr_box_over_signed_weights():
    pr = corpus.get_model("pr-box")
    table = {f: dict(d.weights) for f, d in pr.locals.items()}
    m = make_model(pr.scenario, table, "signed")
    sec = find_global_section(m)
    assert sec
    assert section_residual(m, sec) == {}
    assert any(v < 0 for v in sec.weights.values())


def test_classical_bell_over_signed_weights():
    s = bell_scenario()
    m = make_model(s, {f: dict(d.weights) for f, d in corpus.get_model("classical-bell").locals.items()}, "signed")
    assert find_global_section(m)


def test_ghz_has_no_boolean_section():
    m = corpus.get_model("ghz")
    assert check_compatibility(m)
    res = find_global_section(m)
    assert not res
    assert verify_certificate(m, res)
    assert boolean_section_exhaustive(m) is False


def test_possibilistic_bell_supports():
    s = bell_scenario()
    classical = corpus.get_model("classical-bell")
    poss = make_model(s, {f: {a: bool(v) for a, v in d.weights.items()} for f, d in classical.locals.items()}, "possibility")
    assert find_global_section(poss)
    assert boolean_section_exhaustive(poss)
    pr = corpus.get_model("pr-box")
    poss_pr = make_model(s, {f: {a: bool(v) for a, v in d.weights.items()} for f, d in pr.locals.items()}, "possibility")
    res = find_global_section(poss_pr)
    assert not res and not boolean_section_exhaustive(poss_pr)
    assert verify_certificate(poss_pr, res)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_boolean_decision_agrees_with_exhaustive_search(seed):
    rng = random.Random(seed)
    s = bell_scenario()
    table = {}
    for f in s.cover.facets:
        xs = sorted(f)
        rows = {tuple(zip(xs, bits)): rng.random() < 0.5 for bits in itertools.product("01", repeat=2)}
        if not any(rows.values()):
            rows[next(iter(rows))] = True
        table[f] = rows
    m = make_model(s, table, "possibility")
    if not check_compatibility(m):
        return
    assert bool(find_global_section(m)) == boolean_section_exhaustive(m)


# -- forward and backward --------------------------------------------------------------------


def _random_mix(rng, strategies, k):
    chosen = rng.sample(strategies, min(k, len(strategies)))
    raw = [rng.randint(1, 9) for _ in chosen]
    total = sum(raw)
    return {s: Fraction(r, total) for s, r in zip(chosen, raw)}


@pytest.mark.parametrize("name", ["minimal", "cyclic3", "adaptive", "cyclic4", "ghz", "gp"])
def test_forward_then_backward(name):
    g = corpus.get(name).game
    rng = random.Random(hash(name) % 1000)
    strategies = enumerate_pure_strategies(g, g.nature)
    for _ in range(5):
        mix = _random_mix(rng, strategies, rng.randint(1, 4))
        m = model_from_strategy_mix(g, mix)
        assert check_compatibility(m)
        sec = find_global_section(m)
        assert sec
        hvm = deterministic_hvm_from_section(sec)
        assert remix(m.scenario, hvm) == m


def test_observer_mix_does_not_change_locals():
    g = corpus.get("cyclic4").game
    nat = {s: Fraction(1, 16) for s in enumerate_pure_strategies(g, g.nature)}
    obs = {s: Fraction(1, 4) for s in enumerate_pure_strategies(g, g.observer)}
    assert model_from_strategy_mix(g, nat, obs) == model_from_strategy_mix(g, nat)


def test_history_distribution_matches_context_times_local():
    g = corpus.get("cyclic4").game
    m = corpus.get_model("pr-box")
    sec = find_global_section(make_model(m.scenario, {f: dict(d.weights) for f, d in m.locals.items()}, "signed"))
    nat = {s: w for s, w in sec.weights.items()}
    obs_strats = enumerate_pure_strategies(g, g.observer)
    obs = {s: Fraction(1, len(obs_strats)) for s in obs_strats}
    dist = history_distribution(g, nat, obs, "signed")
    assert sum(dist.values()) == 1
    for h, w in dist.items():
        f = frozenset(x for x in h if x in m.scenario.outcomes)
        a = EventSet({x: h[x] for x in f})
        assert w == Fraction(1, 4) * m.locals[f][a]


def test_normalization_of_mixes_is_enforced():
    g = corpus.get("minimal").game
    s = enumerate_pure_strategies(g, g.nature)[0]
    with pytest.raises(NotNormalized):
        model_from_strategy_mix(g, {s: HALF})


def test_nature_strategies_are_total():
    s = bell_scenario()
    strategies = nature_strategies(s)
    assert len(strategies) == 16
    assert all(isinstance(x, FrozenMap) and set(x) == set(s.measurements) for x in strategies)
