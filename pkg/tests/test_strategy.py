import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pools import compatible_families
from spacetime_games import corpus
from spacetime_games._maps import FrozenMap
from spacetime_games.errors import DomainMismatch, DomainNotContained, UnknownPlayer
from spacetime_games.game import enumerate_complete_histories, natural_cover
from spacetime_games.strategy import (
    GluingFailure,
    PureStrategy,
    SectionFamily,
    enumerate_pure_strategies,
    family_from_strategy,
    glue_strategies,
    play,
    reduced_strategic_form,
    restrict_strategy,
    strategic_form,
)


def test_strategy_counts_bell():
    g = corpus.get("bell").game
    assert len(enumerate_pure_strategies(g, "Alfred")) == 16
    assert len(enumerate_pure_strategies(g, "Bob")) == 4


def test_unknown_player():
    with pytest.raises(UnknownPlayer):
        enumerate_pure_strategies(corpus.get("minimal").game, "Carol")


@pytest.mark.parametrize("entry", corpus.all_entries(), ids=lambda e: e.name)
def test_play_reaches_exactly_the_outcomes(entry):
    g = entry.game
    if len(enumerate_pure_strategies(g, "Alfred")) * len(enumerate_pure_strategies(g, "Bob")) > 40000:
        pytest.skip("large table")
    form = strategic_form(g)
    assert form.distinct_outcomes() == set(enumerate_complete_histories(g))


def test_play_follows_strategies():
    g = corpus.get("fig5").game
    nature = PureStrategy("Alfred", {"X": "1", "Y": "0", "W": "1", "Z": "0"})
    bob = PureStrategy("Bob", {"A": frozenset({"Y"}), "B": frozenset({"Z"})})
    h = play(g, [nature, bob])
    assert dict(h) == {"A": frozenset({"Y"}), "Y": "0", "B": frozenset({"Z"}), "Z": "0"}


def test_gp_strategic_form_shape():
    form = strategic_form(corpus.get("gp").game)
    assert form.shape == (1024, 32)
    assert len(form.distinct_outcomes()) == 16


def test_gp_reduced_form():
    g = corpus.get("gp").game
    red = reduced_strategic_form(g)
    assert red.class_count("Alfred") == 64
    second_stage = {i for i in g.info_sets_of("Alfred") if "." in i}
    assert len(second_stage) == 8
    for cls in red.classes["Alfred"]:
        assert len(red.involved_info_sets("Alfred", cls) & second_stage) == 4
    # every class has the same size: the 4 uninvolved sets are free
    assert {len(c) for c in red.classes["Alfred"]} == {16}


def test_reduced_classes_have_equal_rows():
    red = reduced_strategic_form(corpus.get("fig5").game)
    for p in red.form.players:
        for cls in red.classes[p]:
            rows = {red.form.row(p, k) for k in cls}
            assert len(rows) == 1
        reps = [red.form.row(p, c[0]) for c in red.classes[p]]
        assert len(set(reps)) == len(reps)


# -- presheaf ------------------------------------------------------------------------------


def test_restriction_and_errors():
    s = PureStrategy("Alfred", {"X": "0", "Y": "1"})
    assert restrict_strategy(s, {"X"}).choice == FrozenMap({"X": "0"})
    with pytest.raises(DomainNotContained):
        restrict_strategy(s, {"Q"})


def test_restriction_is_functorial():
    s = PureStrategy("Alfred", {"X": "0", "Y": "1", "Z": "0"})
    assert restrict_strategy(restrict_strategy(s, {"X", "Y"}), {"X"}) == restrict_strategy(s, {"X"})
    assert restrict_strategy(s, s.domain) == s


def test_family_needs_one_section_per_facet():
    cover = natural_cover(corpus.get("cyclic3").game)
    with pytest.raises(DomainMismatch):
        SectionFamily(cover, {})


def _options(g):
    return {x: g.info_available(x) for x in g.info_sets_of(g.nature)}


@pytest.mark.parametrize("entry", corpus.all_entries(), ids=lambda e: e.name)
def test_every_compatible_family_glues_uniquely(entry):
    g = entry.game
    cover = natural_cover(g)
    options = _options(g)
    glued = set()
    n = 0
    for fam in compatible_families(cover, options):
        family = SectionFamily(cover, {f: PureStrategy("Alfred", a) for f, a in fam.items()})
        s = glue_strategies(family)
        assert isinstance(s, PureStrategy)
        assert family_from_strategy(s, cover) == family
        glued.add(s)
        n += 1
    # gluing is injective and hits every global assignment on the covered sets
    total = 1
    for x in cover.vertices:
        total *= len(options[x])
    assert len(glued) == n == total


@pytest.mark.parametrize("name", ["cyclic3", "cyclic4", "adaptive", "ghz"])
def test_incompatible_families_report_the_overlap(name):
    g = corpus.get(name).game
    cover = natural_cover(g)
    rng = random.Random(7)
    facets = cover.sorted()
    overlapping = [(f, h) for f, h in itertools.combinations(facets, 2) if f & h]
    for _ in range(20):
        f, h = rng.choice(overlapping)
        base = {x: rng.choice(sorted(g.info_available(x))) for x in cover.vertices}
        local = {c: PureStrategy("Alfred", {x: base[x] for x in c}) for c in facets}
        x = rng.choice(sorted(f & h))
        other = next(a for a in sorted(g.info_available(x)) if a != base[x])
        local[h] = PureStrategy("Alfred", {**dict(local[h].choice), x: other})
        res = glue_strategies(SectionFamily(cover, local))
        assert isinstance(res, GluingFailure) and not res
        assert res.overlap and res.overlap <= res.facets[0] & res.facets[1]


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_random_games_sheaf_property(seed):
    g = corpus.random_alternating_game(random.Random(seed), max_stages=2)
    cover = natural_cover(g)
    options = _options(g)
    count = sum(1 for fam in compatible_families(cover, options) if glue_strategies(SectionFamily(cover, {f: PureStrategy("Alfred", a) for f, a in fam.items()})))
    total = 1
    for x in cover.vertices:
        total *= len(options[x])
    assert count == total
