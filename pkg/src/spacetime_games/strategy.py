"""Pure strategies, strategic and reduced strategic forms, and the strategy presheaf."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from ._maps import FrozenMap, History, format_action
from .cover import Cover
from .errors import DomainMismatch, DomainNotContained, UnknownPlayer
from .game import SpacetimeGame


@dataclass(frozen=True)
class PureStrategy:
    """A player's choice of action at each of a set of information sets.

    Strategies from :func:`enumerate_pure_strategies` are total on the
    player's information sets; restrictions are partial.
    """

    player: str
    choice: FrozenMap

    def __post_init__(self):
        if not isinstance(self.choice, FrozenMap):
            object.__setattr__(self, "choice", FrozenMap(self.choice))

    @property
    def domain(self) -> frozenset:
        return self.choice.support

    def __getitem__(self, info_set):
        return self.choice[info_set]

    def __str__(self) -> str:
        body = ", ".join(f"{i}={format_action(a)}" for i, a in sorted(self.choice.items(), key=lambda kv: str(kv[0])))
        return f"{self.player}[{body}]"


def enumerate_pure_strategies(game: SpacetimeGame, player: str) -> list[PureStrategy]:
    if player not in game.players:
        raise UnknownPlayer(player)
    sets = game.info_sets_of(player)
    options = [game.sorted_actions(i) for i in sets]
    return [PureStrategy(player, FrozenMap(zip(sets, combo))) for combo in itertools.product(*options)]


def strategies_on(domain: Sequence, outcomes: Mapping, player: str) -> list[PureStrategy]:
    """All total assignments on ``domain`` given per-element option sets (used on scenarios)."""
    from ._maps import action_key

    opts = [sorted(outcomes[x], key=action_key) for x in domain]
    return [PureStrategy(player, FrozenMap(zip(domain, combo))) for combo in itertools.product(*opts)]


def play(game: SpacetimeGame, profile: Mapping[str, PureStrategy] | Iterable[PureStrategy]) -> History:
    """The complete history reached when every activated information set follows the profile."""
    if not isinstance(profile, Mapping):
        profile = {s.player: s for s in profile}
    h: dict = {}
    order = game._activation_order or game.info_set_order
    changed = True
    while changed:
        changed = False
        for i in order:
            if i not in h and game.activated(i, h):
                owner = game.info_owner(i)
                if owner not in profile:
                    raise UnknownPlayer(f"no strategy given for {owner}")
                h[i] = profile[owner][i]
                changed = True
    return History(h)


@dataclass
class StrategicForm:
    """Outcome table over strategy profiles; profiles are tuples of indices in ``players`` order."""

    players: tuple[str, ...]
    strategies: dict[str, list[PureStrategy]]
    table: dict[tuple[int, ...], History]

    def outcome(self, profile: Sequence[int]) -> History:
        return self.table[tuple(profile)]

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(self.strategies[p]) for p in self.players)

    def distinct_outcomes(self) -> frozenset[History]:
        return frozenset(self.table.values())

    def row(self, player: str, index: int) -> tuple[History, ...]:
        """Outcomes of one strategy against every opponent profile, in a fixed order."""
        k = self.players.index(player)
        others = [range(len(self.strategies[p])) if j != k else [index] for j, p in enumerate(self.players)]
        return tuple(self.table[prof] for prof in itertools.product(*others))


def strategic_form(game: SpacetimeGame) -> StrategicForm:
    players = tuple(sorted(game.players))
    strategies = {p: enumerate_pure_strategies(game, p) for p in players}
    table = {}
    for prof in itertools.product(*(range(len(strategies[p])) for p in players)):
        table[prof] = play(game, {p: strategies[p][k] for p, k in zip(players, prof)})
    return StrategicForm(players, strategies, table)


@dataclass
class ReducedForm:
    """Strategies grouped into classes with identical outcome rows."""

    form: StrategicForm
    classes: dict[str, list[list[int]]]

    def class_count(self, player: str) -> int:
        return len(self.classes[player])

    def involved_info_sets(self, player: str, cls: Sequence[int]) -> frozenset[str]:
        """Information sets of ``player`` assigned in some outcome of the class's row."""
        row = self.form.row(player, cls[0])
        own = set(self.form.strategies[player][cls[0]].domain)
        return frozenset(i for h in row for i in h if i in own)

    def representatives(self, player: str) -> list[PureStrategy]:
        return [self.form.strategies[player][c[0]] for c in self.classes[player]]


def reduced_strategic_form(game: SpacetimeGame, form: StrategicForm | None = None) -> ReducedForm:
    form = form or strategic_form(game)
    classes: dict[str, list[list[int]]] = {}
    for p in form.players:
        groups: dict[tuple, list[int]] = {}
        for k in range(len(form.strategies[p])):
            groups.setdefault(form.row(p, k), []).append(k)
        classes[p] = sorted(groups.values())
    return ReducedForm(form, classes)


# -- presheaf --------------------------------------------------------------------------


def restrict_strategy(s: PureStrategy, domain: Iterable) -> PureStrategy:
    domain = frozenset(domain)
    if not domain <= s.domain:
        raise DomainNotContained(f"cannot restrict to {sorted(domain - s.domain)}: outside the strategy's domain")
    return PureStrategy(s.player, s.choice.restrict(domain))


@dataclass(frozen=True)
class SectionFamily:
    cover: Cover
    local: Mapping[frozenset, PureStrategy]

    def __post_init__(self):
        object.__setattr__(self, "local", FrozenMap((frozenset(k), v) for k, v in self.local.items()))
        if set(self.local) != set(self.cover.facets):
            raise DomainMismatch("a section family needs exactly one local section per facet")
        for f, s in self.local.items():
            if s.domain != f:
                raise DomainMismatch(f"local section on {sorted(f)} has domain {sorted(s.domain)}")


@dataclass(frozen=True)
class GluingFailure:
    overlap: frozenset
    facets: tuple[frozenset, frozenset]
    disagreements: tuple = field(default=())

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"local sections disagree on overlap {sorted(self.overlap)}"


def glue_strategies(family: SectionFamily) -> PureStrategy | GluingFailure:
    """Glue pairwise-compatible local sections into the unique global one."""
    facets = family.cover.sorted()
    for f, g in itertools.combinations(facets, 2):
        overlap = f & g
        a, b = family.local[f], family.local[g]
        diff = tuple(sorted((x, a[x], b[x]) for x in overlap if a[x] != b[x]))
        if diff:
            return GluingFailure(frozenset(d[0] for d in diff), (f, g), diff)
    players = {s.player for s in family.local.values()}
    player = players.pop() if len(players) == 1 else None
    glued: dict = {}
    for f in facets:
        glued.update(family.local[f].choice)
    result = PureStrategy(player, FrozenMap(glued))
    for f in facets:
        assert restrict_strategy(result, f) == family.local[f]
    return result


def family_from_strategy(s: PureStrategy, cover: Cover) -> SectionFamily:
    return SectionFamily(cover, {f: restrict_strategy(s, f) for f in cover.facets})


__all__ = [
    "GluingFailure",
    "PureStrategy",
    "ReducedForm",
    "SectionFamily",
    "StrategicForm",
    "enumerate_pure_strategies",
    "family_from_strategy",
    "glue_strategies",
    "play",
    "reduced_strategic_form",
    "restrict_strategy",
    "strategic_form",
    "strategies_on",
]
