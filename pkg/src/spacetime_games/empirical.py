"""Empirical models over semirings, compatibility, forward generation and global sections."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from ._maps import EventSet, FrozenMap, History, action_key, format_action
from .cover import Cover
from .errors import DomainMismatch, IncompatibleModel, NotNormalized, NotSubset
from .game import SpacetimeGame
from .linear import (
    nonnegative_feasibility,
    residual,
    solve_linear_system,
    verify_farkas,
    verify_inconsistency,
)
from .scenario import Scenario
from .strategy import PureStrategy, play, strategies_on

PROBABILITY = "probability"
POSSIBILITY = "possibility"
SIGNED = "signed"
SEMIRINGS = (PROBABILITY, POSSIBILITY, SIGNED)


@dataclass(frozen=True)
class SemiringSpec:
    kind: str

    def __post_init__(self):
        if self.kind not in SEMIRINGS:
            raise ValueError(f"unknown semiring {self.kind!r}; expected one of {', '.join(SEMIRINGS)}")

    @property
    def zero(self):
        return False if self.kind == POSSIBILITY else Fraction(0)

    @property
    def one(self):
        return True if self.kind == POSSIBILITY else Fraction(1)

    def add(self, a, b):
        return (a or b) if self.kind == POSSIBILITY else a + b

    def mul(self, a, b):
        return (a and b) if self.kind == POSSIBILITY else a * b

    def total(self, values: Iterable):
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def coerce(self, value):
        if self.kind == POSSIBILITY:
            if isinstance(value, str):
                if value.lower() in ("1", "true", "t"):
                    return True
                if value.lower() in ("0", "false", "f"):
                    return False
                raise ValueError(f"not a boolean: {value!r}")
            return bool(value)
        if isinstance(value, float):
            raise TypeError("floats are not accepted; use Fraction or 'p/q' strings")
        return Fraction(value)

    def is_normalized(self, values: Iterable) -> bool:
        values = list(values)
        if self.kind == POSSIBILITY:
            return any(values)
        if self.kind == PROBABILITY and any(v < 0 for v in values):
            return False
        return sum(values, Fraction(0)) == 1

    def format(self, value) -> str:
        if self.kind == POSSIBILITY:
            return "1" if value else "0"
        return str(value)


def as_semiring(kind) -> SemiringSpec:
    return kind if isinstance(kind, SemiringSpec) else SemiringSpec(kind)


def joint_assignments(measurements: Iterable, outcomes: Mapping) -> list[EventSet]:
    xs = sorted(measurements, key=str)
    opts = [sorted(outcomes[x], key=action_key) for x in xs]
    return [EventSet(zip(xs, combo)) for combo in itertools.product(*opts)]


@dataclass(frozen=True)
class LocalDistribution:
    """Semiring weights on every joint outcome of a facet (missing entries are zero)."""

    facet: frozenset
    weights: Mapping[EventSet, Any]
    semiring: SemiringSpec

    def __post_init__(self):
        object.__setattr__(self, "facet", frozenset(self.facet))
        sr = as_semiring(self.semiring)
        object.__setattr__(self, "semiring", sr)
        w = {}
        for a, v in self.weights.items():
            a = a if isinstance(a, EventSet) else EventSet(a)
            if a.support != self.facet:
                raise DomainMismatch(f"assignment {a} is not a joint outcome of {sorted(self.facet, key=str)}")
            w[a] = sr.coerce(v)
        object.__setattr__(self, "weights", FrozenMap(w))

    def __getitem__(self, assignment) -> Any:
        a = assignment if isinstance(assignment, EventSet) else EventSet(assignment)
        return self.weights.get(a, self.semiring.zero)

    def support(self) -> list[EventSet]:
        return [a for a, v in self.weights.items() if v]

    def normalized(self) -> bool:
        return self.semiring.is_normalized(self.weights.values())

    def nonzero(self) -> FrozenMap:
        return FrozenMap((a, v) for a, v in self.weights.items() if v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocalDistribution):
            return NotImplemented
        return self.facet == other.facet and self.semiring == other.semiring and self.nonzero() == other.nonzero()

    def __hash__(self) -> int:
        return hash((self.facet, self.semiring, self.nonzero()))


def marginalize(d: LocalDistribution, sub: Iterable) -> LocalDistribution:
    sub = frozenset(sub)
    if not sub <= d.facet:
        raise NotSubset(f"{sorted(sub - d.facet, key=str)} not in facet {sorted(d.facet, key=str)}")
    acc: dict[EventSet, Any] = {}
    sr = d.semiring
    for a, v in d.weights.items():
        key = a.restrict(sub)
        acc[key] = sr.add(acc.get(key, sr.zero), v)
    return LocalDistribution(sub, acc, sr)


@dataclass(frozen=True)
class EmpiricalModel:
    scenario: Scenario
    locals: Mapping[frozenset, LocalDistribution]
    semiring: SemiringSpec

    def __post_init__(self):
        sr = as_semiring(self.semiring)
        object.__setattr__(self, "semiring", sr)
        object.__setattr__(self, "locals", FrozenMap((frozenset(k), v) for k, v in self.locals.items()))
        facets = set(self.scenario.cover.facets)
        if set(self.locals) != facets:
            raise DomainMismatch("an empirical model needs exactly one local distribution per cover facet")
        for f, d in self.locals.items():
            if d.facet != f or d.semiring != sr:
                raise DomainMismatch(f"local distribution at {sorted(f, key=str)} has the wrong facet or semiring")
            for a in d.weights:
                for x, o in a.items():
                    if o not in self.scenario.outcomes[x]:
                        raise DomainMismatch(f"{x}={format_action(o)} is not an outcome of {x}")
            if not d.normalized():
                raise NotNormalized(f"local distribution at {sorted(f, key=str)} is not normalized")

    def facets(self) -> list[frozenset]:
        return self.scenario.cover.sorted(self.scenario.order)


def make_model(scenario: Scenario, table: Mapping, semiring="probability") -> EmpiricalModel:
    """Build a model from ``{facet: {assignment: value}}`` with plain containers."""
    sr = as_semiring(semiring)
    locals_ = {}
    for f, weights in table.items():
        f = frozenset(f)
        locals_[f] = LocalDistribution(f, {EventSet(a): v for a, v in weights.items()}, sr)
    return EmpiricalModel(scenario, locals_, sr)


@dataclass(frozen=True)
class CompatibilityReport:
    compatible: bool
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.compatible


def check_compatibility(m: EmpiricalModel) -> CompatibilityReport:
    facets = m.facets()
    for f, g in itertools.combinations(facets, 2):
        overlap = f & g
        if not overlap:
            continue
        a = marginalize(m.locals[f], overlap)
        b = marginalize(m.locals[g], overlap)
        if a != b:
            bad = sorted(overlap, key=m.scenario.order.get)
            return CompatibilityReport(False, (tuple(bad), tuple(sorted(f, key=str)), tuple(sorted(g, key=str))))
    return CompatibilityReport(True)


# -- forward generation -------------------------------------------------------------------


def _normalize_mix(mix: Mapping, sr: SemiringSpec, what: str) -> dict:
    out = {}
    for s, v in mix.items():
        key = s.choice if isinstance(s, PureStrategy) else FrozenMap(s)
        out[key] = sr.add(out.get(key, sr.zero), sr.coerce(v))
    if not sr.is_normalized(out.values()):
        raise NotNormalized(f"{what} weights are not normalized")
    return out


def model_from_section(scenario: Scenario, weights: Mapping, semiring="probability") -> EmpiricalModel:
    """Push a weighting of total assignments on the measurements down to every facet."""
    sr = as_semiring(semiring)
    mix = _normalize_mix(weights, sr, "section")
    locals_ = {}
    for f in scenario.cover.facets:
        acc = {a: sr.zero for a in joint_assignments(f, scenario.outcomes)}
        for s, w in mix.items():
            if not w:
                continue
            key = EventSet(s.restrict(f))
            acc[key] = sr.add(acc[key], w)
        locals_[f] = LocalDistribution(f, acc, sr)
    return EmpiricalModel(scenario, locals_, sr)


def model_from_strategy_mix(
    game: SpacetimeGame,
    nature_mix: Mapping,
    observer_mix: Mapping | None = None,
    semiring="probability",
) -> EmpiricalModel:
    """The empirical model of a mixed strategy of nature.

    Each facet is conditioned on the observer choices that activate it, so
    the local distribution at a facet is the weight of the nature strategies
    restricting to each joint outcome; ``observer_mix`` is validated but does
    not enter the locals.
    """
    from .categories import game_scenario

    sr = as_semiring(semiring)
    if observer_mix is not None:
        _normalize_mix(observer_mix, sr, "observer")
    return model_from_section(game_scenario(game), nature_mix, sr)


def history_distribution(game: SpacetimeGame, nature_mix: Mapping, observer_mix: Mapping, semiring="probability") -> dict[History, Any]:
    """Weights of complete histories when independent mixed strategies are played out."""
    sr = as_semiring(semiring)
    nat = _normalize_mix(nature_mix, sr, "nature")
    obs = _normalize_mix(observer_mix, sr, "observer")
    out: dict[History, Any] = {}
    for (s_n, w_n), (s_o, w_o) in itertools.product(nat.items(), obs.items()):
        w = sr.mul(w_n, w_o)
        if not w:
            continue
        h = play(game, {game.nature: PureStrategy(game.nature, s_n), game.observer: PureStrategy(game.observer, s_o)})
        out[h] = sr.add(out.get(h, sr.zero), w)
    return out


# -- global sections -------------------------------------------------------------------------


@dataclass(frozen=True)
class GlobalSection:
    scenario: Scenario
    weights: Mapping[FrozenMap, Any]
    semiring: SemiringSpec

    def __post_init__(self):
        object.__setattr__(self, "weights", FrozenMap(self.weights))

    def support(self) -> list[FrozenMap]:
        return [s for s, v in self.weights.items() if v]


@dataclass(frozen=True)
class Infeasible:
    semiring: SemiringSpec
    certificate: Any = None
    reason: str = ""
    rows: tuple = ()

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class ConstraintSystem:
    strategies: tuple[FrozenMap, ...]
    rows: tuple[tuple, ...]  # (facet, assignment) per row; ("normalization",) last
    matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Any, ...]


def nature_strategies(scenario: Scenario) -> list[FrozenMap]:
    return [s.choice for s in strategies_on(scenario.measurements, scenario.outcomes, "nature")]


def constraint_system(m: EmpiricalModel) -> ConstraintSystem:
    """One row per (facet, joint outcome) plus normalization; one column per nature strategy."""
    strategies = nature_strategies(m.scenario)
    rows, matrix, rhs = [], [], []
    for f in m.facets():
        for a in joint_assignments(f, m.scenario.outcomes):
            rows.append((f, a))
            matrix.append(tuple(Fraction(int(s.restrict(f) == a)) for s in strategies))
            rhs.append(m.locals[f][a])
    rows.append(("normalization",))
    matrix.append(tuple(Fraction(1) for _ in strategies))
    rhs.append(m.semiring.one)
    return ConstraintSystem(tuple(strategies), tuple(rows), tuple(matrix), tuple(rhs))


def find_global_section(m: EmpiricalModel, check: bool = True) -> GlobalSection | Infeasible:
    """Decide whether nature has a mixed strategy reproducing the model."""
    if check:
        rep = check_compatibility(m)
        if not rep.compatible:
            raise IncompatibleModel(rep)
    sr = m.semiring
    system = constraint_system(m)
    if sr.kind == POSSIBILITY:
        return _boolean_section(m, system)
    if sr.kind == PROBABILITY:
        res = nonnegative_feasibility(system.matrix, system.rhs)
        if res.feasible:
            section = GlobalSection(m.scenario, dict(zip(system.strategies, res.x)), sr)
            _assert_exact(system, res.x)
            return section
        return Infeasible(sr, res.certificate, "no non-negative weighting of nature strategies matches the model", system.rows)
    res = solve_linear_system(system.matrix, system.rhs)
    if res.feasible:
        _assert_exact(system, res.x)
        return GlobalSection(m.scenario, dict(zip(system.strategies, res.x)), sr)
    return Infeasible(sr, res.certificate, "the marginal equations are inconsistent", system.rows)


def _assert_exact(system: ConstraintSystem, x) -> None:
    if any(residual(system.matrix, x, system.rhs)):
        raise ArithmeticError("solver returned a solution with non-zero residual")


def _boolean_section(m: EmpiricalModel, system: ConstraintSystem) -> GlobalSection | Infeasible:
    # The union of sections is a section, so it suffices to test the largest candidate:
    # all strategies whose every facet restriction is possible.
    candidates = [
        s for s in system.strategies if all(m.locals[f][EventSet(s.restrict(f))] for f in m.facets())
    ]
    covered = {(f, EventSet(s.restrict(f))) for s in candidates for f in m.facets()}
    missing = [(f, a) for f in m.facets() for a in m.locals[f].support() if (f, a) not in covered]
    if candidates and not missing:
        return GlobalSection(m.scenario, {s: s in candidates for s in system.strategies}, m.semiring)
    if not candidates:
        return Infeasible(m.semiring, (), "no nature strategy is consistent with every context", ())
    return Infeasible(m.semiring, tuple(missing), "some possible joint outcomes extend to no consistent strategy", ())


def verify_certificate(m: EmpiricalModel, result: Infeasible) -> bool:
    """Independent check that an infeasibility certificate refutes the model."""
    system = constraint_system(m)
    if result.semiring.kind == PROBABILITY:
        return verify_farkas(system.matrix, system.rhs, result.certificate)
    if result.semiring.kind == SIGNED:
        return verify_inconsistency(system.matrix, system.rhs, result.certificate)
    # boolean: every strategy restricts to an impossible outcome somewhere, or some
    # possible outcome is reached only by such strategies
    good = [s for s in system.strategies if all(m.locals[f][EventSet(s.restrict(f))] for f in m.facets())]
    if not result.certificate:
        return not good
    return all(not any(EventSet(s.restrict(f)) == a for s in good) for f, a in result.certificate)


def boolean_section_exhaustive(m: EmpiricalModel, max_strategies: int = 20) -> bool:
    """Oracle: try every non-empty set of nature strategies (small scenarios only).

    A strategy producing an impossible joint outcome can belong to no matching
    set, so only the remaining ones are combined; ``max_strategies`` bounds those.
    """
    target = {(f, a) for f in m.facets() for a in m.locals[f].support()}
    strategies = [
        s for s in nature_strategies(m.scenario) if all((f, EventSet(s.restrict(f))) in target for f in m.facets())
    ]
    if len(strategies) > max_strategies:
        raise ValueError("too many strategies for exhaustive search")
    for k in range(1, len(strategies) + 1):
        for subset in itertools.combinations(strategies, k):
            got = {(f, EventSet(s.restrict(f))) for s in subset for f in m.facets()}
            if got == target:
                return True
    return False


def section_residual(m: EmpiricalModel, section: GlobalSection) -> dict:
    """Difference between the section's marginals and the model, per facet (empty when exact)."""
    remix = model_from_section(m.scenario, section.weights, m.semiring)
    out = {}
    for f in m.facets():
        if remix.locals[f] != m.locals[f]:
            out[f] = (remix.locals[f], m.locals[f])
    return out


def deterministic_hvm_from_section(section: GlobalSection) -> list[tuple[PureStrategy, Any]]:
    """The strategies carrying weight, each paired with its weight (lambda index = list position)."""
    order = {s: k for k, s in enumerate(nature_strategies(section.scenario))}
    out = [(PureStrategy("nature", s), w) for s, w in section.weights.items() if w]
    out.sort(key=lambda p: order.get(p[0].choice, len(order)))
    return out


def remix(scenario: Scenario, hvm: Iterable[tuple[PureStrategy, Any]], semiring="probability") -> EmpiricalModel:
    return model_from_section(scenario, {s.choice: w for s, w in hvm}, semiring)


__all__ = [
    "CompatibilityReport",
    "ConstraintSystem",
    "EmpiricalModel",
    "GlobalSection",
    "Infeasible",
    "LocalDistribution",
    "POSSIBILITY",
    "PROBABILITY",
    "SEMIRINGS",
    "SIGNED",
    "SemiringSpec",
    "as_semiring",
    "boolean_section_exhaustive",
    "check_compatibility",
    "constraint_system",
    "deterministic_hvm_from_section",
    "find_global_section",
    "history_distribution",
    "joint_assignments",
    "make_model",
    "marginalize",
    "model_from_section",
    "model_from_strategy_mix",
    "nature_strategies",
    "remix",
    "section_residual",
    "verify_certificate",
]
