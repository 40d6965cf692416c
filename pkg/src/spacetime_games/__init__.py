"""Spacetime games, causal contextuality scenarios, and the functors between them."""

from ._maps import EventSet, FrozenMap, History
from .categories import (
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
    lift_morphism,
    roundtrip_iso,
)
from .cover import Cover
from .empirical import (
    EmpiricalModel,
    GlobalSection,
    Infeasible,
    LocalDistribution,
    SemiringSpec,
    check_compatibility,
    deterministic_hvm_from_section,
    find_global_section,
    marginalize,
    model_from_strategy_mix,
)
from .errors import SpacetimeError
from .game import (
    SpacetimeGame,
    build_game,
    canonicalize_contexts,
    check_alternating,
    enumerate_complete_histories,
    enumerate_histories,
    natural_cover,
    to_extensive_form,
    validate,
)
from .scenario import (
    Scenario,
    check_acyclic,
    check_causally_secured,
    check_unique_causal_bridges,
    enabled,
    local_cover_restriction,
    prune_unused_settings,
    tau,
    tau_bar,
)
from .strategy import (
    PureStrategy,
    SectionFamily,
    enumerate_pure_strategies,
    glue_strategies,
    play,
    reduced_strategic_form,
    restrict_strategy,
    strategic_form,
)

__version__ = "0.1.0"

__all__ = [
    "Cover",
    "EmpiricalModel",
    "EventSet",
    "FrozenMap",
    "GameMorphism",
    "GlobalSection",
    "History",
    "Infeasible",
    "LocalDistribution",
    "PureStrategy",
    "Scenario",
    "ScenarioMorphism",
    "SectionFamily",
    "SemiringSpec",
    "SpacetimeError",
    "SpacetimeGame",
    "build_game",
    "canonicalize_contexts",
    "check_acyclic",
    "check_alternating",
    "check_causally_secured",
    "check_compatibility",
    "check_game_morphism",
    "check_scenario_morphism",
    "check_unique_causal_bridges",
    "compose_game_morphisms",
    "compose_scenario_morphisms",
    "deterministic_hvm_from_section",
    "enabled",
    "enumerate_complete_histories",
    "enumerate_histories",
    "enumerate_pure_strategies",
    "find_global_section",
    "functor_F_morphism",
    "functor_F_object",
    "functor_G_object",
    "glue_strategies",
    "identity_game_morphism",
    "identity_scenario_morphism",
    "lift_morphism",
    "local_cover_restriction",
    "marginalize",
    "model_from_strategy_mix",
    "natural_cover",
    "play",
    "prune_unused_settings",
    "reduced_strategic_form",
    "restrict_strategy",
    "roundtrip_iso",
    "strategic_form",
    "tau",
    "tau_bar",
    "to_extensive_form",
    "validate",
]
