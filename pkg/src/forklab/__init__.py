"""Simulate forking games between an honest space profile and an adaptive adversary."""

from .adversaries import (
    FAKE_S,
    FAKE_S_TILDE,
    GenesisAttack,
    ProfilePair,
    UniversalAttack,
    WeightAttack,
    genesis_attack,
    replot_schedule,
    universal_attack,
    universal_profiles,
    weight_attack,
    weight_crossing,
)
from .bounds import bound_report, ell_genesis, ell_tent_lower, ell_universal, ell_weight, k_steps
from .game import (
    AdversaryAction,
    GameError,
    GameParams,
    GameState,
    Outcome,
    Strategy,
    Transcript,
    evaluate,
    initial_state,
    replay,
    run_game,
    step,
)
from .model import Block, Chain, Tent, chain_weight, fork_point, tent_fit, validate_profile
from .rules import RuleSpec, cs_genesis, cs_tent, cs_weight, parse_rule, select
from .search import SearchBudgetExceeded, grid_search

__version__ = "0.1.0"
