"""The forking game as an enforced state machine.

Each round the adversary scales both spaces by ``gamma``, the honest chain
gains one block of the new honest space, and then (unless a replot is still
running) the adversary may bootstrap fresh blocks, replot its last block and
finally stop the game. A single round may combine these sub-steps in that
order, e.g. append a block and immediately start replotting it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from .model import GENESIS, REL_TOL, Block, Chain, fork_point
from .rules import RuleSpec, select

DEFAULT_ROUND_CAP = 10**7


class GameError(ValueError):
    """Illegal move or state; ``round`` is the round in which it happened."""

    def __init__(self, message: str, round: Optional[int] = None):
        self.round = round
        if round is not None:
            message = f"round {round}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class GameParams:
    phi: float
    epsilon: float
    rho: int
    a0: Optional[float] = None

    def __post_init__(self):
        if not self.phi > 1:
            raise ValueError("phi must exceed 1")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if int(self.rho) != self.rho or self.rho < 2:
            raise ValueError("rho must be an integer >= 2")
        if self.a0 is None:
            object.__setattr__(self, "a0", 1.0 / self.phi)
        if not self.a0 > 0:
            raise ValueError("a0 must be positive")

    @property
    def gamma_range(self) -> tuple[float, float]:
        return 1.0 / (1.0 + self.epsilon), 1.0 + self.epsilon


@dataclass(frozen=True)
class AdversaryAction:
    """One round of adversarial choices.

    ``bootstrap`` lists the spaces of blocks appended this round, ``replot``
    is the amount added to the (then) last block, ``stop`` ends the game
    after the other sub-steps.
    """

    gamma: float = 1.0
    bootstrap: tuple[float, ...] = ()
    replot: Optional[float] = None
    stop: bool = False

    def __post_init__(self):
        object.__setattr__(self, "bootstrap", tuple(float(s) for s in self.bootstrap))
        if any(not s > 0 for s in self.bootstrap):
            raise ValueError("bootstrap sizes must be positive")
        if self.replot is not None and not self.replot > 0:
            raise ValueError("replot amount must be positive")

    @property
    def move(self) -> str:
        parts = []
        if self.bootstrap:
            parts.append("bootstrap")
        if self.replot is not None:
            parts.append("replot")
        if self.stop:
            parts.append("stop")
        return "+".join(parts) or "none"

    @property
    def is_idle(self) -> bool:
        return not self.bootstrap and self.replot is None


@dataclass
class GameState:
    params: GameParams
    round: int = 0
    lock: int = 0
    adv_space: float = 0.0
    honest_space: float = 0.0
    honest: list = field(default_factory=list)
    adversarial: list = field(default_factory=list)
    stopped: bool = False

    @property
    def honest_chain(self) -> Chain:
        return Chain(tuple(self.honest))

    @property
    def adv_chain(self) -> Chain:
        return Chain(tuple(self.adversarial))

    @property
    def adv_length(self) -> int:
        """Index of the adversary's last block."""
        return len(self.adversarial) - 1

    def snapshot(self) -> tuple:
        """Hashable summary used for bit-identical replay checks."""
        return (
            self.round,
            self.lock,
            self.adv_space,
            self.honest_space,
            tuple(self.honest),
            tuple(self.adversarial),
            self.stopped,
        )


class Outcome(NamedTuple):
    winner: int
    fork_length: int


def initial_state(params: GameParams) -> GameState:
    return GameState(
        params=params,
        adv_space=params.a0,
        honest_space=params.a0 * params.phi,
        honest=[GENESIS],
        adversarial=[GENESIS],
    )


def _fits(size: float, cap: float) -> bool:
    return size <= cap * (1 + REL_TOL)


def step(state: GameState, action: AdversaryAction) -> GameState:
    """Play one round in place and return ``state``.

    The action is validated in full before anything changes, so a rejected
    action leaves ``state`` untouched.
    """
    p = state.params
    rnd = state.round + 1
    if state.stopped:
        raise GameError("game already stopped", rnd)
    lo, hi = p.gamma_range
    if not (lo * (1 - REL_TOL) <= action.gamma <= hi * (1 + REL_TOL)):
        raise GameError(f"gamma {action.gamma!r} outside [{lo!r}, {hi!r}]", rnd)

    a = state.adv_space * action.gamma
    locked = state.lock > 0
    lock = state.lock - 1 if locked else state.lock
    length = state.adv_length
    if locked and not action.is_idle:
        raise GameError("move attempted while replotting", rnd)
    for size in action.bootstrap:
        if not _fits(size, a):
            raise GameError(f"bootstrap block {size!r} exceeds adversarial space {a!r}", rnd)
    length += len(action.bootstrap)
    if action.replot is not None:
        if length < 1:
            raise GameError("cannot replot the genesis block", rnd)
        if not _fits(action.replot, a):
            raise GameError(f"replot amount {action.replot!r} exceeds adversarial space {a!r}", rnd)
        lock = p.rho - 1
    if action.stop:
        if lock != 0:
            raise GameError("cannot stop while replotting", rnd)
        if length < rnd:
            raise GameError(f"cannot stop: adversarial chain has length {length} < {rnd}", rnd)

    state.round = rnd
    state.adv_space = a
    state.honest_space = a * p.phi
    state.honest.append(Block(state.honest_space, rnd))
    for size in action.bootstrap:
        pos = len(state.adversarial)
        state.adversarial.append(Block(size, -pos))
    if action.replot is not None:
        last = state.adversarial[-1]
        state.adversarial[-1] = Block(last.space + action.replot, last.payload_id)
    state.lock = lock
    state.stopped = action.stop
    return state


def evaluate(state: GameState, rule: RuleSpec) -> Outcome:
    """Winner bit and fork length of a stopped game."""
    if not state.stopped:
        raise GameError("game not stopped")
    n = state.round + 1
    if len(state.adversarial) < n:
        raise GameError("adversarial chain shorter than honest chain")
    honest = state.honest_chain
    adv = Chain(tuple(state.adversarial[:n]))
    winner = select(rule.resolve(state.params.epsilon), honest, adv)
    lam = fork_point(honest, adv)
    fork_length = 0 if lam is None else state.round - (lam - 1)
    return Outcome(winner, fork_length)


class Strategy:
    """Scripted adversary. Subclasses implement :meth:`act`.

    :meth:`start` is called once with the initial state before the first
    round, so a strategy object can be reused for several games.
    """

    name = "strategy"

    def __init__(self, **params):
        self.params = params

    def start(self, state: GameState) -> None:
        pass

    def act(self, state: GameState) -> AdversaryAction:
        raise NotImplementedError

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{type(self).__name__}({args})"


class ScriptedStrategy(Strategy):
    """Plays back a fixed list of actions."""

    name = "scripted"

    def __init__(self, actions: Sequence[AdversaryAction]):
        super().__init__()
        self.actions = list(actions)

    def act(self, state):
        if state.round >= len(self.actions):
            raise GameError("script exhausted", state.round + 1)
        return self.actions[state.round]


@dataclass
class Transcript:
    params: GameParams
    rule: RuleSpec
    actions: list
    # (lock, a_i, h_i) after each round
    trace: list
    final_state: GameState
    outcome: Optional[Outcome] = None
    strategy: str = ""

    @property
    def replot_rounds(self) -> list[int]:
        return [i for i, act in enumerate(self.actions, 1) if act.replot is not None]


def replay(params: GameParams, actions: Sequence[AdversaryAction]) -> GameState:
    state = initial_state(params)
    for act in actions:
        step(state, act)
    return state


def run_game(
    params: GameParams,
    strategy: Strategy,
    rule: RuleSpec,
    round_cap: int = DEFAULT_ROUND_CAP,
) -> Transcript:
    state = initial_state(params)
    strategy.start(state)
    actions, trace = [], []
    while not state.stopped:
        if state.round >= round_cap:
            raise GameError(f"round cap {round_cap} exceeded", state.round)
        act = strategy.act(state)
        step(state, act)
        actions.append(act)
        trace.append((state.lock, state.adv_space, state.honest_space))
    outcome = evaluate(state, rule)
    return Transcript(params, rule, actions, trace, state, outcome, strategy=strategy.name)


def replot_increments(target: float, space: float) -> int:
    """Replots needed to grow a fresh block of size ``space`` to ``target``."""
    return max(0, math.ceil(target / space - 1 - REL_TOL))
