"""Constructive attack strategies for the forking game."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .bounds import ell_genesis, ell_universal, ell_weight
from .game import (
    AdversaryAction,
    GameParams,
    GameState,
    Strategy,
    replot_increments,
)
from .model import REL_TOL, validate_profile

FAKE_S_TILDE = "fake_S_tilde"
FAKE_S = "fake_S"
DIRECTIONS = (FAKE_S_TILDE, FAKE_S)


@dataclass(frozen=True)
class ProfilePair:
    """Two honest space profiles, each forgeable from the other one."""

    S: tuple[float, ...]
    S_tilde: tuple[float, ...]
    k: int
    l: int

    @property
    def ell(self) -> int:
        return 2 * self.k + self.l

    @property
    def tent(self) -> tuple[float, ...]:
        """Spaces of the 2k tent blocks following the first block."""
        return self.S[1 : 2 * self.k + 1]


def universal_profiles(params: GameParams) -> ProfilePair:
    """The tent-then-flat profile ``S`` and its mirror image ``S_tilde``."""
    k, l, ell = ell_universal(params.phi, params.epsilon, params.rho)
    d = 1.0 + params.epsilon
    S = [d**i for i in range(k + 1)] + [d ** (2 * k - i) for i in range(k + 1, 2 * k + 1)]
    S += [1.0] * (ell + 1 - len(S))
    return ProfilePair(tuple(S), tuple(reversed(S)), k, l)


def replot_schedule(targets: Sequence[float], phi: float, rho: int) -> tuple[int, list[int]]:
    """Rounds needed to build blocks of the given sizes from space ``1/phi``.

    Each block starts as a fresh block of size ``1/phi`` and grows by at
    most ``1/phi`` per replot, each replot costing ``rho`` rounds. Returns
    the total and the per-block replot counts.
    """
    if not targets:
        raise ValueError("no targets")
    counts = []
    for alpha in targets:
        if alpha * phi < 1 - REL_TOL:
            raise ValueError(f"target {alpha!r} below 1/phi needs no replotting")
        counts.append(max(0, math.ceil(alpha * phi - 1 - REL_TOL)))
    return rho * sum(counts), counts


class _TentBuilder:
    """Appends blocks of given target sizes, replotting each to size.

    Blocks small enough to need no replot are queued and bootstrapped
    together with the next block that does.
    """

    def __init__(self, targets: Sequence[float]):
        self.todo = list(targets)
        self.current = None  # (target, space so far)
        self.queued: list[float] = []

    @property
    def done(self) -> bool:
        return not self.todo and self.current is None

    def pending(self) -> tuple[float, ...]:
        out, self.queued = tuple(self.queued), []
        return out

    def act(self, state: GameState, gamma: float) -> AdversaryAction:
        a = state.adv_space
        if self.current is not None:
            target, have = self.current
            add = target - have
            if add <= a * (1 + REL_TOL):
                self.current = None
            else:
                add = a
                self.current = (target, have + a)
            return AdversaryAction(gamma, replot=add)
        while self.todo:
            target = self.todo.pop(0)
            if replot_increments(target, a) == 0:
                self.queued.append(target)
                continue
            boot = self.pending() + (a,)
            add = target - a
            if add <= a * (1 + REL_TOL):
                self.current = None
            else:
                add = a
                self.current = (target, 2 * a)
            return AdversaryAction(gamma, bootstrap=boot, replot=add)
        return AdversaryAction(gamma, bootstrap=self.pending())


class UniversalAttack(Strategy):
    """Forge one of the two universal profiles while the honest chain plays the other.

    ``fake_S_tilde``: honest space follows ``S``; the adversary waits for the
    peak, bootstraps the flat part, then replots the tent.
    ``fake_S``: honest space follows ``S_tilde``; the adversary replots the
    tent first and bootstraps the flat part once the honest peak arrives.
    """

    name = "universal"

    def __init__(self, params: GameParams, direction: str = FAKE_S_TILDE):
        if direction not in DIRECTIONS:
            raise ValueError(f"unknown direction {direction!r}")
        super().__init__(direction=direction)
        self.direction = direction
        self.pair = universal_profiles(params)
        budget, _ = replot_schedule(self.pair.tent, params.phi, params.rho)
        if budget > self.pair.l:
            raise ValueError(f"replot budget {budget} exceeds flat length {self.pair.l}")
        self.up, self.down = 1.0 + params.epsilon, 1.0 / (1.0 + params.epsilon)

    @property
    def honest_target(self) -> tuple[float, ...]:
        return self.pair.S if self.direction == FAKE_S_TILDE else self.pair.S_tilde

    @property
    def forged_target(self) -> tuple[float, ...]:
        return self.pair.S_tilde if self.direction == FAKE_S_TILDE else self.pair.S

    def start(self, state):
        self.builder = _TentBuilder(self.pair.tent)

    def _gamma(self, i: int) -> float:
        k, l = self.pair.k, self.pair.l
        if self.direction == FAKE_S_TILDE:
            return self.up if i <= k else self.down if i <= 2 * k else 1.0
        return 1.0 if i <= l else self.up if i <= l + k else self.down

    def act(self, state):
        i = state.round + 1
        k, l, ell = self.pair.k, self.pair.l, self.pair.ell
        gamma = self._gamma(i)
        if state.lock > 0:
            return AdversaryAction(gamma, stop=(i == ell and state.lock == 1))
        if self.direction == FAKE_S_TILDE:
            if i == k:
                return AdversaryAction(gamma, bootstrap=(1.0,) * l)
            if i > 2 * k and not self.builder.done:
                act = self.builder.act(state, gamma)
                if i == ell and act.replot is None:
                    act = AdversaryAction(gamma, bootstrap=act.bootstrap, stop=True)
                return act
            if i == ell:
                return AdversaryAction(gamma, bootstrap=self.builder.pending(), stop=True)
        else:
            if not self.builder.done:
                return self.builder.act(state, gamma)
            if i == l + k:
                return AdversaryAction(gamma, bootstrap=self.builder.pending() + (1.0,) * l)
        return AdversaryAction(gamma, stop=(i == ell))


class WeightAttack(Strategy):
    """Bootstrap a long chain in round 1, then shrink the honest space every round.

    Plays until round ``ceil(phi/eps)``, or longer if the
    adversarial chain is not yet heavier by then.
    """

    name = "weight-attack"

    def __init__(self, params: GameParams):
        super().__init__()
        self.down = 1.0 / (1.0 + params.epsilon)
        self.block = params.a0 * self.down
        self.crossing = weight_crossing(params)
        self.rounds = max(ell_weight(params.phi, params.epsilon), self.crossing)

    def act(self, state):
        i = state.round + 1
        boot = (self.block,) * self.rounds if i == 1 else ()
        return AdversaryAction(self.down, bootstrap=boot, stop=(i == self.rounds))


def weight_crossing(params: GameParams, limit: int = 10**7) -> int:
    """First round at which the weight attack's chain is at least as heavy.

    Mirrors the game arithmetic round by round; ties count as a crossing.
    """
    down = 1.0 / (1.0 + params.epsilon)
    a = params.a0
    block = a * down
    honest, adv = [1.0], [1.0]
    for j in range(1, limit + 1):
        a *= down
        honest.append(a * params.phi)
        adv.append(block)
        w_h, w_a = math.fsum(honest), math.fsum(adv)
        if w_h <= w_a or w_h - w_a <= REL_TOL * w_h:
            return j
    raise ValueError("weight attack never crosses")


class GenesisAttack(Strategy):
    """Replot the first ``k`` fork blocks up to ``ceil(phi)/phi``, then bootstrap the rest."""

    name = "genesis-attack"

    def __init__(self, params: GameParams, k: int):
        if k < 1:
            raise ValueError("k must be >= 1")
        super().__init__(k=k)
        self.k = k
        self.mult = math.ceil(params.phi)
        self.rounds = ell_genesis(params.phi, k, params.rho)

    def start(self, state):
        self.built = 0
        self.replots_left = 0

    def act(self, state):
        i = state.round + 1
        a = state.adv_space
        if state.lock > 0:
            return AdversaryAction(1.0)
        if i == self.rounds:
            missing = self.rounds - state.adv_length
            return AdversaryAction(1.0, bootstrap=(a,) * missing, stop=True)
        if self.replots_left:
            self.replots_left -= 1
            return AdversaryAction(1.0, replot=a)
        if self.built < self.k:
            self.built += 1
            self.replots_left = self.mult - 2
            return AdversaryAction(1.0, bootstrap=(a,), replot=a)
        return AdversaryAction(1.0)


def universal_attack(params: GameParams, direction: str = FAKE_S_TILDE) -> UniversalAttack:
    return UniversalAttack(params, direction)


def weight_attack(params: GameParams) -> WeightAttack:
    return WeightAttack(params)


def genesis_attack(params: GameParams, k: int) -> GenesisAttack:
    return GenesisAttack(params, k)


def check_profiles(pair: ProfilePair, epsilon: float) -> bool:
    return validate_profile(pair.S, epsilon) is None and validate_profile(pair.S_tilde, epsilon) is None
