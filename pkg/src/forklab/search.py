"""Exhaustive search over a coarse adversarial action grid.

Used as a falsifier: if some discretized strategy wins with a short fork,
the search finds the shortest such fork. Finding nothing proves nothing
beyond the grid.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .game import AdversaryAction, GameParams, ScriptedStrategy, Transcript, run_game
from .model import Chain
from .rules import RuleSpec, select

DEFAULT_NODE_BUDGET = 10**8


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, nodes: int, budget: int):
        self.nodes = nodes
        super().__init__(f"search visited {nodes} nodes, budget is {budget}")


@dataclass(frozen=True)
class GridSpec:
    """Action grid: gamma in {down, 1, up}; sizes are fractions of the current space.

    Per free round the adversary may do nothing, bootstrap one block, fill
    its chain up to the candidate stopping round, replot its last block, or
    append one block and replot it at once.
    """

    size_fractions: tuple[float, ...] = (1.0, 0.5)
    gammas: tuple[str, ...] = ("down", "flat", "up")
    fill: bool = True
    fresh_replot: bool = True


def _moves(grid: GridSpec, a: float, length: int, depth: int):
    yield (), None
    for f in grid.size_fractions:
        s = a * f
        if length < depth:
            yield (s,), None
            if grid.fill and depth - length > 1:
                yield (s,) * (depth - length), None
        if length >= 1:
            yield (), s
        if grid.fresh_replot and length < depth:
            yield (a,), s


class _Search:
    def __init__(self, params: GameParams, rule: RuleSpec, grid: GridSpec, budget: int):
        self.p = params
        self.rule = rule.resolve(params.epsilon)
        self.grid = grid
        self.budget = budget
        self.nodes = 0
        up = 1.0 + params.epsilon
        table = {"down": 1.0 / up, "flat": 1.0, "up": up}
        self.gammas = [table[g] for g in grid.gammas]

    def wins(self, honest, adv, depth) -> bool:
        h = Chain.from_spaces(honest, id_sign=1)
        a = Chain.from_spaces(adv[: depth + 1], id_sign=-1)
        return select(self.rule, h, a) == 1

    def run(self, depth: int) -> Optional[list]:
        return self._dfs(0, self.p.a0, 0, (1.0,), (1.0,), [], depth)

    def _dfs(self, rnd, a_prev, lock, honest, adv, path, depth):
        rnd += 1
        for gamma in self.gammas:
            a = a_prev * gamma
            h = honest + (a * self.p.phi,)
            if lock > 0:
                options = [((), None)]
                base_lock = lock - 1
            else:
                options = list(_moves(self.grid, a, len(adv) - 1, depth))
                base_lock = 0
            for boot, add in options:
                self.nodes += 1
                if self.nodes > self.budget:
                    raise SearchBudgetExceeded(self.nodes, self.budget)
                new_adv = adv + boot
                new_lock = base_lock
                if add is not None:
                    new_adv = new_adv[:-1] + (new_adv[-1] + add,)
                    new_lock = self.p.rho - 1
                if new_lock > depth - rnd:
                    continue
                act = AdversaryAction(gamma, bootstrap=boot, replot=add)
                if rnd == depth:
                    if new_lock == 0 and len(new_adv) - 1 >= depth and self.wins(h, new_adv, depth):
                        return path + [AdversaryAction(gamma, boot, add, stop=True)]
                    continue
                found = self._dfs(rnd, a, new_lock, h, new_adv, path + [act], depth)
                if found is not None:
                    return found
        return None


def grid_search(
    params: GameParams,
    rule: RuleSpec,
    max_fork: int,
    grid: GridSpec = GridSpec(),
    budget: int = DEFAULT_NODE_BUDGET,
) -> Optional[Transcript]:
    """Shortest winning transcript on the action grid with fork length <= ``max_fork``.

    Stopping rounds are tried in increasing order, so the first hit is the
    shortest. Returns ``None`` when the grid holds no win. Raises
    :class:`SearchBudgetExceeded` once more than ``budget`` nodes were expanded.
    """
    search = _Search(params, rule, grid, budget)
    for depth in range(1, max_fork + 1):
        actions = search.run(depth)
        if actions is not None:
            transcript = run_game(params, ScriptedStrategy(actions), rule)
            transcript.strategy = "grid-search"
            return transcript
    return None


def search_nodes(params: GameParams, rule: RuleSpec, max_fork: int, grid: GridSpec = GridSpec()) -> int:
    """Nodes expanded by a search that finds nothing (or up to the first win)."""
    search = _Search(params, rule, grid, DEFAULT_NODE_BUDGET)
    for depth in range(1, max_fork + 1):
        if search.run(depth) is not None:
            break
    return search.nodes
