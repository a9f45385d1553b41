"""Acceptance checks, one test (or a few named parts) per criterion.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS/FAIL line per criterion. Tolerances are pinned at the top of the file.
"""

import functools
import itertools
import math
import time

import numpy as np
import pytest

from forklab import cli
from forklab.adversaries import DIRECTIONS, genesis_attack, replot_schedule, universal_attack, universal_profiles, weight_attack
from forklab.bounds import ell_genesis, ell_tent_lower, ell_universal, ell_weight, k_steps
from forklab.game import GameParams, evaluate, run_game
from forklab.model import Chain, chain_weight, fork_point, tent_fit
from forklab.rules import RuleSpec
from forklab.search import grid_search
from forklab.serialize import replay_transcript, transcript_text
from oracles import geometric_weight, tent_fit_brute

PROFILE_RTOL = 1e-9
TENT_TOL = 1e-9
GEOMETRIC_RTOL = 1e-12
BOUNDS_BUDGET_S = 1e-3
GRID_BUDGET_S = 10.0
SEARCH_BUDGET_S = 300.0
N_RANDOM_PROFILES = 10_000

GRID = [GameParams(p, e, r) for p, e, r in itertools.product((1.1, 1.5, 2.0, 3.0), (0.5, 0.1, 0.01), (2, 4, 8))]
RULES = [RuleSpec("weight"), RuleSpec("genesis", k=1), RuleSpec("genesis", k=2), RuleSpec("genesis", k=5), RuleSpec("tent")]


def label(p):
    return f"phi={p.phi:g} eps={p.epsilon:g} rho={p.rho}"


@functools.lru_cache(maxsize=None)
def universal_runs():
    return {(p, d): run_game(p, universal_attack(p, d), RuleSpec("weight")) for p in GRID for d in DIRECTIONS}


@functools.lru_cache(maxsize=None)
def other_runs():
    runs = []
    for p in GRID:
        runs.append(run_game(p, weight_attack(p), RuleSpec("weight")))
        for k in (1, 2, 5):
            runs.append(run_game(p, genesis_attack(p, k), RuleSpec("genesis", k=k)))
    return runs


@pytest.mark.criterion(1, "bound constants at phi=2, eps=0.01, rho=4")
def test_c1_bound_constants():
    timings = []
    for _ in range(20):
        t0 = time.perf_counter()
        k = k_steps(2.0, 0.01)
        kk, l, ell = ell_universal(2.0, 0.01, 4)
        timings.append(time.perf_counter() - t0)
    assert (k, kk, 2 * k, l, ell) == (70, 70, 140, 1641, 1781)
    median = sorted(timings)[len(timings) // 2]
    print(f"bound constants: median {median * 1e3:.3f} ms")
    assert median < BOUNDS_BUDGET_S


@pytest.mark.criterion(2, "universal attack fidelity on the 36-point grid")
def test_c2_universal_fidelity():
    t0 = time.perf_counter()
    problems = []
    for p in GRID:
        for d in DIRECTIONS:
            strat = universal_attack(p, d)
            t = run_game(p, strat, RuleSpec("weight"))
            state = t.final_state
            n = state.round + 1
            honest = state.honest_chain
            adv = state.adv_chain.prefix(n)
            forged = adv.profile
            if len(forged) != len(strat.forged_target):
                problems.append((label(p), d, "length"))
            elif not all(math.isclose(x, y, rel_tol=PROFILE_RTOL) for x, y in zip(forged, strat.forged_target)):
                problems.append((label(p), d, "profile"))
            if fork_point(honest, adv) != 1:
                problems.append((label(p), d, "fork point"))
            if t.outcome.fork_length != ell_universal(p.phi, p.epsilon, p.rho)[2]:
                problems.append((label(p), d, f"fork length {t.outcome.fork_length}"))
            replayed, _ = replay_transcript(transcript_text(t))
            if replayed.snapshot() != state.snapshot():
                problems.append((label(p), d, "replay"))
    elapsed = time.perf_counter() - t0
    print(f"universal grid: {len(GRID) * 2} games in {elapsed:.2f} s")
    assert not problems, problems
    assert elapsed < GRID_BUDGET_S


@pytest.mark.criterion(3, "universal pair defeats every implemented rule")
@pytest.mark.parametrize("rule", RULES, ids=str)
def test_c3_universal_defeats_rule(rule):
    survivors = []
    for p in GRID:
        winners = [evaluate(universal_runs()[(p, d)].final_state, rule).winner for d in DIRECTIONS]
        if not any(winners):
            survivors.append(label(p))
    print(f"{rule}: honest chain survives both directions at {len(survivors)}/{len(GRID)} grid points")
    assert not survivors, f"{rule} survives both directions at {survivors}"


@pytest.mark.criterion(4, "weight attack fork length inside the bracket")
def test_c4_weight_attack():
    problems = []
    for p in GRID:
        t = run_game(p, weight_attack(p), RuleSpec("weight"))
        lo = ell_weight(p.phi, p.epsilon)
        hi = lo + math.ceil(p.phi * (1 + p.epsilon)) + 2
        if t.outcome.winner != 1 or not lo <= t.outcome.fork_length <= hi:
            problems.append((label(p), tuple(t.outcome), (lo, hi)))
        if (p.phi, p.epsilon) == (2.0, 0.01):
            assert (lo, hi) == (200, 205)
    assert not problems, problems


@pytest.mark.criterion(5, "genesis attack wins in exactly ceil(phi) k rho rounds")
def test_c5_genesis_attack():
    problems = []
    for p, k in itertools.product(GRID, (1, 2, 5)):
        t = run_game(p, genesis_attack(p, k), RuleSpec("genesis", k=k))
        want = ell_genesis(p.phi, k, p.rho)
        if tuple(t.outcome) != (1, want) or t.final_state.round != want:
            problems.append((label(p), k, tuple(t.outcome), want))
    assert not problems, problems


P6 = GameParams(2.0, 0.5, 2)
TENT6 = RuleSpec("tent", delta=1.5)


@pytest.mark.criterion(6, "tent rule: no short win on the search grid, universal attack wins")
def test_c6_search_finds_nothing_below_lower_bound():
    max_fork = math.ceil(ell_tent_lower(P6.phi, P6.epsilon, P6.rho)) - 1
    t0 = time.perf_counter()
    found = grid_search(P6, TENT6, max_fork)
    elapsed = time.perf_counter() - t0
    print(f"grid search to max_fork={max_fork}: {'win found' if found else 'none found'} in {elapsed:.3f} s")
    assert found is None
    assert elapsed < SEARCH_BUDGET_S


@pytest.mark.criterion(6, "tent rule: no short win on the search grid, universal attack wins")
def test_c6_universal_attack_wins_tent():
    ell = ell_universal(P6.phi, P6.epsilon, P6.rho)[2]
    outcomes = {}
    for d in DIRECTIONS:
        t = run_game(P6, universal_attack(P6, d), TENT6)
        outcomes[d] = tuple(t.outcome)
        assert t.outcome.fork_length == ell
    print(f"universal attack vs tent(delta=1.5): {outcomes}")
    assert any(w == 1 for w, _ in outcomes.values()), outcomes


@pytest.mark.criterion(7, "replot accounting within l and lock respected")
def test_c7_replot_accounting():
    for p in GRID:
        pair = universal_profiles(p)
        total, _ = replot_schedule(pair.tent, p.phi, p.rho)
        assert total <= pair.l, (label(p), total, pair.l)
    transcripts = list(universal_runs().values()) + other_runs()
    for t in transcripts:
        last_replot = None
        for rnd, act in enumerate(t.actions, 1):
            if not act.is_idle and last_replot is not None:
                assert rnd - last_replot >= t.params.rho, (label(t.params), t.strategy, rnd)
            if act.replot is not None:
                last_replot = rnd
        # the logged lock counts down from rho - 1 after every replot
        for rnd in t.replot_rounds:
            locks = [t.trace[i][0] for i in range(rnd - 1, min(rnd - 1 + t.params.rho, len(t.trace)))]
            assert locks == list(range(t.params.rho - 1, t.params.rho - 1 - len(locks), -1))


@pytest.mark.criterion(8, "tent_fit and chain_weight match their oracles")
def test_c8_oracles():
    rng = np.random.default_rng(20240601)
    worst = 0.0
    for _ in range(N_RANDOM_PROFILES):
        n = int(rng.integers(1, 13))
        prof = np.exp(rng.uniform(-3, 3, n)).tolist()
        decay = float(rng.uniform(1.001, 3.0))
        mu, x = tent_fit(prof, decay)
        mu_b, x_b = tent_fit_brute(prof, decay)
        worst = max(worst, abs(mu - mu_b) / mu_b)
        assert x == x_b
    print(f"tent_fit vs brute force: worst relative gap {worst:.2e}")
    assert worst <= TENT_TOL
    for eps, n in [(0.01, 201), (0.5, 4), (0.1, 1000), (0.001, 5000)]:
        c = Chain.from_spaces([(1 + eps) ** -t for t in range(n)])
        assert math.isclose(chain_weight(c, 0, n - 1), geometric_weight(eps, n), rel_tol=GEOMETRIC_RTOL)


@pytest.mark.criterion(9, "replay and sweep are deterministic")
def test_c9_determinism(tmp_path, monkeypatch, capsys):
    monkeypatch.delenv("FORKLAB_OUT", raising=False)
    for t in list(universal_runs().values()) + other_runs():
        state, _ = replay_transcript(transcript_text(t))
        assert state.snapshot() == t.final_state.snapshot()
    argv = ["sweep", "--phi", "1.5", "2", "--epsilon", "0.5", "0.1", "--rho", "2", "4",
            "--rules", "weight", "genesis:k=2", "tent",
            "--strategies", "universal:direction=s", "universal:direction=stilde", "weight-attack"]
    assert cli.main(argv + ["--out", str(tmp_path / "a")]) == 0
    assert cli.main(argv + ["--out", str(tmp_path / "b"), "--jobs", "2"]) == 0
    a = (tmp_path / "a" / "sweep.csv").read_bytes()
    b = (tmp_path / "b" / "sweep.csv").read_bytes()
    assert a == b and a.count(b"\n") == 1 + 8 * 3 * 3
