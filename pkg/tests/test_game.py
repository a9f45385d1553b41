import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forklab.game import (
    AdversaryAction,
    GameError,
    GameParams,
    ScriptedStrategy,
    evaluate,
    initial_state,
    replay,
    replot_increments,
    run_game,
    step,
)
from forklab.rules import RuleSpec

P = GameParams(2.0, 0.01, 4)


class TestParams:
    def test_default_a0(self):
        assert GameParams(2.0, 0.01, 4).a0 == 0.5

    @pytest.mark.parametrize("args", [(1.0, 0.1, 2), (2.0, 0.0, 2), (2.0, 0.1, 1), (2.0, 0.1, 2.5), (2.0, 0.1, 2, -1.0)])
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            GameParams(*args)


def test_initial_state():
    s = initial_state(GameParams(2.0, 0.01, 4, 0.5))
    assert s.honest_space == 1.0 and len(s.honest) == 1 and len(s.adversarial) == 1
    s = initial_state(GameParams(1.5, 0.1, 2, 2 / 3))
    assert s.honest_space == pytest.approx(1.0)


class TestStep:
    def test_gamma_up(self):
        s = step(initial_state(P), AdversaryAction(1.01))
        assert s.honest_space == pytest.approx(1.01)
        assert s.honest[-1].space == pytest.approx(1.01) and s.honest[-1].payload_id == 1

    def test_gamma_out_of_range(self):
        with pytest.raises(GameError) as err:
            step(initial_state(P), AdversaryAction(1.02))
        assert err.value.round == 1

    def test_replot_locks(self):
        s = step(initial_state(P), AdversaryAction(1.0, bootstrap=(0.5,)))
        step(s, AdversaryAction(1.0, replot=0.5))
        assert s.adversarial[-1].space == 1.0 and s.lock == 3
        for expected in (2, 1):
            before = s.snapshot()
            with pytest.raises(GameError, match="replotting"):
                step(s, AdversaryAction(1.0, bootstrap=(0.5,)))
            assert s.snapshot() == before
            step(s, AdversaryAction(1.0))
            assert s.lock == expected
        step(s, AdversaryAction(1.0))
        assert s.lock == 0
        step(s, AdversaryAction(1.0, bootstrap=(0.5,)))

    def test_replot_keeps_payload_id(self):
        s = step(initial_state(P), AdversaryAction(1.0, bootstrap=(0.5,), replot=0.25))
        assert s.adversarial[-1].payload_id == -1 and s.adversarial[-1].space == 0.75

    def test_bootstrap_too_large(self):
        with pytest.raises(GameError, match="exceeds"):
            step(initial_state(P), AdversaryAction(1.0, bootstrap=(0.5 * 1.001,)))

    def test_cannot_replot_genesis(self):
        with pytest.raises(GameError, match="genesis"):
            step(initial_state(P), AdversaryAction(1.0, replot=0.1))

    def test_stop_needs_long_chain(self):
        with pytest.raises(GameError, match="length 0 < 1"):
            step(initial_state(P), AdversaryAction(1.0, stop=True))

    def test_stop_in_last_lock_round(self):
        params = GameParams(2.0, 0.01, 2)
        s = step(initial_state(params), AdversaryAction(1.0, bootstrap=(0.5, 0.5), replot=0.5))
        step(s, AdversaryAction(1.0, stop=True))
        assert s.stopped

    def test_no_moves_after_stop(self):
        s = step(initial_state(P), AdversaryAction(1.0, bootstrap=(0.5,), stop=True))
        with pytest.raises(GameError, match="stopped"):
            step(s, AdversaryAction(1.0))


def test_move_labels():
    assert AdversaryAction().move == "none"
    assert AdversaryAction(bootstrap=(1,), replot=1, stop=True).move == "bootstrap+replot+stop"
    with pytest.raises(ValueError):
        AdversaryAction(replot=0)


class TestEvaluate:
    def test_not_stopped(self):
        with pytest.raises(GameError):
            evaluate(initial_state(P), RuleSpec("weight"))

    def test_identical_chains(self):
        s = step(initial_state(P), AdversaryAction(1.0))
        s.adversarial = list(s.honest)
        s.stopped = True
        # the weight rule hands ties to the adversary; the other two keep the honest chain
        assert tuple(evaluate(s, RuleSpec("weight"))) == (1, 0)
        assert tuple(evaluate(s, RuleSpec("genesis", k=2))) == (0, 0)
        assert tuple(evaluate(s, RuleSpec("tent"))) == (0, 0)

    def test_fork_length_counts_from_fork(self):
        s = step(initial_state(P), AdversaryAction(1.0, bootstrap=(0.5,) * 3))
        step(s, AdversaryAction(1.0))
        step(s, AdversaryAction(1.0, stop=True))
        assert evaluate(s, RuleSpec("weight")) == (0, 3)


def test_null_strategy_fails_at_stop():
    with pytest.raises(GameError, match="cannot stop"):
        run_game(P, ScriptedStrategy([AdversaryAction(1.0, stop=True)]), RuleSpec("weight"))


def test_script_exhausted():
    with pytest.raises(GameError, match="exhausted"):
        run_game(P, ScriptedStrategy([AdversaryAction(1.0)]), RuleSpec("weight"))


def test_replot_increments():
    assert replot_increments(1.0, 0.5) == 1
    assert replot_increments(0.5, 0.5) == 0
    assert replot_increments(0.5 * (1 + 1e-12), 0.5) == 0
    assert replot_increments(1.6, 0.5) == 3


actions = st.builds(
    AdversaryAction,
    gamma=st.sampled_from([1 / 1.01, 1.0, 1.01]),
    bootstrap=st.lists(st.sampled_from([0.1, 0.3]), max_size=2).map(tuple),
    replot=st.one_of(st.none(), st.just(0.2)),
)


@settings(max_examples=200, deadline=None)
@given(st.lists(actions, max_size=25))
def test_engine_invariants(script):
    """Random play never breaks the lock, space or chain-length rules."""
    s = initial_state(P)
    replot_round = None
    for rnd, act in enumerate(script, 1):
        before = s.snapshot()
        try:
            step(s, act)
        except GameError:
            assert s.snapshot() == before
            continue
        assert len(s.honest) == s.round + 1
        if act.replot is not None:
            assert replot_round is None or s.round - replot_round >= P.rho
            replot_round = s.round
        if not act.is_idle and replot_round is not None and act.replot is None:
            assert s.round - replot_round >= P.rho
    # the accepted moves replay to the same state
    accepted = []
    s2 = initial_state(P)
    for act in script:
        try:
            step(s2, act)
            accepted.append(act)
        except GameError:
            pass
    assert replay(P, accepted).snapshot() == s2.snapshot()
