# %% [markdown]
# # Attacks on the simple rules
#
# The heaviest-chain rule falls to a long cheap chain bootstrapped early
# while the honest space shrinks. The genesis-window rule falls to an
# adversary that replots just the first k blocks of its fork.

# %%
import math

import numpy as np

from forklab.adversaries import genesis_attack, weight_attack, weight_crossing
from forklab.bounds import ell_genesis, ell_weight
from forklab.game import GameParams, run_game
from forklab.rules import RuleSpec

# %%
p = GameParams(2.0, 0.01, 4)
t = run_game(p, weight_attack(p), RuleSpec("weight"))
honest = np.cumsum(t.final_state.honest_chain.profile)
adv = np.cumsum(t.final_state.adv_chain.profile[: len(honest)])
print("first crossing", weight_crossing(p), " sufficient length", ell_weight(p.phi, p.epsilon), " played", t.outcome)
for j in (1, 50, 100, 150, 162, 200):
    print(f"round {j:3d}: honest {honest[j]:8.3f}  adversary {adv[j]:8.3f}")

# %%
for phi, eps in [(1.1, 0.5), (1.5, 0.1), (3.0, 0.01)]:
    q = GameParams(phi, eps, 2)
    lo = ell_weight(phi, eps)
    hi = lo + math.ceil(phi * (1 + eps)) + 2
    o = run_game(q, weight_attack(q), RuleSpec("weight")).outcome
    print(f"phi={phi} eps={eps}: crossing {weight_crossing(q)}, fork {o.fork_length}, bracket [{lo}, {hi}]")

# %%
for k in (1, 2, 5):
    o = run_game(p, genesis_attack(p, k), RuleSpec("genesis", k=k)).outcome
    print(f"genesis k={k}: {o}, predicted {ell_genesis(p.phi, k, p.rho)}")
