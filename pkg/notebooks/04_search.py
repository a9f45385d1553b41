# %% [markdown]
# # Looking for short wins by brute force
#
# The search enumerates a coarse grid of adversarial moves and reports the
# shortest winning fork it can find. Against the heaviest-chain rule it
# finds one quickly. Against the tent rule nothing turns up at any depth we
# can afford, which is consistent with the lower bound (but proves nothing
# beyond the grid).

# %%
import time

from forklab.bounds import ell_tent_lower, ell_universal
from forklab.game import GameParams
from forklab.rules import RuleSpec
from forklab.search import grid_search, search_nodes

p = GameParams(2.0, 0.5, 2)
print("tent lower bound", ell_tent_lower(p.phi, p.epsilon, p.rho), " universal ell", ell_universal(p.phi, p.epsilon, p.rho)[2])

# %%
t = grid_search(p, RuleSpec("weight"), 10)
print("weight rule:", t.outcome)
for rnd, act in enumerate(t.actions, 1):
    print(rnd, act.move, act.bootstrap, act.replot)

# %%
for depth in range(1, 5):
    t0 = time.perf_counter()
    found = grid_search(p, RuleSpec("tent", delta=1.5), depth)
    nodes = search_nodes(p, RuleSpec("tent", delta=1.5), depth)
    print(f"tent, max_fork={depth}: {'win' if found else 'none'}  nodes={nodes}  {time.perf_counter() - t0:.2f} s")
