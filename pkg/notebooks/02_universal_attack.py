# %% [markdown]
# # The universal attack
#
# Two honest profiles S and S_tilde: a tent of width 2k over a flat stretch,
# and its mirror image. Whichever one the honest chain follows, the adversary
# forges the other. A rule that cannot tell them apart loses one way or the
# other, unless it calls the comparison a tie and keeps the honest chain.

# %%
import os
from pathlib import Path

from forklab.adversaries import DIRECTIONS, universal_attack, universal_profiles
from forklab.cli import profiles_svg
from forklab.game import GameParams, evaluate, run_game
from forklab.model import tent_fit
from forklab.rules import RuleSpec

out = Path(os.environ.get("FORKLAB_OUT", "notebook_out"))
out.mkdir(exist_ok=True)

p = GameParams(2.0, 0.01, 4)
pair = universal_profiles(p)
print("peak", max(pair.S), "at index", pair.S.index(max(pair.S)))
(out / "profiles.svg").write_text(profiles_svg(p))

# %% [markdown]
# Run both directions once and score the final chains under each rule.

# %%
rules = [RuleSpec("weight"), RuleSpec("genesis", k=1), RuleSpec("genesis", k=5), RuleSpec("tent")]
runs = {d: run_game(p, universal_attack(p, d), RuleSpec("weight")) for d in DIRECTIONS}
for rule in rules:
    row = {d: tuple(evaluate(t.final_state, rule)) for d, t in runs.items()}
    print(f"{str(rule):12s}", row)

# %% [markdown]
# The tent rule keeps the honest chain in both directions. The fork
# suffixes are mirror images, so their largest tents have the same size and
# the tie goes to the honest chain.

# %%
for d, t in runs.items():
    s = t.final_state
    n = s.round + 1
    mu_h, _ = tent_fit(s.honest_chain.profile[1:], 1 + p.epsilon)
    mu_a, _ = tent_fit(s.adv_chain.profile[1:n], 1 + p.epsilon)
    print(f"{d:13s} honest tent {mu_h!r}  forged tent {mu_a!r}  relative gap {abs(mu_h - mu_a) / mu_h:.1e}")
