"""Command line driver: ``forklab {run,sweep,bounds,profiles,replay}``.

Exit codes: 0 success, 1 run error, 2 usage error. ``FORKLAB_OUT`` overrides
the output directory.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import bounds
from .adversaries import FAKE_S, FAKE_S_TILDE, GenesisAttack, UniversalAttack, WeightAttack, universal_profiles
from .game import GameError, GameParams, evaluate, run_game
from .rules import RuleSpec, parse_rule
from .search import SearchBudgetExceeded, grid_search
from .serialize import profile_csv, replay_transcript, transcript_text
from .svg import line_plot

_STRATEGY_RE = re.compile(
    r"^(weight-attack|genesis-attack:k=(\d+)|universal:direction=(s|stilde)|grid-search:max_fork=(\d+))$"
)


@dataclass(frozen=True)
class StrategySpec:
    kind: str
    value: Optional[object] = None

    def __str__(self):
        if self.kind == "genesis-attack":
            return f"genesis-attack:k={self.value}"
        if self.kind == "universal":
            return f"universal:direction={self.value}"
        if self.kind == "grid-search":
            return f"grid-search:max_fork={self.value}"
        return self.kind


def parse_strategy(text: str) -> StrategySpec:
    m = _STRATEGY_RE.match(text.strip())
    if not m:
        raise ValueError(f"malformed strategy {text!r}")
    if m.group(2):
        return StrategySpec("genesis-attack", int(m.group(2)))
    if m.group(3):
        return StrategySpec("universal", m.group(3))
    if m.group(4):
        return StrategySpec("grid-search", int(m.group(4)))
    return StrategySpec("weight-attack")


def bound_for(spec: StrategySpec, params: GameParams):
    if spec.kind == "universal":
        return bounds.ell_universal(params.phi, params.epsilon, params.rho)[2]
    if spec.kind == "weight-attack":
        return bounds.ell_weight(params.phi, params.epsilon)
    if spec.kind == "genesis-attack":
        return bounds.ell_genesis(params.phi, spec.value, params.rho)
    return bounds.ell_tent_lower(params.phi, params.epsilon, params.rho)


def play(params: GameParams, spec: StrategySpec, rule: RuleSpec):
    """Run one game; returns a Transcript, or None when a grid search finds nothing."""
    if spec.kind == "grid-search":
        return grid_search(params, rule, spec.value)
    if spec.kind == "universal":
        strat = UniversalAttack(params, FAKE_S_TILDE if spec.value == "stilde" else FAKE_S)
    elif spec.kind == "weight-attack":
        strat = WeightAttack(params)
    else:
        strat = GenesisAttack(params, spec.value)
    return run_game(params, strat, rule)


@dataclass
class ExperimentConfig:
    phi: list = field(default_factory=lambda: [2.0])
    epsilon: list = field(default_factory=lambda: [0.01])
    rho: list = field(default_factory=lambda: [4])
    rules: list = field(default_factory=lambda: ["weight"])
    strategies: list = field(default_factory=lambda: ["weight-attack"])
    out: str = "forklab_out"

    def grid(self):
        return [
            GameParams(float(p), float(e), int(r))
            for p, e, r in itertools.product(self.phi, self.epsilon, self.rho)
        ]


def _as_list(v):
    return list(v) if isinstance(v, (list, tuple)) else [v]


def load_config(args) -> ExperimentConfig:
    cfg = {}
    if getattr(args, "config", None):
        cfg = json.loads(Path(args.config).read_text())
    for key in ("phi", "epsilon", "rho", "rules", "strategies", "out"):
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag
    conf = ExperimentConfig(
        **{k: (_as_list(v) if k != "out" else v) for k, v in cfg.items() if k in ExperimentConfig.__dataclass_fields__}
    )
    if os.environ.get("FORKLAB_OUT"):
        conf.out = os.environ["FORKLAB_OUT"]
    return conf


def _sweep_row(job):
    params, rule_text, strat_text = job
    spec = parse_strategy(strat_text)
    bound = bound_for(spec, params)
    head = [repr(params.phi), repr(params.epsilon), str(params.rho), rule_text, strat_text]
    try:
        t = play(params, spec, parse_rule(rule_text))
    except GameError as exc:
        return head + [f"error:{exc.round}", "", _fmt(bound), ""]
    except (ValueError, SearchBudgetExceeded):
        return head + ["error:setup", "", _fmt(bound), ""]
    if t is None:
        return head + ["none", "", _fmt(bound), ""]
    winner, ell = t.outcome
    match = spec.kind != "grid-search" and ell == bound
    return head + [str(winner), str(ell), _fmt(bound), "true" if match else "false"]


def _fmt(x) -> str:
    return str(x) if isinstance(x, int) else f"{x:.12g}"


SWEEP_HEADER = "phi,epsilon,rho,rule,strategy,winner,fork_length,bound_ell,match"


def sweep_rows(conf: ExperimentConfig, jobs: int = 1) -> list[list[str]]:
    grid = conf.grid()
    if not grid or not conf.rules or not conf.strategies:
        raise ValueError("empty sweep grid")
    for r in conf.rules:
        parse_rule(r)
    for s in conf.strategies:
        parse_strategy(s)
    work = [(p, r, s) for p in grid for s in conf.strategies for r in conf.rules]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(_sweep_row, work))
    return [_sweep_row(w) for w in work]


def sweep_csv(conf: ExperimentConfig, jobs: int = 1) -> str:
    rows = sweep_rows(conf, jobs)
    return "\n".join([SWEEP_HEADER] + [",".join(r) for r in rows]) + "\n"


def profiles_svg(params: GameParams) -> str:
    pair = universal_profiles(params)
    series = [
        {"values": pair.S, "color": "#1f4e9c", "label": "S (honest)"},
        {"values": pair.S_tilde, "color": "#c0392b", "label": "S~ (honest)"},
        {"values": [v / params.phi for v in pair.S], "color": "#1f4e9c", "dashed": True, "label": "S/phi"},
        {"values": [v / params.phi for v in pair.S_tilde], "color": "#c0392b", "dashed": True, "label": "S~/phi"},
    ]
    title = f"phi={params.phi:g}, epsilon={params.epsilon:g}, rho={params.rho}"
    return line_plot(series, title)


def _out_dir(path: str) -> Path:
    out = Path(os.environ.get("FORKLAB_OUT") or path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _rule_arg(text):
    try:
        parse_rule(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return text


def _strategy_arg(text):
    try:
        parse_strategy(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return text


def cmd_run(args) -> int:
    conf = load_config(args)
    grid = conf.grid()
    if len(grid) != 1 or len(conf.rules) != 1 or len(conf.strategies) != 1:
        print("run needs exactly one grid point, rule and strategy", file=sys.stderr)
        return 2
    params, rule_text, strat_text = grid[0], conf.rules[0], conf.strategies[0]
    spec = parse_strategy(strat_text)
    t = play(params, spec, parse_rule(rule_text))
    if t is None:
        print("winner=none fork_length=none")
        return 0
    out = _out_dir(conf.out)
    name = f"transcript_{strat_text}_{rule_text}".replace(":", "-").replace("=", "")
    (out / f"{name}.log").write_text(transcript_text(t))
    print(f"winner={t.outcome.winner} fork_length={t.outcome.fork_length}")
    return 0


def cmd_sweep(args) -> int:
    conf = load_config(args)
    text = sweep_csv(conf, args.jobs)
    out = _out_dir(conf.out)
    (out / "sweep.csv").write_text(text)
    print(out / "sweep.csv")
    return 0


def cmd_bounds(args) -> int:
    conf = load_config(args)
    print("phi,epsilon,rho,k,ell_weight,ell_genesis,ell_universal,ell_tent_lower")
    for p in conf.grid():
        rep = bounds.bound_report(p.phi, p.epsilon, p.rho, args.genesis_k)
        print(
            f"{p.phi:g},{p.epsilon:g},{p.rho},{rep.k_steps},{rep.ell_weight},"
            f"{rep.ell_genesis},{rep.ell_universal},{rep.ell_tent_lower_raw:.12g}"
        )
        if rep.tent_lower_clamped:
            print(
                f"note: phi={p.phi:g} epsilon={p.epsilon:g} rho={p.rho}: ell_tent_lower "
                f"{rep.ell_tent_lower_raw:.12g} is negative, clamped value {rep.ell_tent_lower:g}",
                file=sys.stderr,
            )
    return 0


def cmd_profiles(args) -> int:
    conf = load_config(args)
    out = _out_dir(conf.out)
    for p in conf.grid():
        pair = universal_profiles(p)
        tag = f"phi{p.phi:g}_eps{p.epsilon:g}_rho{p.rho}"
        (out / f"S_{tag}.csv").write_text(profile_csv(pair.S))
        (out / f"S_tilde_{tag}.csv").write_text(profile_csv(pair.S_tilde))
        (out / f"profiles_{tag}.svg").write_text(profiles_svg(p))
        print(out / f"profiles_{tag}.svg")
    return 0


def cmd_replay(args) -> int:
    state, rule = replay_transcript(Path(args.transcript).read_text())
    if not state.stopped:
        print(f"replayed {state.round} rounds; game not stopped")
        return 1
    winner, ell = evaluate(state, rule)
    print(f"winner={winner} fork_length={ell}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="forklab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def grid_flags(p, single=False):
        nargs = None if single else "+"
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--phi", type=float, nargs=nargs)
        p.add_argument("--epsilon", type=float, nargs=nargs)
        p.add_argument("--rho", type=int, nargs=nargs)
        p.add_argument("--out")

    p = sub.add_parser("run", help="play one game and write its transcript")
    grid_flags(p, single=True)
    p.add_argument("--rule", dest="rules", type=_rule_arg)
    p.add_argument("--strategy", dest="strategies", type=_strategy_arg)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="run every grid point, rule and strategy")
    grid_flags(p)
    p.add_argument("--rules", type=_rule_arg, nargs="+")
    p.add_argument("--strategies", type=_strategy_arg, nargs="+")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bounds", help="print the closed-form bounds as CSV")
    grid_flags(p)
    p.add_argument("--genesis-k", type=int, default=1)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("profiles", help="write the universal profile pair as CSV and SVG")
    grid_flags(p)
    p.set_defaults(func=cmd_profiles)

    p = sub.add_parser("replay", help="replay a transcript log")
    p.add_argument("transcript")
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, SearchBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
