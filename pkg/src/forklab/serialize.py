"""CSV profiles and line-oriented transcript logs."""

from __future__ import annotations

import csv
import io
import itertools
from pathlib import Path
from typing import Iterable, Union

from .game import AdversaryAction, GameParams, GameState, Transcript, initial_state, step
from .rules import RuleSpec, parse_rule

PathLike = Union[str, Path]

TRANSCRIPT_HEADER = "round,gamma,move,arg,lock,a_i,h_i"


def profile_csv(values: Iterable[float]) -> str:
    out = ["index,space"]
    out += [f"{i},{v:.12g}" for i, v in enumerate(values)]
    return "\n".join(out) + "\n"


def write_profile(path: PathLike, values: Iterable[float]) -> None:
    Path(path).write_text(profile_csv(values))


def read_profile(path: PathLike) -> list[float]:
    rows = list(csv.DictReader(io.StringIO(Path(path).read_text())))
    if [int(r["index"]) for r in rows] != list(range(len(rows))):
        raise ValueError("profile indices must run 0..n-1")
    return [float(r["space"]) for r in rows]


def _encode_arg(act: AdversaryAction) -> str:
    parts = []
    if act.bootstrap:
        runs = [f"{s!r}*{len(list(g))}" for s, g in itertools.groupby(act.bootstrap)]
        parts.append("b=" + " ".join(runs))
    if act.replot is not None:
        parts.append(f"r={act.replot!r}")
    return "|".join(parts)


def _decode_action(gamma: str, move: str, arg: str) -> AdversaryAction:
    boot, add = [], None
    for part in filter(None, arg.split("|")):
        key, _, val = part.partition("=")
        if key == "b":
            for run in val.split():
                size, _, count = run.partition("*")
                boot += [float(size)] * int(count)
        elif key == "r":
            add = float(val)
        else:
            raise ValueError(f"bad transcript arg {arg!r}")
    act = AdversaryAction(float(gamma), tuple(boot), add, stop="stop" in move.split("+"))
    if act.move != move:
        raise ValueError(f"move {move!r} does not match arg {arg!r}")
    return act


def transcript_text(t: Transcript) -> str:
    p = t.params
    lines = [
        "# forklab transcript",
        f"# phi={p.phi!r}",
        f"# epsilon={p.epsilon!r}",
        f"# rho={p.rho}",
        f"# a0={p.a0!r}",
        f"# rule={t.rule}",
        f"# strategy={t.strategy}",
        TRANSCRIPT_HEADER,
    ]
    for rnd, (act, (lock, a, h)) in enumerate(zip(t.actions, t.trace), 1):
        lines.append(f"{rnd},{act.gamma!r},{act.move},{_encode_arg(act)},{lock},{a!r},{h!r}")
    return "\n".join(lines) + "\n"


def write_transcript(path: PathLike, t: Transcript) -> None:
    Path(path).write_text(transcript_text(t))


def parse_transcript(text: str) -> tuple[GameParams, RuleSpec, str, list, list]:
    meta, rows = {}, []
    header_seen = False
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, sep, val = line[1:].strip().partition("=")
            if sep:
                meta[key] = val
            continue
        if not header_seen:
            if line.strip() != TRANSCRIPT_HEADER:
                raise ValueError(f"expected header {TRANSCRIPT_HEADER!r}")
            header_seen = True
            continue
        rows.append(line.split(","))
    try:
        params = GameParams(
            float(meta["phi"]), float(meta["epsilon"]), int(meta["rho"]), float(meta["a0"])
        )
    except KeyError as exc:
        raise ValueError(f"transcript lacks {exc.args[0]!r}") from None
    rule = parse_rule(meta.get("rule", "weight"))
    actions, trace = [], []
    for i, row in enumerate(rows, 1):
        if len(row) != 7 or int(row[0]) != i:
            raise ValueError(f"bad transcript row {i}: {','.join(row)!r}")
        actions.append(_decode_action(row[1], row[2], row[3]))
        trace.append((int(row[4]), float(row[5]), float(row[6])))
    return params, rule, meta.get("strategy", ""), actions, trace


def replay_transcript(text: str) -> tuple[GameState, RuleSpec]:
    """Replay a transcript log and check every logged state value exactly."""
    params, rule, _, actions, trace = parse_transcript(text)
    state = initial_state(params)
    for rnd, (act, logged) in enumerate(zip(actions, trace), 1):
        step(state, act)
        got = (state.lock, state.adv_space, state.honest_space)
        if got != logged:
            raise ValueError(f"round {rnd}: replayed state {got} differs from log {logged}")
    return state, rule
