"""Chains, space profiles, fork points and tent fitting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

# Relative tolerance for every "<=" style constraint on space values.
REL_TOL = 1e-9

SpaceProfile = Sequence[float]


@dataclass(frozen=True)
class Block:
    space: float
    payload_id: int = 0

    def __post_init__(self):
        if not self.space > 0:
            raise ValueError(f"non-positive space: {self.space!r}")


GENESIS = Block(1.0, 0)


@dataclass(frozen=True)
class Chain:
    """Genesis-rooted sequence of blocks; block ``i`` sits at position ``i``."""

    blocks: tuple[Block, ...]

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("empty chain")
        if self.blocks[0].space != 1.0:
            raise ValueError("genesis block must have space 1")

    @classmethod
    def from_spaces(cls, spaces: Iterable[float], id_sign: int = 1) -> "Chain":
        """Build a chain whose first entry is the genesis.

        Non-genesis blocks get ids ``id_sign * i`` so that chains built with
        different signs diverge right after the genesis.
        """
        spaces = list(spaces)
        if not spaces:
            raise ValueError("empty chain")
        blocks = [Block(float(spaces[0]), 0)]
        blocks += [Block(float(s), id_sign * i) for i, s in enumerate(spaces[1:], 1)]
        return cls(tuple(blocks))

    def __len__(self) -> int:
        return len(self.blocks)

    def __getitem__(self, i):
        return self.blocks[i]

    @property
    def profile(self) -> tuple[float, ...]:
        return tuple(b.space for b in self.blocks)

    def prefix(self, n: int) -> "Chain":
        """The first ``n`` blocks."""
        return Chain(self.blocks[:n])


@dataclass(frozen=True)
class Tent:
    """Geometric tent with value ``size / decay**|i - apex|`` at index i."""

    decay: float
    apex: int
    size: float

    def __post_init__(self):
        if not self.decay > 1:
            raise ValueError("tent decay must exceed 1")
        if not self.size > 0:
            raise ValueError("tent size must be positive")

    def value(self, i: int) -> float:
        return self.size / self.decay ** abs(i - self.apex)

    def __gt__(self, other: "Tent") -> bool:
        return self.size > other.size

    def __lt__(self, other: "Tent") -> bool:
        return self.size < other.size


@dataclass(frozen=True)
class ForkView:
    fork_index: int
    honest_suffix: tuple[float, ...]
    adversarial_suffix: tuple[float, ...]


def validate_profile(profile: SpaceProfile, epsilon: float) -> Optional[int]:
    """Check the per-step rate-of-change constraint.

    Returns ``None`` when every consecutive pair moves by at most a factor
    ``1 + epsilon`` (up to relative tolerance), else the smallest index ``i``
    such that the step ``i -> i + 1`` is too steep.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    values = list(profile)
    if not values:
        raise ValueError("empty profile")
    if any(not v > 0 for v in values):
        raise ValueError("non-positive space")
    factor = 1.0 + epsilon
    for i in range(len(values) - 1):
        cur, nxt = values[i], values[i + 1]
        tol = REL_TOL * cur
        if nxt < cur / factor - tol or nxt > cur * factor + tol:
            return i
    return None


def fork_point(a: Chain, b: Chain) -> Optional[int]:
    """Index of the first differing block, or ``None`` for identical chains."""
    if len(a) != len(b):
        raise ValueError("length mismatch")
    if a[0] != b[0]:
        raise ValueError("no common genesis")
    for i, (x, y) in enumerate(zip(a.blocks, b.blocks)):
        if x != y:
            return i
    return None


def fork_view(honest: Chain, adversarial: Chain) -> Optional[ForkView]:
    lam = fork_point(honest, adversarial)
    if lam is None:
        return None
    return ForkView(lam, honest.profile[lam:], adversarial.profile[lam:])


def chain_weight(c: Chain, start: int, stop: int) -> float:
    """Total space of blocks ``start..stop`` inclusive."""
    if not 0 <= start <= stop < len(c):
        raise IndexError(f"bad range [{start}, {stop}] for chain of length {len(c)}")
    return math.fsum(b.space for b in c.blocks[start : stop + 1])


def tent_fit(profile: SpaceProfile, decay: float) -> tuple[float, int]:
    """Largest tent with the given decay that fits under ``profile``.

    For every apex ``x`` the largest admissible size is
    ``min_i profile[i] * decay**|i - x|``; the result is the best size over
    all apexes together with the smallest apex attaining it. Runs in O(n)
    via running minima in log space.
    """
    v = np.asarray(profile, dtype=float)
    if v.size == 0:
        raise ValueError("empty profile")
    if not decay > 1:
        raise ValueError("decay must exceed 1")
    if np.any(v <= 0):
        raise ValueError("non-positive space")
    c = math.log(decay)
    idx = np.arange(v.size, dtype=float)
    logv = np.log(v)
    # left[x] = min_{i<=x} logv[i] + (x - i) c ; right[x] = min_{i>=x} logv[i] + (i - x) c
    left = np.minimum.accumulate(logv - idx * c) + idx * c
    right = np.minimum.accumulate((logv + idx * c)[::-1])[::-1] - idx * c
    best = np.exp(np.minimum(left, right))
    top = best.max()
    apex = int(np.argmax(best >= top * (1 - 1e-12)))
    return float(top), apex
