"""Chain selection rules: heaviest chain, genesis window, largest tent.

Every rule takes the honest chain first and returns 0 when the honest chain
is kept, 1 when the adversarial chain wins.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional

from .model import REL_TOL, Chain, fork_point, tent_fit

KINDS = ("weight", "genesis", "tent")


@dataclass(frozen=True)
class RuleSpec:
    kind: str
    k: Optional[int] = None
    delta: Optional[float] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown rule kind {self.kind!r}")
        if self.kind == "genesis" and (self.k is None or self.k < 1):
            raise ValueError("genesis rule needs k >= 1")
        if self.kind == "tent" and self.delta is not None and not self.delta > 1:
            raise ValueError("tent rule needs delta > 1")

    def resolve(self, epsilon: float) -> "RuleSpec":
        """Fill in the default tent decay ``1 + epsilon``."""
        if self.kind == "tent" and self.delta is None:
            return RuleSpec("tent", delta=1.0 + epsilon)
        return self

    def __str__(self) -> str:
        if self.kind == "genesis":
            return f"genesis:k={self.k}"
        if self.kind == "tent" and self.delta is not None:
            return f"tent:delta={self.delta!r}"
        return self.kind


_RULE_RE = re.compile(r"^(weight|genesis:k=(\d+)|tent(?::delta=([0-9.eE+-]+))?)$")


def parse_rule(text: str) -> RuleSpec:
    """Parse ``weight``, ``genesis:k=<int>``, ``tent`` or ``tent:delta=<real>``."""
    m = _RULE_RE.match(text.strip())
    if not m:
        raise ValueError(f"malformed rule {text!r}")
    if m.group(2) is not None:
        return RuleSpec("genesis", k=int(m.group(2)))
    if text.strip().startswith("tent"):
        delta = float(m.group(3)) if m.group(3) is not None else None
        return RuleSpec("tent", delta=delta)
    return RuleSpec("weight")


def _close(x: float, y: float) -> bool:
    return abs(x - y) <= REL_TOL * max(abs(x), abs(y))


def _strictly_greater(x: float, y: float) -> bool:
    return x > y and not _close(x, y)


def _check(honest: Chain, adversarial: Chain) -> Optional[int]:
    return fork_point(honest, adversarial)


def cs_weight(honest: Chain, adversarial: Chain) -> int:
    _check(honest, adversarial)
    w_h = math.fsum(honest.profile)
    w_a = math.fsum(adversarial.profile)
    return 0 if _strictly_greater(w_h, w_a) else 1


def cs_genesis(k: int, honest: Chain, adversarial: Chain) -> int:
    """Compare the ``k`` blocks right after the last common block."""
    if k < 1:
        raise ValueError("k must be >= 1")
    lam = _check(honest, adversarial)
    if lam is None:
        return 0
    stop = min(len(honest), lam + k)
    w_h = math.fsum(honest.profile[lam:stop])
    w_a = math.fsum(adversarial.profile[lam:stop])
    return 0 if _strictly_greater(w_h, w_a) else 1


def cs_tent(delta: float, honest: Chain, adversarial: Chain) -> int:
    lam = _check(honest, adversarial)
    if lam is None:
        return 0
    mu, _ = tent_fit(honest.profile[lam:], delta)
    mu_adv, _ = tent_fit(adversarial.profile[lam:], delta)
    return 1 if _strictly_greater(mu_adv, mu) else 0


def select(rule: RuleSpec, honest: Chain, adversarial: Chain) -> int:
    if rule.kind == "weight":
        return cs_weight(honest, adversarial)
    if rule.kind == "genesis":
        return cs_genesis(rule.k, honest, adversarial)
    if rule.delta is None:
        raise ValueError("tent rule has no decay; call rule.resolve(epsilon) first")
    return cs_tent(rule.delta, honest, adversarial)
