"""Closed-form fork-length bounds.

Parameters are read at their decimal value (``0.01`` means exactly 1/100),
so the ceilings are exact rather than at the mercy of binary rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

# Above this k the exact rational power check gets slow; fall back to floats.
_EXACT_K_LIMIT = 20000
# (1+eps)^k within this relative distance below phi counts as reaching phi,
# so phi = 1 + eps evaluated in binary floating point still gives k = 1.
_K_GUARD = Fraction(1, 10**12)


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(repr(float(x)))


def _check(phi, epsilon, rho=2):
    if not phi > 1:
        raise ValueError("phi must exceed 1")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if int(rho) != rho or rho < 2:
        raise ValueError("rho must be an integer >= 2")


def k_steps(phi: float, epsilon: float) -> int:
    """Smallest k with ``(1 + epsilon)**k >= phi`` (up to a 1e-12 relative guard)."""
    _check(phi, epsilon)
    est = math.log(phi) / math.log1p(epsilon)
    k = max(1, math.ceil(est - 1e-12 * max(1.0, est)))
    if k > _EXACT_K_LIMIT:
        return k
    P, d = _q(phi) * (1 - _K_GUARD), 1 + _q(epsilon)
    while k > 1 and d ** (k - 1) >= P:
        k -= 1
    while d**k < P:
        k += 1
    return k


def ell_weight(phi: float, epsilon: float) -> int:
    _check(phi, epsilon)
    return math.ceil(_q(phi) / _q(epsilon))


def ell_genesis(phi: float, k: int, rho: int) -> int:
    if not phi > 1:
        raise ValueError("phi must exceed 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    if int(rho) != rho or rho < 1:
        raise ValueError("rho must be a positive integer")
    return math.ceil(_q(phi)) * k * rho


def universal_flat_terms(phi: float, epsilon: float, rho: int) -> tuple[int, int]:
    """The two ceiling terms whose sum is the flat length ``l``."""
    _check(phi, epsilon, rho)
    P, e = _q(phi), _q(epsilon)
    d = 1 + e
    base = rho * P * P * (d - 1 / P) / e
    return math.ceil(base * d), math.ceil(base)


def ell_universal(phi: float, epsilon: float, rho: int) -> tuple[int, int, int]:
    """``(k, l, ell)`` with ``ell = l + 2k``."""
    k = k_steps(phi, epsilon)
    l = sum(universal_flat_terms(phi, epsilon, rho))
    return k, l, l + 2 * k


def ell_tent_lower(phi: float, epsilon: float, rho: int) -> float:
    """Fork length below which the tent rule cannot be beaten (may be <= 0)."""
    _check(phi, epsilon, rho)
    P, e = _q(phi), _q(epsilon)
    return float(rho * ((1 + e) * (P - 1) / e - k_steps(phi, epsilon)))


@dataclass(frozen=True)
class BoundReport:
    phi: float
    epsilon: float
    rho: int
    genesis_k: int
    k_steps: int
    ell_weight: int
    ell_genesis: int
    ell_universal: int
    ell_tent_lower_raw: float
    simulated_ell: Optional[int] = None

    @property
    def ell_tent_lower(self) -> float:
        return max(0.0, self.ell_tent_lower_raw)

    @property
    def tent_lower_clamped(self) -> bool:
        return self.ell_tent_lower_raw < 0


def bound_report(
    phi: float, epsilon: float, rho: int, genesis_k: int = 1, simulated_ell: Optional[int] = None
) -> BoundReport:
    k, _, ell = ell_universal(phi, epsilon, rho)
    return BoundReport(
        phi=phi,
        epsilon=epsilon,
        rho=rho,
        genesis_k=genesis_k,
        k_steps=k,
        ell_weight=ell_weight(phi, epsilon),
        ell_genesis=ell_genesis(phi, genesis_k, rho),
        ell_universal=ell,
        ell_tent_lower_raw=ell_tent_lower(phi, epsilon, rho),
        simulated_ell=simulated_ell,
    )
