"""Slow but obviously-correct reference implementations used by the tests."""

from __future__ import annotations

import math
from decimal import ROUND_CEILING, Decimal, getcontext

getcontext().prec = 60


def tent_fit_brute(profile, decay):
    """Double loop over every apex and every index."""
    best, apex = -math.inf, None
    for x in range(len(profile)):
        mu = min(v * decay ** abs(i - x) for i, v in enumerate(profile))
        if mu > best * (1 + 1e-12):
            best, apex = mu, x
    return best, apex


def geometric_weight(epsilon, n_blocks):
    """Sum of (1+eps)^-t for t = 0..n_blocks-1 in closed form."""
    r = 1.0 / (1.0 + epsilon)
    return (1.0 - r**n_blocks) / (1.0 - r)


def k_steps_increment(phi, epsilon):
    """Smallest k with (1+eps)^k >= phi, in 60-digit decimal arithmetic."""
    P, d = Decimal(str(phi)), 1 + Decimal(str(epsilon))
    k, power = 1, d
    while power < P:
        k += 1
        power *= d
    return k


def _ceil(x: Decimal) -> int:
    return int(x.to_integral_value(rounding=ROUND_CEILING))


def ell_universal_decimal(phi, epsilon, rho):
    P, e = Decimal(str(phi)), Decimal(str(epsilon))
    d = 1 + e
    # rho phi^2 (d - 1/phi) / eps written without the division by phi
    base = rho * P * (d * P - 1)
    first = _ceil(base * d / e)
    second = _ceil(base / e)
    k = k_steps_increment(phi, epsilon)
    return k, first + second, first + second + 2 * k


def replot_budget_brute(targets, phi, rho):
    """Grow each block from 1/phi one 1/phi chunk at a time."""
    total = 0
    for alpha in targets:
        size, n = 1.0 / phi, 0
        while size < alpha * (1 - 1e-9):
            size += 1.0 / phi
            n += 1
        total += rho * n
    return total


def weights_cross(phi, epsilon):
    """First round where the flat bootstrapped chain outweighs the decaying honest one."""
    d = 1.0 + epsilon
    honest, adv = 1.0, 1.0
    j = 0
    while True:
        j += 1
        honest += phi * (1 / phi) * d**-j
        adv += (1 / phi) / d
        if adv >= honest * (1 - 1e-9):
            return j
