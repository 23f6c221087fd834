"""Closed-form probabilities: correctable syndromes and decryption success."""

from __future__ import annotations

import math
from fractions import Fraction


def correctable_count(n: int, t: int, q: int) -> int:
    """Number of nonzero error vectors of weight <= t."""
    return sum(math.comb(n, i) * (q - 1) ** i for i in range(1, t + 1))


def pe_correctable(n: int, k: int, t: int, q: int) -> float:
    """log10 of the chance that a uniform syndrome is correctable."""
    r = n - k
    return math.log10(correctable_count(n, t, q)) - r * math.log10(q)


def success_lower_bound(n: int, t: int, t_pub: int, m) -> Fraction:
    """Lower bound on the chance that a uniform weight-t_pub error stays within t after T.

    Counts weight(e T) as the sum of the row weights of T at the error
    positions: floor(m) per position plus one per heavy row hit. Two error
    rows sharing a column only lower the true weight, so the real rate
    for a given T is at least this.
    """
    m = Fraction(m)
    base = math.floor(m)
    heavy = math.floor(n * m + Fraction(1, 2)) - base * n
    slack = t - base * t_pub
    if slack < 0:
        return Fraction(0)
    good = sum(math.comb(heavy, h) * math.comb(n - heavy, t_pub - h)
               for h in range(0, min(slack, heavy, t_pub) + 1))
    return Fraction(good, math.comb(n, t_pub))
