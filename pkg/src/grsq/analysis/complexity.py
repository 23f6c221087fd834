"""Key sizes and per-information-bit encryption/decryption costs.

Costs are in binary operations: one field addition costs l = log2(q), one
multiplication or inversion 2 l^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class CostModel:
    l: float
    S: float
    M: float

    @classmethod
    def for_field(cls, q: int) -> "CostModel":
        l = math.log2(q)
        return cls(l, l, 2 * l * l)


@dataclass(frozen=True)
class ComplexityReport:
    system: str
    n: int
    k: int
    keybits: int
    info_bits: Optional[float]
    enc_per_bit: Optional[float]
    dec_per_bit: Optional[float]


def key_bits(k: int, r: int, q: int) -> int:
    """Systematic public key: k*r entries of ceil(log2 q) bits."""
    return k * r * math.ceil(math.log2(q))


def encryption_cost(n: int, k: int, t_pub: int, q: int) -> float:
    """Syndrome of a weight-t_pub error against [I | Hr]; w errors fall in the k-part on average."""
    c = CostModel.for_field(q)
    r = n - k
    w = k / n * t_pub
    return ((w - 1) * r + t_pub - w) * c.S + w * r * c.M


def binary_encryption_cost(n: int, k: int, t: int) -> float:
    """Over F_2 the parity-check entries are bits, so only additions remain."""
    r = n - k
    w = k / n * t
    return (w - 1) * r + t - w


def grs_decryption_cost(n: int, k: int, q: int, z: int) -> float:
    c = CostModel.for_field(q)
    r = n - k
    t = r // 2
    guesses = q ** z / 2
    mults = (4 * t * (2 * t + 2) + r) * guesses + 2 * t * t + (2 * n + 1) * t + r * r - n
    adds = (2 * t * (2 * t + 1) + r) * guesses + 2 * t * t + (2 * n - 1) * t + (r - 1) * r - n
    return mults * c.M + adds * c.S


def goppa_decryption_cost(n: int, k: int, t: int) -> float:
    g = math.ceil(math.log2(n))
    r = n - k
    return n + 4 * g * g * t * t + 2 * g * g * t + g * n * (2 * t + 1) + r * r / 2


def info_bits(n: int, t_pub: int, q: int) -> float:
    return math.log2(math.comb(n, t_pub) * (q - 1) ** t_pub)


def complexity_report(n: int, k: int, q: int, t_pub: int, z: int = 1) -> ComplexityReport:
    bits = info_bits(n, t_pub, q)
    return ComplexityReport(
        "grs", n, k, key_bits(k, n - k, q), bits,
        encryption_cost(n, k, t_pub, q) / bits,
        grs_decryption_cost(n, k, q, z) / bits,
    )


def goppa_report(n: int, k: int, t: int) -> ComplexityReport:
    bits = info_bits(n, t, 2)
    return ComplexityReport(
        "goppa", n, k, key_bits(k, n - k, 2), bits,
        binary_encryption_cost(n, k, t) / bits,
        goppa_decryption_cost(n, k, t) / bits,
    )


def rsa_report(n: int) -> ComplexityReport:
    """Only the key size (modulus plus exponent) has a closed form here."""
    return ComplexityReport("rsa", n, n, 2 * n, None, None, None)


def comparison_table() -> list:
    """Goppa / RSA / GRS columns at 128-bit security."""
    return [goppa_report(2960, 2288, 56), rsa_report(3072), complexity_report(511, 387, 512, 50, 1)]
