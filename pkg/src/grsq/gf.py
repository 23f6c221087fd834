"""Arithmetic over F_q for prime q and q = 2^l.

Elements are plain Python ints in [0, q).  Every scalar operation has a
vectorised twin (prefix ``v``) working on numpy integer arrays, which the
matrix and decoder code rely on for speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

PRIME = "prime"
BINARY = "binary-extension"

# lowest-weight irreducible trinomial for F_512
DEFAULT_POLY = {9: 0b1000010001}

# log/exp tables are built eagerly, so very large fields are refused
MAX_Q = 1 << 20


class FieldError(ValueError):
    pass


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


def _pdeg(a: int) -> int:
    return a.bit_length() - 1


def _pmod(a: int, b: int) -> int:
    db = _pdeg(b)
    while a and _pdeg(a) >= db:
        a ^= b << (_pdeg(a) - db)
    return a


def is_irreducible_gf2(poly: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2 over F_2."""
    d = _pdeg(poly)
    if d < 1:
        return False
    for div in range(2, 1 << (d // 2 + 1)):
        if _pmod(poly, div) == 0:
            return False
    return True


def default_modulus(l: int) -> int:
    if l in DEFAULT_POLY:
        return DEFAULT_POLY[l]
    top = 1 << l
    for a in range(1, l):
        cand = top | (1 << a) | 1
        if is_irreducible_gf2(cand):
            return cand
    for cand in range(top | 1, top << 1, 2):
        if is_irreducible_gf2(cand):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {l}")


@dataclass(frozen=True)
class FieldSpec:
    q: int
    kind: str
    modulus_poly: int = 0

    @property
    def l(self) -> int:
        return self.q.bit_length() - 1 if self.kind == BINARY else 0


class Field:
    """A finite field F_q.  Immutable after construction."""

    def __init__(self, spec: FieldSpec):
        q, kind = spec.q, spec.kind
        if q > MAX_Q:
            raise FieldError(f"q = {q} exceeds the supported maximum {MAX_Q}")
        if kind == PRIME:
            if not is_prime(q):
                raise FieldError(f"{q} is not prime")
            self.p = q
            self.l = 0
            self.modulus_poly = 0
        elif kind == BINARY:
            if q < 2 or q & (q - 1):
                raise FieldError(f"{q} is not a power of two")
            self.p = 2
            self.l = q.bit_length() - 1
            poly = spec.modulus_poly or default_modulus(self.l)
            if _pdeg(poly) != self.l or not is_irreducible_gf2(poly):
                raise FieldError(f"modulus {poly:#b} is not irreducible of degree {self.l}")
            self.modulus_poly = poly
            spec = FieldSpec(q, kind, poly)
        else:
            raise FieldError(f"unknown field kind {kind!r}")
        self.spec = spec
        self.q = q
        self.kind = kind
        self.bits = max(1, (q - 1).bit_length())
        self._build_tables()

    def __repr__(self):
        if self.kind == PRIME:
            return f"GF({self.q})"
        return f"GF(2^{self.l}, poly={self.modulus_poly:#x})"

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    @property
    def is_binary(self) -> bool:
        return self.kind == BINARY

    # -- construction helpers -------------------------------------------

    def _slow_mul(self, a: int, b: int) -> int:
        if self.kind == PRIME:
            return a * b % self.q
        # carryless shift-accumulate with reduction
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> self.l:
                a ^= self.modulus_poly
        return r

    def _build_tables(self):
        q = self.q
        order = q - 1
        gen = None
        for g in range(2, q) if q > 2 else [1]:
            x, seen = 1, 0
            for i in range(order):
                x = self._slow_mul(x, g)
                seen += 1
                if x == 1:
                    break
            if seen == order:
                gen = g
                break
        self.generator = gen
        exp = np.zeros(2 * order, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, gen)
        exp[order:] = exp[:order]
        self.exp = exp
        self.log = log
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(order - log[1:]) % order]
        self.inv_table = inv
        self._inv_list = inv.tolist()
        self._log_list = log.tolist()
        self._exp_list = exp.tolist()

    # -- scalar arithmetic ----------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.kind == PRIME:
            return (a + b) % self.q
        return a ^ b

    def sub(self, a: int, b: int) -> int:
        if self.kind == PRIME:
            return (a - b) % self.q
        return a ^ b

    def neg(self, a: int) -> int:
        if self.kind == PRIME:
            return -a % self.q
        return a

    def mul(self, a: int, b: int) -> int:
        if self.kind == PRIME:
            return a * b % self.q
        if a == 0 or b == 0:
            return 0
        return self._exp_list[self._log_list[a] + self._log_list[b]]

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv_list[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def axpy_list(self, xs: list, c: int, ys: list) -> list:
        """[x - c*y for x, y in zip(xs, ys)] on Python lists (hot path of the decoder)."""
        if not c:
            return list(xs)
        if self.kind == PRIME:
            q = self.q
            return [(x - c * y) % q for x, y in zip(xs, ys)]
        ex, lg = self._exp_list, self._log_list
        lc = lg[c]
        return [x ^ ex[lc + lg[y]] if y else x for x, y in zip(xs, ys)]

    # -- vectorised arithmetic ------------------------------------------

    def array(self, x) -> np.ndarray:
        a = np.asarray(x, dtype=np.int64)
        if a.size and (a.min() < 0 or a.max() >= self.q):
            raise FieldError("entries outside [0, q)")
        return a

    def vadd(self, a, b):
        if self.kind == PRIME:
            return (np.asarray(a) + b) % self.q
        return np.bitwise_xor(a, b)

    def vsub(self, a, b):
        if self.kind == PRIME:
            return (np.asarray(a) - b) % self.q
        return np.bitwise_xor(a, b)

    def vneg(self, a):
        if self.kind == PRIME:
            return -np.asarray(a) % self.q
        return np.asarray(a).copy()

    def vmul(self, a, b):
        if self.kind == PRIME:
            return np.asarray(a) * b % self.q
        a = np.asarray(a)
        b = np.asarray(b)
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.inv_table[a]

    def vsum(self, a, axis=None):
        if self.kind == PRIME:
            return np.sum(a, axis=axis) % self.q
        return np.bitwise_xor.reduce(a, axis=axis)

    def vpow(self, a, e: int):
        """Elementwise a**e for a fixed integer exponent e >= 0."""
        a = np.asarray(a)
        if e == 0:
            return np.ones_like(a)
        order = self.q - 1
        out = self.exp[(self.log[a] * e) % order]
        return np.where(a == 0, 0, out)

    def elements(self):
        return range(self.q)

    def nonzero(self):
        return range(1, self.q)

    def random(self, rng, size=None, nonzero=False):
        low = 1 if nonzero else 0
        return rng.integers(low, self.q, size=size, dtype=np.int64)


def field_make(spec: FieldSpec) -> Field:
    return Field(spec)


def GF(q: int, modulus_poly: Optional[int] = None) -> Field:
    """Field of order q; prime q gives F_p, a power of two gives F_2^l."""
    if is_prime(q):
        return Field(FieldSpec(q, PRIME))
    if q >= 2 and q & (q - 1) == 0:
        return Field(FieldSpec(q, BINARY, modulus_poly or 0))
    raise FieldError(f"unsupported field order {q}")
