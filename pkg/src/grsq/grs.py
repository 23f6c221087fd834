"""Generalized Reed-Solomon codes and their bounded-distance syndrome decoder.

Convention: the parity-check matrix is H[j][i] = v_i * alpha_i**j for
j = 0..r-1, so a syndrome is s_j = sum_i e_i v_i alpha_i**j.  The generator
side uses the dual multipliers w_i = 1 / (v_i * prod_{j != i}(alpha_i - alpha_j)).

Decoding runs the extended Euclidean algorithm on (x^r, S(x)), a root search
over the support, and Forney's formula.  A support element equal to 0 is
allowed; its error value is read off s_0 after the others are known.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matrix as mx
from .gf import Field


class DecodeFailure(Exception):
    """The syndrome does not correspond to an error of weight <= t."""


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _dual_multipliers(F: Field, support: np.ndarray, mults: np.ndarray) -> np.ndarray:
    # 1 / (m_i * prod_{j != i}(alpha_i - alpha_j)), products taken in the log domain
    diff = F.vsub(support[:, None], support[None, :])
    np.fill_diagonal(diff, 1)
    logs = F.log[diff].sum(axis=1) + F.log[mults]
    return F.vinv(F.exp[logs % (F.q - 1)])


def _powers(F: Field, base: np.ndarray, count: int) -> np.ndarray:
    """Matrix P[j][i] = base_i ** j for j < count."""
    out = np.ones((count, len(base)), dtype=np.int64)
    for j in range(1, count):
        out[j] = F.vmul(out[j - 1], base)
    return out


@dataclass(frozen=True)
class Locator:
    """Output of the key equation plus root search for one syndrome."""

    sigma: list
    omega: list
    positions: np.ndarray


class GrsCode:
    """A GRS code of length n and dimension k with its decoder tables."""

    def __init__(self, field: Field, n: int, k: int, support, multipliers):
        F = field
        support = F.array(support).reshape(-1)
        multipliers = F.array(multipliers).reshape(-1)
        if len(support) != n or len(multipliers) != n:
            raise ValueError("support and multipliers must have length n")
        if not 0 <= k < n:
            raise ValueError(f"need 0 <= k < n, got k={k}, n={n}")
        if n > F.q:
            raise ValueError(f"length {n} exceeds field size {F.q}")
        if len(np.unique(support)) != n:
            raise ValueError("support elements must be distinct")
        if np.any(multipliers == 0):
            raise ValueError("multipliers must be nonzero")
        self.field = F
        self.n, self.k = n, k
        self.r = n - k
        self.t = self.r // 2
        self.support = support
        self.multipliers = multipliers
        self.gen_multipliers = _dual_multipliers(F, support, multipliers)

        self.H = F.vmul(_powers(F, support, self.r), multipliers[None, :])
        if k:
            G0 = F.vmul(_powers(F, support, k), self.gen_multipliers[None, :])
            self.G = mx.systematic_form(F, G0)[0]
        else:
            self.G = np.zeros((0, n), dtype=np.int64)

        # root-search table over nonzero support points: (alpha_i^-1)^j, j <= t
        nz = np.flatnonzero(support)
        self._nz_pos = nz
        self._chien = _powers(F, F.vinv(support[nz]), self.t + 1).T.copy()
        self._chien_f = self._chien.astype(np.float64)
        zero = np.flatnonzero(support == 0)
        self._zero_pos = int(zero[0]) if zero.size else None

    def __repr__(self):
        return f"GrsCode(n={self.n}, k={self.k}, t={self.t}, {self.field!r})"

    # -- codec -------------------------------------------------------------

    def encode(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        if u.shape != (self.k,):
            raise mx.DimensionError(f"message must have length {self.k}")
        return mx.mat_vec(self.field, self.G, u, side="left")

    def syndrome(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=np.int64)
        if y.shape != (self.n,):
            raise mx.DimensionError(f"word must have length {self.n}")
        return mx.mat_vec(self.field, self.H, y)

    def has_all_one_codeword(self) -> bool:
        return not np.any(self.field.vsum(self.H, axis=1))

    # -- decoder -----------------------------------------------------------

    def key_equation(self, s) -> tuple:
        """Locator and evaluator (sigma(0) = 1) from a nonzero syndrome."""
        F, t, r = self.field, self.t, self.r
        a = [0] * r + [1]
        b = _trim([int(x) for x in s])
        ua, ub = [], [1]
        while len(b) - 1 >= t:
            db = len(b) - 1
            inv_lead = F.inv(b[-1])
            rem = a[:]
            quot = [0] * (len(a) - db)
            for d in range(len(a) - 1 - db, -1, -1):
                c = F.mul(rem[d + db], inv_lead)
                if c:
                    quot[d] = c
                    rem[d:d + db + 1] = F.axpy_list(rem[d:d + db + 1], c, b)
            rem = _trim(rem[:db])
            size = max(len(ua), len(quot) + len(ub) - 1)
            unew = ua + [0] * (size - len(ua))
            for d, c in enumerate(quot):
                if c:
                    unew[d:d + len(ub)] = F.axpy_list(unew[d:d + len(ub)], c, ub)
            a, b = b, rem
            ua, ub = ub, _trim(unew)
        if not ub or ub[0] == 0:
            raise DecodeFailure("locator vanishes at 0")
        if len(ub) - 1 > t:
            raise DecodeFailure("locator degree exceeds t")
        norm = F.inv(ub[0])
        sigma = [F.mul(c, norm) for c in ub]
        omega = [F.mul(c, norm) for c in b]
        return sigma, omega

    def _eval_many(self, sigma: list) -> np.ndarray:
        F = self.field
        d = len(sigma)
        if F.is_binary:
            return F.vsum(F.vmul(self._chien[:, :d], np.asarray(sigma)[None, :]), axis=1)
        vals = self._chien_f[:, :d] @ np.asarray(sigma, dtype=np.float64)
        return vals.astype(np.int64) % F.q

    def locate(self, s) -> Locator:
        """Key equation and root search; raises DecodeFailure on inconsistency."""
        sigma, omega = self.key_equation(s)
        deg = len(sigma) - 1
        if deg == 0:
            pos = np.zeros(0, dtype=np.int64)
        else:
            pos = self._nz_pos[self._eval_many(sigma) == 0]
            if len(pos) != deg:
                raise DecodeFailure(f"{len(pos)} roots for a degree-{deg} locator")
        return Locator(sigma, omega, pos)

    def _horner(self, poly: list, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(poly):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def error_values(self, s, loc: Locator) -> np.ndarray:
        """Forney step plus a final syndrome check."""
        F = self.field
        s = np.asarray(s, dtype=np.int64)
        deriv = [F.mul(j % F.p, c) for j, c in enumerate(loc.sigma)][1:]
        e = np.zeros(self.n, dtype=np.int64)
        total = 0
        for i in loc.positions.tolist():
            alpha = int(self.support[i])
            x = F.inv(alpha)
            den = self._horner(deriv, x)
            if den == 0:
                raise DecodeFailure("repeated root")
            y = F.neg(F.div(F.mul(alpha, self._horner(loc.omega, x)), den))
            if y == 0:
                raise DecodeFailure("zero error value at a root")
            total = F.add(total, y)
            e[i] = F.div(y, int(self.multipliers[i]))
        y0 = F.sub(int(s[0]), total)
        if y0:
            if self._zero_pos is None:
                raise DecodeFailure("error values inconsistent with s_0")
            e[self._zero_pos] = F.div(y0, int(self.multipliers[self._zero_pos]))
        if mx.weight(e) > self.t:
            raise DecodeFailure("error weight exceeds t")
        support = np.flatnonzero(e)
        check = mx.mat_vec(F, self.H[:, support], e[support]) if support.size else np.zeros(self.r, dtype=np.int64)
        if not np.array_equal(check, s):
            raise DecodeFailure("recomputed syndrome differs")
        return e

    def decode_syndrome(self, s) -> np.ndarray:
        """The unique e with weight <= t and H e^T = s, else DecodeFailure."""
        s = np.asarray(s, dtype=np.int64)
        if s.shape != (self.r,):
            raise mx.DimensionError(f"syndrome must have length {self.r}")
        if not s.any():
            return np.zeros(self.n, dtype=np.int64)
        return self.error_values(s, self.locate(s))

    def decode(self, y) -> np.ndarray:
        """Nearest codeword to y within distance t."""
        return self.field.vsub(y, self.decode_syndrome(self.syndrome(y)))


def grs_make(field: Field, n: int, k: int, support, multipliers) -> GrsCode:
    return GrsCode(field, n, k, support, multipliers)


def grs_from_generator(field: Field, n: int, k: int, support, gen_multipliers) -> GrsCode:
    """Build the code whose canonical generator has the given column multipliers."""
    support = field.array(support)
    gen_multipliers = field.array(gen_multipliers)
    if np.any(gen_multipliers == 0):
        raise ValueError("multipliers must be nonzero")
    if len(np.unique(support)) != len(support):
        raise ValueError("support elements must be distinct")
    v = _dual_multipliers(field, support, gen_multipliers)
    return GrsCode(field, n, k, support, v)


def random_grs(field: Field, n: int, k: int, rng) -> GrsCode:
    """Seeded code: n distinct support points in random order, random nonzero multipliers."""
    support = rng.permutation(field.q)[:n].astype(np.int64)
    mults = field.random(rng, size=n, nonzero=True)
    return GrsCode(field, n, k, support, mults)
