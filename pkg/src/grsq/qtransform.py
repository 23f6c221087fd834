"""The secret transformation Q = R + T.

R is dense of rank <= z, T is sparse with every row and column weight equal
to floor(m) or ceil(m).  Two shapes of R are supported:

* hidden:   R = a^T b
* selected: R = a^T b + a2^T 1, where senders enforce a e^T = 0
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import matrix as mx
from .gf import Field

HIDDEN = "hidden"
SELECTED = "selected"
VARIANTS = (HIDDEN, SELECTED)

RESAMPLE_BUDGET = 100


class QBuildError(RuntimeError):
    """Resampling budget exhausted."""


@dataclass(frozen=True)
class Finding:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class QParts:
    field: Field
    variant: str
    z: int
    m: Fraction
    a: np.ndarray
    b: np.ndarray
    a2: np.ndarray
    T: np.ndarray
    R: np.ndarray = dc_field(repr=False)
    Q: np.ndarray = dc_field(repr=False)
    Qinv: np.ndarray = dc_field(repr=False)
    Tinv: np.ndarray = dc_field(repr=False)

    @property
    def n(self) -> int:
        return self.T.shape[0]

    @property
    def t_row_weights(self) -> np.ndarray:
        return np.count_nonzero(self.T, axis=1)

    @property
    def t_col_weights(self) -> np.ndarray:
        return np.count_nonzero(self.T, axis=0)

    @property
    def m_actual(self) -> Fraction:
        """Realised average weight of T (after rounding the nonzero count)."""
        return Fraction(int(np.count_nonzero(self.T)), self.n)


def as_fraction(m) -> Fraction:
    if isinstance(m, Fraction):
        return m
    if isinstance(m, float):
        return Fraction(m).limit_denominator(1 << 16)
    return Fraction(m)


def default_m(n: int, k: int) -> Fraction:
    """Smallest average weight of T that closes the star-product dimension gap."""
    return 1 + Fraction(n - k - 3, n)


def build_R(F: Field, variant: str, a: np.ndarray, b: np.ndarray, a2=None) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    n = b.shape[1]
    R = mx.matmul(F, a.T, b)
    if variant == SELECTED:
        a2 = np.asarray(a2, dtype=np.int64)
        ones = np.ones((a2.shape[0], n), dtype=np.int64)
        R = F.vadd(R, mx.matmul(F, a2.T, ones))
    elif variant != HIDDEN:
        raise ValueError(f"unknown variant {variant!r}")
    return R


def _disjoint_permutation(rng, n: int, occupied: np.ndarray) -> np.ndarray:
    rows = np.arange(n)
    while True:
        perm = rng.permutation(n)
        if not occupied[rows, perm].any():
            return perm


def build_T(n: int, m, F: Field, rng) -> np.ndarray:
    """Random non-singular n x n matrix with row/column weights floor(m) or ceil(m)."""
    m = as_fraction(m)
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < n, got m={m}")
    base = math.floor(m)
    extras = math.floor(n * m + Fraction(1, 2)) - base * n
    while True:
        occupied = np.zeros((n, n), dtype=bool)
        for _ in range(base):
            perm = _disjoint_permutation(rng, n, occupied)
            occupied[np.arange(n), perm] = True
        if extras:
            while True:
                rows = rng.choice(n, extras, replace=False)
                cols = rng.choice(n, extras, replace=False)
                placed = False
                for _ in range(200):
                    match = cols[rng.permutation(extras)]
                    if not occupied[rows, match].any():
                        occupied[rows, match] = True
                        placed = True
                        break
                if placed:
                    break
        T = np.zeros((n, n), dtype=np.int64)
        T[occupied] = F.random(rng, size=int(occupied.sum()), nonzero=True)
        if mx.rank(F, T) == n:
            return T


def _full_rank_rows(F: Field, z: int, n: int, rng) -> np.ndarray:
    # nonzero entries: a zero a_i leaves row i of Q equal to a row of T
    while True:
        a = F.random(rng, size=(z, n), nonzero=True)
        if mx.rank(F, a) == z:
            return a


def build_Q(F: Field, R: np.ndarray, T: np.ndarray):
    """(Q, Q^-1, T^-1); raises SingularMatrixError when Q or T is singular."""
    Q = F.vadd(R, T)
    return Q, mx.invert(F, Q), mx.invert(F, T)


def make_qparts(F: Field, variant: str, a, b, a2, T, m) -> QParts:
    """Assemble parts from explicit components (used when loading keys)."""
    n = T.shape[0]
    a = np.asarray(a, dtype=np.int64).reshape(-1, n)
    b = np.asarray(b, dtype=np.int64).reshape(-1, n)
    z = a.shape[0]
    if a2 is None:
        a2 = np.zeros((z, n), dtype=np.int64)
    a2 = np.asarray(a2, dtype=np.int64).reshape(-1, n)
    R = build_R(F, variant, a, b, a2)
    Q, Qinv, Tinv = build_Q(F, R, T)
    return QParts(F, variant, z, as_fraction(m), a, b, a2, np.asarray(T), R, Q, Qinv, Tinv)


def random_qparts(F: Field, n: int, z: int, m, variant: str, rng,
                  budget: int = RESAMPLE_BUDGET) -> QParts:
    """Seeded draw of a and b (all entries nonzero), a2 and T with Q non-singular."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if not 0 <= z <= n:
        raise ValueError(f"need 0 <= z <= n, got z={z}")
    for _ in range(budget):
        a = _full_rank_rows(F, z, n, rng)
        b = F.random(rng, size=(z, n), nonzero=True)
        a2 = F.random(rng, size=(z, n)) if variant == SELECTED else np.zeros((z, n), dtype=np.int64)
        T = build_T(n, m, F, rng)
        try:
            return make_qparts(F, variant, a, b, a2, T, m)
        except mx.SingularMatrixError:
            continue
    raise QBuildError(f"no non-singular Q after {budget} attempts")


def validate_q(parts: QParts) -> list:
    """Structural weaknesses of Q that leak the sparse part."""
    F, Q, n = parts.field, parts.Q, parts.n
    findings = []
    col_w = np.count_nonzero(Q, axis=0)
    for j in np.flatnonzero(col_w == 1):
        i = int(np.flatnonzero(Q[:, j])[0])
        findings.append(Finding("weight-1-column", f"column {j} of Q is zero except at row {i}"))
    t_is_perm = bool(np.all(parts.t_row_weights == 1) and np.all(parts.t_col_weights == 1))
    if F.q == 2 and np.all(parts.R == 1) and t_is_perm:
        findings.append(Finding("all-ones-plus-permutation", "binary Q is the all-ones matrix plus a permutation"))
    row_w = np.count_nonzero(Q, axis=1)
    # weight n-1 is only structural over F_2, where such a row is 1 + a unit vector
    extreme = (row_w == 1) | ((row_w == n - 1) if F.q == 2 else False)
    for i in np.flatnonzero(extreme):
        findings.append(Finding("extreme-row-weight", f"row {i} of Q has weight {row_w[i]}"))
    return findings
