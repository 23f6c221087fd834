"""Key generation, encryption and guessing decryption.

Two versions share one private key layout:

* Niederreiter: public H'' = [I | Hr], ciphertext x'' = H'' e^T.
* McEliece: public G'' = [I | X], ciphertext x = u G'' + e.

The receiver does not know the rank-z contribution e R, so decryption
enumerates it (natural integer order) and keeps the first guess whose decoded
error passes the weight and constraint checks.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import matrix as mx
from .gf import GF, Field
from .grs import DecodeFailure, GrsCode, random_grs
from .qtransform import (HIDDEN, RESAMPLE_BUDGET, SELECTED, VARIANTS, QParts, as_fraction,
                         default_m, random_qparts, validate_q)

NIEDERREITER = "niederreiter"
MCELIECE = "mceliece"
VERSIONS = (NIEDERREITER, MCELIECE)

COUNTER_BITS = 4
GUESS_CHUNK = 4096


class KeygenError(RuntimeError):
    pass


class DecryptionFailure(Exception):
    """No guess produced an error vector passing the checks."""


class MessageTooLong(ValueError):
    pass


@dataclass(frozen=True)
class ParamSet:
    q: int
    n: int
    k: int
    z: int = 1
    m: Optional[Fraction] = None
    variant: str = HIDDEN
    version: str = NIEDERREITER
    modulus_poly: int = 0

    def __post_init__(self):
        object.__setattr__(self, "m", default_m(self.n, self.k) if self.m is None else as_fraction(self.m))
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.version not in VERSIONS:
            raise ValueError(f"unknown version {self.version!r}")
        if not 0 < self.k < self.n <= self.q:
            raise ValueError(f"need 0 < k < n <= q, got n={self.n}, k={self.k}, q={self.q}")
        if not 0 <= self.z <= 3:
            raise ValueError("z must be in 0..3")
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.t_pub < 1:
            raise ValueError(f"t_pub = floor({self.t}/{self.m}) is zero")

    @property
    def r(self) -> int:
        return self.n - self.k

    @property
    def t(self) -> int:
        return self.r // 2

    @property
    def t_pub(self) -> int:
        return math.floor(Fraction(self.t) / self.m)

    @property
    def field(self) -> Field:
        return GF(self.q, self.modulus_poly or None)

    @property
    def weak(self) -> bool:
        """True when m is below the star-product distinguisher threshold."""
        return self.m < default_m(self.n, self.k)


@dataclass(frozen=True)
class PublicKey:
    params: ParamSet
    # Niederreiter: r x k block of H''; McEliece: k x r block of G''
    matrix: np.ndarray
    # constraint rows a (selected variant only)
    constraint: Optional[np.ndarray] = None

    @property
    def field(self) -> Field:
        return self.params.field

    def full_matrix(self) -> np.ndarray:
        p = self.params
        if p.version == NIEDERREITER:
            return np.hstack([mx.identity(p.r), self.matrix])
        return np.hstack([mx.identity(p.k), self.matrix])


@dataclass(frozen=True)
class PrivateKey:
    params: ParamSet
    code: GrsCode
    S: np.ndarray
    Seff: np.ndarray
    qparts: QParts
    public: PublicKey
    # H b_i^T as columns (hidden) or H 1^T as a single column (selected)
    shift: np.ndarray

    @property
    def field(self) -> Field:
        return self.params.field


def derive_keys(params: ParamSet, code: GrsCode, S: np.ndarray, qparts: QParts) -> PrivateKey:
    """All cached and public matrices from the secret components.

    Raises SingularMatrixError when the leading block of the public matrix
    is singular.
    """
    F = code.field
    H, Q = code.H, qparts.Q
    if params.version == NIEDERREITER:
        Hp = mx.matmul(F, mx.matmul(F, mx.invert(F, S), H), Q.T)
        left = Hp[:, :params.r]
        U = mx.invert(F, left)
        pub = mx.matmul(F, U, Hp)[:, params.r:]
    else:
        Gp = mx.matmul(F, mx.matmul(F, mx.invert(F, S), code.G), qparts.Qinv)
        left = Gp[:, :params.k]
        U = mx.invert(F, left)
        pub = mx.matmul(F, U, Gp)[:, params.k:]
    Seff = mx.matmul(F, S, left)
    if params.variant == HIDDEN:
        shift = mx.matmul(F, H, qparts.b.T)
    else:
        shift = F.vsum(H, axis=1).reshape(-1, 1)
    constraint = qparts.a.copy() if params.variant == SELECTED else None
    public = PublicKey(params, pub, constraint)
    return PrivateKey(params, code, np.asarray(S), Seff, qparts, public, shift)


def keygen(params: ParamSet, rng, *, allow_all_one_codeword: bool = False,
           validate: bool = True, budget: int = RESAMPLE_BUDGET,
           code: Optional[GrsCode] = None) -> PrivateKey:
    """Draw a key pair; the public half is ``priv.public``.

    A fixed secret ``code`` may be supplied (audits and experiments);
    otherwise a random GRS code is drawn per attempt.
    """
    F = params.field
    size = params.r if params.version == NIEDERREITER else params.k
    fixed = code
    for _ in range(budget):
        code = fixed if fixed is not None else random_grs(F, params.n, params.k, rng)
        if params.variant == SELECTED and not allow_all_one_codeword and code.has_all_one_codeword():
            continue
        qparts = random_qparts(F, params.n, params.z, params.m, params.variant, rng)
        # with z = 0 every row of Q = T has weight 1 by construction
        if validate and params.z >= 1 and validate_q(qparts):
            continue
        if params.variant == HIDDEN and params.z and mx.rank(F, mx.matmul(F, code.H, qparts.b.T)) < params.z:
            continue
        S = mx.random_nonsingular(F, size, rng)
        try:
            return derive_keys(params, code, S, qparts)
        except mx.SingularMatrixError:
            continue
    raise KeygenError(f"no acceptable key after {budget} attempts")


# -- constant-weight message map -----------------------------------------

def _unrank_combination(index: int, n: int, w: int) -> list:
    """w-subset of range(n) with combinatorial-number-system rank ``index``."""
    out = []
    for i in range(w, 0, -1):
        lo, hi = i - 1, n - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if math.comb(mid, i) <= index:
                lo = mid
            else:
                hi = mid - 1
        out.append(lo)
        index -= math.comb(lo, i)
        n = lo
    return out[::-1]


def _rank_combination(positions) -> int:
    return sum(math.comb(c, i + 1) for i, c in enumerate(sorted(positions)))


def capacity(params: ParamSet) -> int:
    """Message bits accepted by cw_encode."""
    free = params.t_pub
    if params.variant == SELECTED:
        free -= params.z
    total = math.comb(params.n, params.t_pub) * (params.q - 1) ** free
    bits = total.bit_length() - 1
    if params.variant == SELECTED:
        bits -= COUNTER_BITS
    return bits


def _digits(value: int, base: int, count: int) -> list:
    out = []
    for _ in range(count):
        value, d = divmod(value, base)
        out.append(d)
    return out


def _solve_constraint(F: Field, a: np.ndarray, e: np.ndarray, tail: list) -> bool:
    """Fill e[tail] so that a e^T = 0; False if impossible with nonzero values."""
    block = a[:, tail]
    try:
        inv = mx.invert(F, block)
    except mx.SingularMatrixError:
        return False
    rest = mx.mat_vec(F, a, e)
    vals = mx.mat_vec(F, inv, F.vneg(rest))
    if np.any(vals == 0):
        return False
    e[tail] = vals
    return True


def cw_encode(msg: int, params: ParamSet, constraint=None) -> np.ndarray:
    """Map an integer below 2**capacity to a weight-t_pub error vector."""
    cap = capacity(params)
    if msg < 0 or msg.bit_length() > cap:
        raise MessageTooLong(f"message needs {msg.bit_length()} bits, capacity is {cap}")
    n, w, q = params.n, params.t_pub, params.q
    count = math.comb(n, w)
    if params.variant == HIDDEN:
        pos_index, rest = msg % count, msg // count
        e = np.zeros(n, dtype=np.int64)
        pos = _unrank_combination(pos_index, n, w)
        e[pos] = np.array(_digits(rest, q - 1, w)) + 1
        return e
    F = params.field
    a = np.asarray(constraint, dtype=np.int64)
    free = w - params.z
    for ctr in range(1 << COUNTER_BITS):
        N = (msg << COUNTER_BITS) | ctr
        pos_index, rest = N % count, N // count
        pos = _unrank_combination(pos_index, n, w)
        e = np.zeros(n, dtype=np.int64)
        e[pos[:free]] = np.array(_digits(rest, q - 1, free), dtype=np.int64) + 1
        if _solve_constraint(F, a, e, pos[free:]):
            return e
    raise MessageTooLong("no counter value satisfies the constraint")


def cw_decode(e, params: ParamSet) -> int:
    e = np.asarray(e, dtype=np.int64)
    pos = np.flatnonzero(e).tolist()
    if len(pos) != params.t_pub:
        raise ValueError(f"error weight {len(pos)} differs from t_pub={params.t_pub}")
    count = math.comb(params.n, params.t_pub)
    free = params.t_pub - (params.z if params.variant == SELECTED else 0)
    rest = 0
    for p in reversed(pos[:free]):
        rest = rest * (params.q - 1) + int(e[p]) - 1
    N = rest * count + _rank_combination(pos)
    if params.variant == SELECTED:
        N >>= COUNTER_BITS
    return N


# -- encryption ----------------------------------------------------------

def sample_error(params: ParamSet, pub: Optional[PublicKey], rng) -> np.ndarray:
    """Random weight-t_pub vector; the selected variant also satisfies a e^T = 0."""
    F = params.field
    n, w = params.n, params.t_pub
    while True:
        pos = sorted(rng.choice(n, w, replace=False).tolist())
        e = np.zeros(n, dtype=np.int64)
        if params.variant == HIDDEN or params.z == 0:
            e[pos] = F.random(rng, size=w, nonzero=True)
            return e
        free = w - params.z
        e[pos[:free]] = F.random(rng, size=free, nonzero=True)
        if _solve_constraint(F, pub.constraint, e, pos[free:]):
            return e


def encrypt_error(pub: PublicKey, e) -> np.ndarray:
    """Niederreiter ciphertext x'' = e_l + Hr e_r^T."""
    p = pub.params
    F = pub.field
    e = np.asarray(e, dtype=np.int64)
    if e.shape != (p.n,):
        raise mx.DimensionError(f"error vector must have length {p.n}")
    return F.vadd(e[:p.r], mx.mat_vec(F, pub.matrix, e[p.r:]))


def encrypt_word(pub: PublicKey, u, e) -> np.ndarray:
    """McEliece ciphertext x = u G'' + e."""
    p = pub.params
    F = pub.field
    u = np.asarray(u, dtype=np.int64)
    if u.shape != (p.k,):
        raise mx.DimensionError(f"message must have length {p.k}")
    red = mx.mat_vec(F, pub.matrix, u, side="left")
    return F.vadd(np.concatenate([u, red]), e)


def encrypt(pub: PublicKey, payload, rng=None) -> np.ndarray:
    """Niederreiter: payload is an integer message.  McEliece: payload is u."""
    p = pub.params
    if p.version == NIEDERREITER:
        return encrypt_error(pub, cw_encode(int(payload), p, pub.constraint))
    return encrypt_word(pub, payload, sample_error(p, pub, rng))


# -- decryption ----------------------------------------------------------

@dataclass(frozen=True)
class Decrypted:
    payload: object
    error: np.ndarray
    guesses: int
    guess: tuple


def _guess_space(priv: PrivateKey):
    p = priv.params
    if p.z == 0:
        return 1, 0
    if p.variant == SELECTED:
        return p.q, 1
    return p.q ** p.z, p.z


def _guess_chunks(priv: PrivateKey):
    """Yield (first_index, guesses[c x width]) in natural enumeration order."""
    total, width = _guess_space(priv)
    q = priv.params.q
    if width == 0:
        yield 0, np.zeros((1, 0), dtype=np.int64)
        return
    it = itertools.product(range(q), repeat=width)
    start = 0
    while start < total:
        block = list(itertools.islice(it, GUESS_CHUNK))
        yield start, np.array(block, dtype=np.int64).reshape(-1, width)
        start += len(block)


def _check(priv: PrivateKey, e: np.ndarray, guess: np.ndarray) -> bool:
    p, F, qp = priv.params, priv.field, priv.qparts
    if mx.weight(e) != p.t_pub or p.z == 0:
        return mx.weight(e) == p.t_pub
    ae = mx.mat_vec(F, qp.a, e)
    if p.variant == HIDDEN:
        return np.array_equal(ae, guess)
    if ae.any():
        return False
    return int(F.vsum(mx.mat_vec(F, qp.a2, e))) == int(guess[0])


def _candidate(code: GrsCode, s: list):
    """Weight <= t error for syndrome s, or None."""
    try:
        if any(s):
            return code.error_values(np.array(s), code.locate(s))
        return np.zeros(code.n, dtype=np.int64)
    except DecodeFailure:
        return None


def guess_loop(priv: PrivateKey, s0: np.ndarray, recover):
    """First guess whose decoded error passes ``recover``.

    ``recover(e_T, guess)`` returns (payload, e) or None.
    """
    F, code = priv.field, priv.code
    for start, guesses in _guess_chunks(priv):
        if guesses.shape[1]:
            synd = F.vsub(s0[None, :], mx.matmul(F, guesses, priv.shift.T))
        else:
            synd = s0[None, :]
        for offset, s in enumerate(synd.tolist()):
            eT = _candidate(code, s)
            if eT is None:
                continue
            guess = guesses[offset]
            out = recover(eT, guess)
            if out is not None:
                payload, e = out
                return Decrypted(payload, e, start + offset + 1, tuple(guess.tolist()))
    raise DecryptionFailure(f"all {_guess_space(priv)[0]} guesses failed")


def _prepare(priv: PrivateKey, ct):
    """Initial syndrome and the recovery/check closure for one ciphertext."""
    p, F, qp = priv.params, priv.field, priv.qparts
    ct = F.array(ct)
    if p.version == NIEDERREITER:
        if ct.shape != (p.r,):
            raise mx.DimensionError(f"ciphertext must have length {p.r}")

        def recover(eT, guess):
            e = mx.mat_vec(F, qp.Tinv, eT, side="left")
            if not _check(priv, e, guess):
                return None
            return cw_decode(e, p), e

        return mx.mat_vec(F, priv.Seff, ct), recover

    if ct.shape != (p.n,):
        raise mx.DimensionError(f"ciphertext must have length {p.n}")
    xq = mx.mat_vec(F, qp.Q, ct, side="left")
    G2 = priv.public.full_matrix()

    def recover(eT, guess):
        if guess.size == 0:
            rpart = np.zeros(p.n, dtype=np.int64)
        elif p.variant == HIDDEN:
            rpart = mx.mat_vec(F, qp.b, guess, side="left")
        else:
            rpart = np.full(p.n, int(guess[0]), dtype=np.int64)
        word = F.vsub(F.vsub(xq, rpart), eT)
        u = mx.mat_vec(F, priv.Seff, word[:p.k], side="left")
        e = F.vsub(ct, mx.mat_vec(F, G2, u, side="left"))
        if not _check(priv, e, guess):
            return None
        return u, e

    return priv.code.syndrome(xq), recover


def decrypt(priv: PrivateKey, ct) -> Decrypted:
    s0, recover = _prepare(priv, ct)
    return guess_loop(priv, s0, recover)


def attempt_guess(priv: PrivateKey, ct, guess) -> Optional[Decrypted]:
    """Run decoding and all checks for one fixed guess; None if it is rejected."""
    F = priv.field
    s0, recover = _prepare(priv, ct)
    guess = np.atleast_1d(np.asarray(guess, dtype=np.int64))
    s = F.vsub(s0, mx.mat_vec(F, priv.shift, guess)) if guess.size else s0
    eT = _candidate(priv.code, s.tolist())
    if eT is None:
        return None
    out = recover(eT, guess)
    return None if out is None else Decrypted(out[0], out[1], 1, tuple(guess.tolist()))
