"""Binary key and ciphertext files.

Key header (little-endian):
    "GRSQ1", format version (1 B), q (4 B), field kind (1 B),
    modulus polynomial (4 B), n, k, z (2 B each), m numerator and
    denominator (2 B each), variant (1 B), system version (1 B).
Then the public matrix, the constraint rows for the selected variant, and
for private files the secret components.  Every field element takes
ceil(bits / 8) bytes, where bits = bit length of q - 1.
"""

from __future__ import annotations

import struct
from fractions import Fraction

import numpy as np

from . import matrix as mx
from .cryptosys import (MCELIECE, NIEDERREITER, ParamSet, PrivateKey, PublicKey,
                        derive_keys)
from .gf import BINARY, PRIME, Field
from .grs import GrsCode
from .qtransform import HIDDEN, SELECTED, make_qparts

KEY_MAGIC = b"GRSQ1"
CT_MAGIC = b"GRSC1"
FORMAT_VERSION = 1

_HEADER = struct.Struct("<5sBIBIHHHHHBB")
_CT_HEADER = struct.Struct("<5sBH")
_KINDS = {PRIME: 0, BINARY: 1}
_VARIANTS = {HIDDEN: 0, SELECTED: 1}
_SYSTEMS = {NIEDERREITER: 0, MCELIECE: 1}


class FormatError(ValueError):
    pass


def _inverse(table: dict, code: int, what: str):
    for k, v in table.items():
        if v == code:
            return k
    raise FormatError(f"unknown {what} code {code}")


def entry_width(F: Field) -> int:
    return (F.bits + 7) // 8


def pack(F: Field, arr) -> bytes:
    w = entry_width(F)
    flat = np.asarray(arr, dtype=np.int64).reshape(-1)
    return flat.astype("<u4").view(np.uint8).reshape(-1, 4)[:, :w].tobytes()


class _Reader:
    def __init__(self, data: bytes, pos: int, F: Field):
        self.data, self.pos, self.F = data, pos, F

    def take(self, *shape) -> np.ndarray:
        w = entry_width(self.F)
        count = int(np.prod(shape)) if shape else 1
        end = self.pos + count * w
        if end > len(self.data):
            raise FormatError("file truncated")
        raw = np.frombuffer(self.data[self.pos:end], dtype=np.uint8).reshape(-1, w)
        self.pos = end
        padded = np.zeros((count, 4), dtype=np.uint8)
        padded[:, :w] = raw
        vals = padded.view("<u4").reshape(-1).astype(np.int64)
        if vals.size and vals.max() >= self.F.q:
            raise FormatError("entry outside the field")
        return vals.reshape(shape)

    @property
    def remaining(self) -> int:
        return len(self.data) - self.pos


def _header(p: ParamSet) -> bytes:
    F = p.field
    m = Fraction(p.m)
    if m.denominator >= 1 << 16 or m.numerator >= 1 << 16:
        raise FormatError(f"m = {m} does not fit 16-bit numerator/denominator")
    return _HEADER.pack(KEY_MAGIC, FORMAT_VERSION, p.q, _KINDS[F.kind], F.modulus_poly,
                        p.n, p.k, p.z, m.numerator, m.denominator,
                        _VARIANTS[p.variant], _SYSTEMS[p.version])


def _parse_header(data: bytes):
    if len(data) < _HEADER.size:
        raise FormatError("file too short for a key header")
    (magic, ver, q, kind, poly, n, k, z, num, den, variant, system) = _HEADER.unpack_from(data)
    if magic != KEY_MAGIC:
        raise FormatError("bad key magic")
    if ver != FORMAT_VERSION:
        raise FormatError(f"unsupported key format version {ver}")
    if den == 0:
        raise FormatError("zero m denominator")
    _inverse(_KINDS, kind, "field kind")
    params = ParamSet(q, n, k, z, Fraction(num, den), _inverse(_VARIANTS, variant, "variant"),
                      _inverse(_SYSTEMS, system, "system version"), poly if kind == 1 else 0)
    return params, _HEADER.size


def _public_body(pub: PublicKey) -> bytes:
    F = pub.field
    body = pack(F, pub.matrix)
    if pub.params.variant == SELECTED:
        body += pack(F, pub.constraint)
    return body


def serialize_public(pub: PublicKey) -> bytes:
    return _header(pub.params) + _public_body(pub)


def serialize_private(priv: PrivateKey) -> bytes:
    F, qp = priv.field, priv.qparts
    parts = [priv.code.support, priv.code.multipliers, priv.S, qp.b,
             qp.a if priv.params.variant == HIDDEN else qp.a2, qp.T]
    return serialize_public(priv.public) + b"".join(pack(F, x) for x in parts)


def _read_public(data: bytes):
    params, pos = _parse_header(data)
    F = params.field
    rd = _Reader(data, pos, F)
    if params.version == NIEDERREITER:
        mat = rd.take(params.r, params.k)
    else:
        mat = rd.take(params.k, params.r)
    constraint = rd.take(params.z, params.n) if params.variant == SELECTED else None
    return PublicKey(params, mat, constraint), rd


def parse_public(data: bytes) -> PublicKey:
    return _read_public(data)[0]


def parse_private(data: bytes) -> PrivateKey:
    pub, rd = _read_public(data)
    p = pub.params
    F = p.field
    size = p.r if p.version == NIEDERREITER else p.k
    support = rd.take(p.n)
    mults = rd.take(p.n)
    S = rd.take(size, size)
    b = rd.take(p.z, p.n)
    other = rd.take(p.z, p.n)
    T = rd.take(p.n, p.n)
    if rd.remaining:
        raise FormatError(f"{rd.remaining} trailing bytes")
    if p.variant == HIDDEN:
        a, a2 = other, None
    else:
        a, a2 = pub.constraint, other
    try:
        code = GrsCode(F, p.n, p.k, support, mults)
        qparts = make_qparts(F, p.variant, a, b, a2, T, p.m)
        priv = derive_keys(p, code, S, qparts)
    except (ValueError, mx.SingularMatrixError) as exc:
        raise FormatError(f"inconsistent private key: {exc}") from exc
    if not np.array_equal(priv.public.matrix, pub.matrix):
        raise FormatError("public part does not match the secret components")
    return priv


def serialize_ciphertext(F: Field, ct) -> bytes:
    ct = np.asarray(ct, dtype=np.int64)
    return _CT_HEADER.pack(CT_MAGIC, FORMAT_VERSION, len(ct)) + pack(F, ct)


def parse_ciphertext(F: Field, data: bytes, expected_len: int = None) -> np.ndarray:
    if len(data) < _CT_HEADER.size:
        raise FormatError("file too short for a ciphertext header")
    magic, ver, length = _CT_HEADER.unpack_from(data)
    if magic != CT_MAGIC:
        raise FormatError("bad ciphertext magic")
    if ver != FORMAT_VERSION:
        raise FormatError(f"unsupported ciphertext format version {ver}")
    if expected_len is not None and length != expected_len:
        raise FormatError(f"ciphertext length {length}, key expects {expected_len}")
    rd = _Reader(data, _CT_HEADER.size, F)
    ct = rd.take(length)
    if rd.remaining:
        raise FormatError(f"{rd.remaining} trailing bytes")
    return ct
