import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from grsq import GF, FieldError, FieldSpec, field_make
from grsq.gf import BINARY, PRIME, is_irreducible_gf2

SMALL = [2, 3, 5, 7, 13, 4, 8, 16, 32, 61, 64]


def clmul_reduce(a, b, poly):
    """Schoolbook polynomial product over F_2 followed by long division."""
    prod = 0
    for i in range(b.bit_length()):
        if b >> i & 1:
            prod ^= a << i
    d = poly.bit_length() - 1
    for shift in range(prod.bit_length() - 1 - d, -1, -1):
        if prod >> (shift + d) & 1:
            prod ^= poly << shift
    return prod


def test_prime_field_basics(F307):
    assert F307.q == 307
    assert F307.add(300, 10) == 3
    assert F307.inv(2) == 154 == pow(2, -1, 307)


def test_f512_reduction(F512):
    assert F512.modulus_poly == 0b1000010001
    assert F512.mul(0b10, 1 << 8) == 0b000010001


def test_rejects_bad_specs():
    with pytest.raises(FieldError):
        field_make(FieldSpec(4, PRIME))
    with pytest.raises(FieldError):
        GF(6)
    with pytest.raises(FieldError):
        field_make(FieldSpec(16, BINARY, 0b10101))  # (x^2+x+1)^2
    with pytest.raises(FieldError):
        GF(2_147_483_647)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        GF(13).inv(0)


def test_irreducibility_checker():
    assert is_irreducible_gf2(0b111)
    assert not is_irreducible_gf2(0b101)
    assert is_irreducible_gf2(0b1000010001)


@pytest.mark.parametrize("q", SMALL)
def test_axioms_exhaustive(q):
    F = GF(q)
    els = list(F.elements())
    for a, b in itertools.product(els, els):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
        if b:
            assert F.mul(F.div(a, b), b) == a
    for a, b, c in itertools.product(els[:8], els[:8], els):
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    for a in F.nonzero():
        assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("q", [4, 8, 16, 32, 64, 512])
def test_binary_mul_matches_schoolbook(q):
    F = GF(q)
    rng = np.random.default_rng(q)
    for a, b in rng.integers(0, q, size=(500, 2)).tolist():
        assert F.mul(a, b) == clmul_reduce(a, b, F.modulus_poly)


@pytest.mark.parametrize("q", [16, 64, 512])
def test_frobenius(q):
    F = GF(q)
    for a, b in itertools.product(range(0, q, 7), range(1, q, 5)):
        s = F.add(a, b)
        assert F.mul(s, s) == F.add(F.mul(a, a), F.mul(b, b))


@given(st.integers(0, 306), st.integers(-400, 400))
@settings(max_examples=200)
def test_pow_matches_builtin(a, e):
    F = GF(307)
    if a == 0 and e < 0:
        return
    assert F.pow(a, e) == pow(a, e, 307)


@pytest.mark.parametrize("q", [13, 307, 16, 512])
def test_vector_ops_match_scalar(q):
    F = GF(q)
    rng = np.random.default_rng(1)
    a = F.random(rng, 300)
    b = F.random(rng, 300, nonzero=True)
    assert F.vmul(a, b).tolist() == [F.mul(x, y) for x, y in zip(a.tolist(), b.tolist())]
    assert F.vadd(a, b).tolist() == [F.add(x, y) for x, y in zip(a.tolist(), b.tolist())]
    assert F.vsub(a, b).tolist() == [F.sub(x, y) for x, y in zip(a.tolist(), b.tolist())]
    assert F.vinv(b).tolist() == [F.inv(x) for x in b.tolist()]
    assert F.vpow(a, 5).tolist() == [F.pow(x, 5) for x in a.tolist()]
    c = int(b[0])
    assert F.axpy_list(a.tolist(), c, b.tolist()) == [F.sub(x, F.mul(c, y)) for x, y in zip(a.tolist(), b.tolist())]


def test_large_field_mul_against_oracle():
    F = GF(512)
    rng = np.random.default_rng(7)
    a = F.random(rng, 2000)
    b = F.random(rng, 2000)
    expect = [clmul_reduce(x, y, F.modulus_poly) for x, y in zip(a.tolist(), b.tolist())]
    assert F.vmul(a, b).tolist() == expect
