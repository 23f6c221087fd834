import itertools

import numpy as np
import pytest

from grsq import GF, DecodeFailure, GrsCode, grs_from_generator, grs_make, random_grs
from grsq import matrix as mx

from oracles import all_codewords, nearest_codeword, parity_check


@pytest.fixture(scope="module")
def toy5():
    return grs_make(GF(5), 4, 2, [1, 2, 3, 4], [1, 1, 1, 1])


def test_correction_capability():
    assert grs_make(GF(5), 4, 2, [1, 2, 3, 4], [1] * 4).t == 1
    F = GF(307)
    rng = np.random.default_rng(0)
    assert random_grs(F, 306, 232, rng).t == 37
    assert random_grs(GF(512), 511, 387, rng).t == 62


def test_parity_check_convention(toy5):
    assert np.array_equal(toy5.H, parity_check(5, [1, 2, 3, 4], [1] * 4, 2))


@pytest.mark.parametrize("support, mults, k", [
    ([1, 1, 2, 3], [1, 1, 1, 1], 2),
    ([1, 2, 3, 4], [1, 0, 1, 1], 2),
    ([1, 2, 3, 4], [1, 1, 1, 1], 4),
    ([1, 2, 3], [1, 1, 1, 1], 2),
])
def test_rejects_bad_construction(support, mults, k):
    with pytest.raises(ValueError):
        GrsCode(GF(5), 4, k, support, mults)


def test_encode_zero_and_dimension_errors(toy5):
    assert not toy5.encode([0, 0]).any()
    assert not toy5.syndrome(np.zeros(4, dtype=np.int64)).any()
    with pytest.raises(mx.DimensionError):
        toy5.encode([1, 2, 3])
    with pytest.raises(mx.DimensionError):
        toy5.syndrome([1, 2])


def test_all_codewords_have_zero_syndrome(toy5):
    brute = all_codewords(5, toy5.H)
    assert len(brute) == 25
    encoded = {tuple(toy5.encode(u).tolist()) for u in itertools.product(range(5), repeat=2)}
    assert encoded == {tuple(c) for c in brute.tolist()}


def test_single_error_syndrome():
    F = GF(13)
    rng = np.random.default_rng(3)
    code = random_grs(F, 12, 6, rng)
    c = code.encode(F.random(rng, 6))
    for i in range(12):
        y = c.copy()
        y[i] = F.add(int(y[i]), 5)
        alpha, v = int(code.support[i]), int(code.multipliers[i])
        expect = [5 * v * pow(alpha, j, 13) % 13 for j in range(6)]
        assert code.syndrome(y).tolist() == expect


def test_syndrome_is_linear():
    F = GF(307)
    rng = np.random.default_rng(4)
    code = random_grs(F, 40, 20, rng)
    x, y = F.random(rng, 40), F.random(rng, 40)
    assert np.array_equal(code.syndrome(F.vadd(x, y)), F.vadd(code.syndrome(x), code.syndrome(y)))


@pytest.mark.parametrize("q, n, k", [(5, 4, 2), (7, 6, 3), (5, 5, 2), (13, 6, 3)])
def test_minimum_distance_is_mds(q, n, k):
    F = GF(q)
    code = random_grs(F, n, k, np.random.default_rng(q + n))
    words = all_codewords(q, code.H)
    assert len(words) == q ** k
    weights = np.count_nonzero(words, axis=1)
    assert weights[weights > 0].min() == n - k + 1


@pytest.mark.parametrize("q, n, k", [(13, 12, 6), (307, 306, 232), (512, 511, 387), (16, 15, 4)])
def test_parity_check_has_full_rank(q, n, k):
    code = random_grs(GF(q), n, k, np.random.default_rng(1))
    assert mx.rank(code.field, code.H) == n - k
    assert not mx.matmul(code.field, code.G, code.H.T).any()


def test_decode_zero_syndrome(toy5):
    assert not toy5.decode_syndrome(np.zeros(2, dtype=np.int64)).any()


def test_decode_toy_example_matches_brute_force(toy5):
    e = np.array([0, 3, 0, 0])
    assert toy5.decode_syndrome(toy5.syndrome(e)).tolist() == [0, 3, 0, 0]
    words = all_codewords(5, toy5.H)
    for y in itertools.product(range(5), repeat=4):
        best = nearest_codeword(5, words, y)
        dist = None if best is None else np.count_nonzero((np.array(y) - best) % 5)
        if best is not None and dist <= toy5.t:
            assert toy5.decode(np.array(y)).tolist() == best.tolist()


@pytest.mark.parametrize("q, n, k", [(13, 12, 6), (307, 306, 232), (512, 511, 387), (64, 40, 11)])
def test_decode_recovers_every_correctable_error(q, n, k):
    F = GF(q)
    rng = np.random.default_rng(n)
    code = random_grs(F, n, k, rng)
    for _ in range(1000):
        w = int(rng.integers(0, code.t + 1))
        e = np.zeros(n, dtype=np.int64)
        e[rng.choice(n, w, replace=False)] = F.random(rng, w, nonzero=True)
        assert np.array_equal(code.decode_syndrome(code.syndrome(e)), e)


def test_support_containing_zero():
    F = GF(13)
    support = list(range(12))
    code = grs_make(F, 12, 6, support, [1 + i % 12 for i in range(12)])
    rng = np.random.default_rng(8)
    for _ in range(300):
        e = np.zeros(12, dtype=np.int64)
        pos = rng.choice(12, 3, replace=False)
        pos[0] = 0
        e[pos] = F.random(rng, 3, nonzero=True)
        assert np.array_equal(code.decode_syndrome(code.syndrome(e)), e)


def test_beyond_capacity_is_rejected_or_detected():
    F = GF(13)
    rng = np.random.default_rng(9)
    code = random_grs(F, 12, 6, rng)
    for _ in range(500):
        e = np.zeros(12, dtype=np.int64)
        e[rng.choice(12, code.t + 1, replace=False)] = F.random(rng, code.t + 1, nonzero=True)
        try:
            got = code.decode_syndrome(code.syndrome(e))
        except DecodeFailure:
            continue
        assert mx.weight(got) <= code.t
        assert not np.array_equal(got, e)


def test_all_one_codeword_detection():
    F = GF(13)
    full = grs_from_generator(F, 12, 6, list(range(1, 13)), [1] * 12)
    assert full.has_all_one_codeword()
    assert not mx.mat_vec(F, full.H, np.ones(12, dtype=np.int64)).any()

    shortened = grs_make(F, 11, 6, list(range(1, 12)), [2, 5, 7, 1, 3, 9, 4, 11, 6, 8, 10])
    assert mx.mat_vec(F, shortened.H, np.ones(11, dtype=np.int64)).any()
    assert not shortened.has_all_one_codeword()

    # k = 0: the code is {0}, so the all-one word is never a codeword
    assert not grs_make(F, 4, 0, [1, 2, 3, 4], [1] * 4).has_all_one_codeword()


def test_random_grs_is_seed_deterministic():
    F = GF(307)
    a = random_grs(F, 306, 232, np.random.default_rng(5))
    b = random_grs(F, 306, 232, np.random.default_rng(5))
    assert np.array_equal(a.support, b.support)
    assert np.array_equal(a.multipliers, b.multipliers)
