import math
from fractions import Fraction

import numpy as np
import pytest

from grsq import GF
from grsq import matrix as mx
from grsq.qtransform import (HIDDEN, SELECTED, QBuildError, build_Q, build_R, build_T,
                             default_m, make_qparts, random_qparts, validate_q)


def test_rank_one_hidden_part():
    F = GF(307)
    a = np.array([[3, 1, 4, 1, 5]])
    b = np.array([[2, 7, 1, 8, 2]])
    R = build_R(F, HIDDEN, a, b)
    assert mx.rank(F, R) == 1
    assert R[1, 2] == 1 and R[4, 1] == 35


def test_zero_row_gives_zero_part():
    F = GF(13)
    assert not build_R(F, HIDDEN, np.zeros((1, 4), dtype=np.int64), np.array([[1, 2, 3, 4]])).any()


def test_selected_part_matches_two_term_oracle():
    F = GF(5)
    a, b, a2 = [2, 0, 4, 1], [1, 3, 3, 2], [4, 1, 0, 3]
    R = build_R(F, SELECTED, np.array([a]), np.array([b]), np.array([a2]))
    expect = [[(a[i] * b[j] + a2[i]) % 5 for j in range(4)] for i in range(4)]
    assert R.tolist() == expect


def test_unknown_variant():
    with pytest.raises(ValueError):
        build_R(GF(5), "other", np.ones((1, 3)), np.ones((1, 3)))


@pytest.mark.parametrize("m", [0.5, 10, Fraction(11)])
def test_build_t_rejects_out_of_range_weight(m):
    with pytest.raises(ValueError):
        build_T(10, m, GF(13), np.random.default_rng(0))


def test_unit_weight_gives_monomial():
    F = GF(13)
    T = build_T(20, 1, F, np.random.default_rng(1))
    assert (np.count_nonzero(T, axis=0) == 1).all()
    assert (np.count_nonzero(T, axis=1) == 1).all()


def test_forty_percent_heavy_rows():
    T = build_T(10, Fraction(7, 5), GF(13), np.random.default_rng(2))
    rows = np.count_nonzero(T, axis=1)
    cols = np.count_nonzero(T, axis=0)
    assert sorted(rows.tolist()) == [1] * 6 + [2] * 4
    assert sorted(cols.tolist()) == [1] * 6 + [2] * 4


def test_threshold_weight_at_paper_scale():
    F = GF(307)
    m = default_m(306, 232)
    assert m == 1 + Fraction(71, 306)
    T = build_T(306, m, F, np.random.default_rng(3))
    assert np.count_nonzero(T) == 306 + 71
    assert mx.rank(F, T) == 306


@pytest.mark.parametrize("n, m", [(30, Fraction(7, 5)), (25, Fraction(13, 5)), (12, Fraction(5, 4)),
                                  (40, Fraction(2)), (17, Fraction(3, 2))])
def test_weight_histogram_over_seeded_builds(n, m):
    F = GF(31)
    rng = np.random.default_rng(n)
    lo, hi = math.floor(m), math.ceil(m)
    heavy = round(n * m) - lo * n
    for _ in range(100):
        T = build_T(n, m, F, rng)
        for w in (np.count_nonzero(T, axis=1), np.count_nonzero(T, axis=0)):
            assert set(w.tolist()) <= {lo, hi}
            assert int((w == hi).sum()) == (heavy if hi > lo else n)
        assert mx.rank(F, T) == n


def test_identity_transform():
    F = GF(13)
    Q, Qinv, Tinv = build_Q(F, np.zeros((5, 5), dtype=np.int64), mx.identity(5))
    assert np.array_equal(Q, mx.identity(5))
    assert np.array_equal(Qinv, mx.identity(5))


def test_inverse_at_paper_scale():
    F = GF(307)
    qp = random_qparts(F, 306, 1, default_m(306, 232), HIDDEN, np.random.default_rng(4))
    assert np.array_equal(mx.matmul(F, qp.Q, qp.Qinv), mx.identity(306))
    assert np.array_equal(mx.matmul(F, qp.T, qp.Tinv), mx.identity(306))
    assert mx.rank(F, qp.a) == 1
    assert qp.m_actual == Fraction(377, 306)


def test_error_distributes_over_both_parts():
    F = GF(61)
    rng = np.random.default_rng(5)
    qp = random_qparts(F, 40, 2, Fraction(3, 2), SELECTED, rng)
    e = F.random(rng, 40)
    lhs = mx.mat_vec(F, qp.Q, e, side="left")
    rhs = F.vadd(mx.mat_vec(F, qp.R, e, side="left"), mx.mat_vec(F, qp.T, e, side="left"))
    assert np.array_equal(lhs, rhs)


def test_budget_exhaustion():
    with pytest.raises(QBuildError):
        random_qparts(GF(13), 8, 1, 1, HIDDEN, np.random.default_rng(0), budget=0)


def _permutation_T(n, rng):
    T = np.zeros((n, n), dtype=np.int64)
    T[np.arange(n), rng.permutation(n)] = 1
    return T


def test_binary_all_ones_plus_permutation_is_flagged():
    F = GF(2)
    ones = np.ones((1, 6), dtype=np.int64)
    qp = make_qparts(F, HIDDEN, ones, ones, None, _permutation_T(6, np.random.default_rng(6)), 1)
    assert "all-ones-plus-permutation" in {f.kind for f in validate_q(qp)}


def test_zero_in_b_leaks_a_column():
    F = GF(307)
    rng = np.random.default_rng(7)
    while True:
        a = F.random(rng, (1, 8), nonzero=True)
        b = F.random(rng, (1, 8), nonzero=True)
        b[0, 3] = 0
        T = np.zeros((8, 8), dtype=np.int64)
        perm = rng.permutation(8)
        T[np.arange(8), perm] = F.random(rng, 8, nonzero=True)
        try:
            qp = make_qparts(F, HIDDEN, a, b, None, T, 1)
            break
        except mx.SingularMatrixError:
            continue
    findings = validate_q(qp)
    assert [f.kind for f in findings if f.kind == "weight-1-column"] == ["weight-1-column"]
    assert "column 3" in str(findings[0])


@pytest.mark.parametrize("variant", [HIDDEN, SELECTED])
def test_random_paper_scale_parts_are_clean(variant):
    F = GF(307)
    rng = np.random.default_rng(8)
    for _ in range(3):
        qp = random_qparts(F, 306, 1, default_m(306, 232), variant, rng)
        assert validate_q(qp) == []


def test_error_weight_bound_after_sparse_part():
    F = GF(307)
    rng = np.random.default_rng(9)
    m = default_m(306, 232)
    T = build_T(306, m, F, rng)
    t_pub = 30
    for _ in range(200):
        e = np.zeros(306, dtype=np.int64)
        e[rng.choice(306, t_pub, replace=False)] = F.random(rng, t_pub, nonzero=True)
        assert mx.weight(mx.mat_vec(F, T, e, side="left")) <= math.ceil(m) * t_pub


def test_hidden_contribution_is_scaled_b():
    F = GF(307)
    rng = np.random.default_rng(10)
    qp = random_qparts(F, 50, 1, Fraction(6, 5), HIDDEN, rng)
    for _ in range(50):
        e = F.random(rng, 50)
        gamma = int(mx.mat_vec(F, qp.a, e)[0])
        assert np.array_equal(mx.mat_vec(F, qp.R, e, side="left"), F.vmul(qp.b[0], gamma))


def test_selected_contribution_is_constant_under_constraint():
    F = GF(61)
    rng = np.random.default_rng(11)
    qp = random_qparts(F, 30, 2, Fraction(4, 3), SELECTED, rng)
    kernel = mx.nullspace(F, qp.a)
    for _ in range(50):
        e = mx.mat_vec(F, kernel, F.random(rng, kernel.shape[0]), side="left")
        assert not mx.mat_vec(F, qp.a, e).any()
        alpha = int(F.vsum(mx.mat_vec(F, qp.a2, e)))
        assert mx.mat_vec(F, qp.R, e, side="left").tolist() == [alpha] * 30
