import math
import random

import pytest

from fewvalues.matgf import (
    block_diag,
    classify_sl_value,
    companion,
    conjugacy_class_reps,
    elementary,
    enumerate_gl,
    enumerate_sl,
    exponent_multiple_sl,
    field_for,
    gl_order,
    jordan_block,
    mat_det,
    mat_from_str,
    mat_identity,
    mat_inv,
    mat_is_zero,
    mat_mul,
    mat_pow,
    mat_rank,
    mat_sub,
    mat_to_str,
    primitive_poly,
    random_sl,
    singer_torus_element,
    sl_order,
    vec_mat,
)

FIELDS = [2, 3, 4, 5, 7, 8, 9, 16]


@pytest.mark.parametrize("q", FIELDS)
def test_field_axioms(q):
    F = field_for(q)
    rng = random.Random(q)
    elems = list(range(q))
    for _ in range(300):
        a, b, c = (rng.choice(elems) for _ in range(3))
        assert F.add[a][b] == F.add[b][a]
        assert F.mul[a][b] == F.mul[b][a]
        assert F.add[F.add[a][b]][c] == F.add[a][F.add[b][c]]
        assert F.mul[F.mul[a][b]][c] == F.mul[a][F.mul[b][c]]
        assert F.mul[a][F.add[b][c]] == F.add[F.mul[a][b]][F.mul[a][c]]
    for a in range(1, q):
        assert F.mul[a][F.inv[a]] == 1
        assert F.add[a][F.neg[a]] == 0
    # Frobenius is additive
    for a in range(q):
        for b in range(q):
            fa = _fpow(F, a, F.p)
            fb = _fpow(F, b, F.p)
            assert _fpow(F, F.add[a][b], F.p) == F.add[fa][fb]


def _fpow(F, a, e):
    out = 1
    for _ in range(e):
        out = F.mul[out][a]
    return out


def test_nonzero_elements_cyclic():
    for q in FIELDS:
        F = field_for(q)
        orders = set()
        for a in range(1, q):
            o, x = 1, a
            while x != 1:
                x = F.mul[x][a]
                o += 1
            orders.add(o)
        assert max(orders) == q - 1


def test_mat_pow_examples():
    F = field_for(2)
    m = jordan_block(4, F)
    assert mat_pow(m, 0, F) == mat_identity(4)
    sq = mat_pow(m, 2, F)
    assert classify_sl_value(sq, F).kind == "double_transvection"
    assert mat_pow(sq, 2, F) == mat_identity(4)
    # Singer element of GL_3(2) has order dividing 7
    C = companion(primitive_poly(3, 2), F)
    assert mat_pow(C, 7, F) == mat_identity(3)
    assert mat_pow(C, 1, F) != mat_identity(3)


def test_classify_examples():
    F2 = field_for(2)
    assert classify_sl_value(elementary(3, 1, 2, 1, F2), F2).kind == "transvection"
    assert classify_sl_value(mat_identity(3), F2).kind == "identity"
    dd = block_diag(F2, jordan_block(2, F2), jordan_block(2, F2))
    assert classify_sl_value(dd, F2).kind == "double_transvection"
    F3 = field_for(3)
    assert classify_sl_value(jordan_block(3, F3), F3).kind == "other"


def test_transvections_have_order_p():
    for q in (2, 3, 4, 5, 9):
        F = field_for(q)
        t = elementary(3, 1, 3, 1, F)
        assert classify_sl_value(t, F).kind == "transvection"
        assert mat_pow(t, F.p, F) == mat_identity(3)


def test_singer_torus_element():
    m = singer_torus_element(5, 2)
    F = field_for(2)
    assert mat_det(m, F) == 1
    # order 7, divisible by the Zsigmondy prime power of 2^3 - 1
    assert mat_pow(m, 7, F) == mat_identity(5)
    assert all(mat_pow(m, k, F) != mat_identity(5) for k in range(1, 7))
    assert mat_pow(m, 2**3 - 1, F) == mat_identity(5)
    # top-left block untouched
    assert m[0][:2] == (1, 0) and m[1][:2] == (0, 1)


def test_singer_torus_det_one_various():
    for n, q in [(5, 2), (5, 3), (5, 4), (6, 2), (7, 2)]:
        F = field_for(q)
        m = singer_torus_element(n, q)
        assert mat_det(m, F) == 1
        assert mat_pow(m, q ** (n - 2) - 1, F) == mat_identity(n)


def test_exponent_multiple_examples():
    assert int(exponent_multiple_sl(2, 2).E) == 6
    e25 = exponent_multiple_sl(2, 5).E
    assert int(e25) == 120
    assert int(e25.without_prime(5)) == 24  # the q^2 - 1 part
    assert int(exponent_multiple_sl(5, 2).E) == 26040


def test_exponent_multiple_sl22_exact():
    # SL_2(2) has 6 elements; its exponent is exactly 6
    F = field_for(2)
    lcm = 1
    for m in enumerate_sl(2, 2):
        o, x = 1, m
        while x != mat_identity(2):
            x = mat_mul(x, m, F)
            o += 1
        lcm = math.lcm(lcm, o)
    assert lcm == 6


@pytest.mark.parametrize(
    "n,q,expected",
    [(2, 2, 6), (2, 3, 24), (2, 5, 120), (3, 2, 168), (3, 3, 5616), (4, 2, 20160)],
)
def test_enumerate_sl_counts(n, q, expected):
    assert sl_order(n, q) == expected
    elems = list(enumerate_sl(n, q))
    assert len(elems) == expected
    assert len(set(elems)) == expected
    F = field_for(q)
    assert all(mat_det(m, F) == 1 for m in (elems[:50] + elems[-50:]))


def test_enumerate_gl_counts():
    assert len(list(enumerate_gl(2, 3))) == gl_order(2, 3) == 48
    assert len(list(enumerate_gl(2, 5))) == gl_order(2, 5) == 480


def test_enumerate_cap():
    with pytest.raises(ValueError):
        next(enumerate_sl(5, 3))


def test_random_sl():
    rng = random.Random(0)
    F = field_for(2)
    seq = [random_sl(2, 2, rng) for _ in range(10**5)]
    assert all(mat_det(m, F) == 1 for m in seq[:200])
    count = sum(1 for m in seq if m == mat_identity(2))
    expect = len(seq) / 6
    sigma = math.sqrt(len(seq) * (1 / 6) * (5 / 6))
    assert abs(count - expect) < 5 * sigma
    rng2 = random.Random(0)
    assert [random_sl(2, 2, rng2) for _ in range(20)] == seq[:20]


@pytest.mark.parametrize("n,q", [(2, 5), (3, 3), (4, 2), (5, 2), (4, 4)])
def test_exponent_multiple_kills_samples(n, q):
    E = exponent_multiple_sl(n, q).E
    F = field_for(q)
    rng = random.Random(n * 100 + q)
    for _ in range(300):
        g = random_sl(n, q, rng)
        assert mat_pow(g, E, F) == mat_identity(n)


def test_mat_inverse_and_rank():
    F = field_for(4)
    rng = random.Random(4)
    for _ in range(100):
        m = random_sl(3, 4, rng)
        assert mat_mul(m, mat_inv(m, F), F) == mat_identity(3)
        assert mat_rank(m, F) == 3
    low = ((1, 2, 3), (0, 1, 1), (1, 3, 2))  # row3 = row1 + row2
    assert mat_rank(low, F) == 2
    scaled = ((1, 2, 3), (2, 3, 1), (3, 1, 2))  # rows are x- and (x+1)-multiples of row1
    assert mat_rank(scaled, F) == 1


def test_commutator_of_elementaries():
    # [E_{1,2}(1), E_{2,3}(1)] = E_{1,3}(1) in SL_3(2)
    from fewvalues.words import evaluate, parse_word
    from fewvalues.matgf import sl_context

    ctx = sl_context(3, 2)
    F = field_for(2)
    b = elementary(3, 1, 2, 1, F)
    bp = elementary(3, 2, 3, 1, F)
    val = evaluate(parse_word("[x1,x2]"), (b, bp), ctx)
    assert val == elementary(3, 1, 3, 1, F)


def test_vec_mat_right_action():
    F = field_for(2)
    b = elementary(3, 1, 2, 1, F)
    e1 = (1, 0, 0)
    assert vec_mat(e1, b, F) == (1, 1, 0)  # e1 -> e1 + e2
    assert vec_mat((0, 1, 0), b, F) == (0, 1, 0)


def test_conjugacy_class_reps_sl23():
    reps = conjugacy_class_reps(2, 3)
    assert sum(size for _, size in reps) == sl_order(2, 3) == 24
    assert len(reps) == 7  # SL_2(3) has 7 conjugacy classes


def test_matrix_serialization():
    F = field_for(4)
    m = elementary(2, 1, 2, 3, F)
    s = mat_to_str(m)
    assert s == "1,3;0,1"
    assert mat_from_str(s, 4) == m
    with pytest.raises(ValueError):
        mat_from_str("9,0;0,1", 4)


def test_mat_sub_iszero():
    F = field_for(3)
    m = mat_identity(3)
    assert mat_is_zero(mat_sub(m, m, F))


def test_all_classified_transvections_have_order_p():
    for n, q in [(2, 5), (3, 2), (3, 3)]:
        F = field_for(q)
        count = 0
        for m in enumerate_sl(n, q):
            if classify_sl_value(m, F).kind == "transvection":
                assert mat_pow(m, F.p, F) == mat_identity(n)
                count += 1
        assert count > 0
