import math
import random

import pytest

from fewvalues.perms import (
    CycleType,
    Permutation,
    alt_class_reps,
    classify_alt_value,
    exponent_alt,
    exponent_sym,
    iter_alt_tuples,
    partitions,
    perm_conj,
    perm_is_even,
    random_even_perm,
    sym_class_reps,
)


def test_right_action_composition():
    rng = random.Random(0)
    for _ in range(200):
        s = random_even_perm(7, rng)
        t = random_even_perm(7, rng)
        st = s * t
        for point in range(1, 8):
            assert st.apply(point) == t.apply(s.apply(point))


def test_order_and_pow():
    s = Permutation.from_cycles(7, [(1, 2, 3), (4, 5)])
    assert s.order() == 6
    assert (s**6) == Permutation.identity(7)
    for p in (2, 3):
        assert (s ** (6 // p)) != Permutation.identity(7)
    assert Permutation.from_cycles(5, [(1, 2, 3)]) ** 10 == Permutation.from_cycles(5, [(1, 2, 3)])
    assert s**0 == Permutation.identity(7)


def test_pow_extracts_prime_cycles():
    # 7-cycle times 5-cycle on 12 points: the M/7-part power is a 7-cycle
    sigma = Permutation.from_cycles(12, [tuple(range(1, 8)), tuple(range(8, 13))])
    M = exponent_alt(12).M
    m7 = int(M.without_prime(7))
    power = sigma**m7
    assert classify_alt_value(power) == ("p_cycle", 7)
    assert power.support() <= set(range(1, 8))


def test_cycle_type_and_parity():
    assert Permutation.identity(7).cycle_type() == CycleType((), 7, True)
    t = Permutation.from_cycles(7, [(1, 2, 3), (4, 5)]).cycle_type()
    assert t == CycleType((3, 2), 2, False)
    t2 = Permutation.from_cycles(7, [(1, 2, 3, 4), (5, 6)]).cycle_type()
    assert t2 == CycleType((4, 2), 1, True)


def test_classify_values():
    assert classify_alt_value(Permutation.from_cycles(7, [(2, 5, 7)])).kind == "three_cycle"
    assert classify_alt_value(Permutation.identity(7)).kind == "identity"
    assert classify_alt_value(Permutation.from_cycles(7, [(1, 2), (3, 4)])).kind == "other"
    assert classify_alt_value(Permutation.from_cycles(9, [(1, 2, 3, 4, 5)])) == ("p_cycle", 5)
    assert classify_alt_value(Permutation.from_cycles(9, [tuple(range(1, 10))])).kind == "other"


def test_alt_class_reps_small():
    reps4 = alt_class_reps(4)
    assert len(reps4) == 4
    assert sorted(size for _, size in reps4) == [1, 3, 4, 4]
    reps5 = alt_class_reps(5)
    five_cycle_sizes = [size for rep, size in reps5 if rep.cycle_type().lengths == (5,)]
    assert five_cycle_sizes == [12, 12]
    reps7 = alt_class_reps(7)
    assert len(reps7) == 9
    assert sum(size for _, size in reps7) == math.factorial(7) // 2


@pytest.mark.parametrize("n", range(2, 15))
def test_class_sizes_sum(n):
    assert sum(size for _, size in alt_class_reps(n)) == math.factorial(n) // 2
    assert sum(size for _, size in sym_class_reps(n)) == math.factorial(n)


def test_class_reps_even_and_distinct():
    for n in range(3, 9):
        reps = alt_class_reps(n)
        assert all(rep.is_even() for rep, _ in reps)
        assert len({rep.images for rep, _ in reps}) == len(reps)


def brute_classes(n):
    """Partition Alt(n) into conjugacy classes by direct orbit computation."""
    elems = [Permutation(t) for t in iter_alt_tuples(n)]
    group = [g.images for g in elems]
    remaining = {g.images for g in elems}
    classes = []
    while remaining:
        seed = next(iter(remaining))
        orbit = {perm_conj(seed, g) for g in group}
        remaining -= orbit
        classes.append(orbit)
    return classes


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_class_reps_against_bruteforce(n):
    classes = brute_classes(n)
    reps = alt_class_reps(n)
    assert len(reps) == len(classes)
    for rep, size in reps:
        orbit = next(c for c in classes if rep.images in c)
        assert len(orbit) == size
    # no two representatives conjugate
    for i, (r1, _) in enumerate(reps):
        for r2, _ in reps[i + 1 :]:
            c1 = next(c for c in classes if r1.images in c)
            assert r2.images not in c1


def brute_exponent_alt(n):
    lcm = 1
    for parts in partitions(n):
        if sum(l - 1 for l in parts) % 2 == 0:
            lcm = math.lcm(lcm, *parts)
    return lcm


def test_exponent_alt_examples():
    assert int(exponent_alt(7).M) == 420
    assert int(exponent_alt(5).M) == 30
    M13 = exponent_alt(13).M
    assert int(M13.without_prime(5)) == int(M13) // 5
    assert int(M13.without_prime(7)) == int(M13) // 7
    assert int(M13) == 360360


@pytest.mark.parametrize("n", range(2, 11))
def test_exponent_alt_oracle(n):
    assert int(exponent_alt(n).M) == brute_exponent_alt(n)


def test_exponent_alt_full_enumeration_oracle():
    # lcm of the orders of all 2520 elements of Alt(7)
    lcm = 1
    for t in iter_alt_tuples(7):
        lcm = math.lcm(lcm, Permutation(t).order())
    assert lcm == int(exponent_alt(7).M) == 420


@pytest.mark.parametrize("n", range(2, 11))
def test_exponent_sym_oracle(n):
    lcm = 1
    for parts in partitions(n):
        lcm = math.lcm(lcm, *parts)
    assert int(exponent_sym(n).M) == lcm


def test_exponent_sym_vs_alt_differ_at_two_powers():
    # they agree except when n is 2^a or 2^a + 1, where Sym gains a factor 2
    for n in range(4, 20):
        ratio = int(exponent_sym(n).M) // int(exponent_alt(n).M)
        assert ratio == (2 if n in (4, 5, 8, 9, 16, 17) else 1)


def test_random_even_perm():
    rng = random.Random(42)
    seq = [random_even_perm(5, rng) for _ in range(10**5)]
    assert all(p.is_even() for p in seq[:1000])
    # identity frequency within 5 sigma of 1/60
    count = sum(1 for p in seq if p == Permutation.identity(5))
    expect = len(seq) / 60
    sigma = math.sqrt(len(seq) * (1 / 60) * (59 / 60))
    assert abs(count - expect) < 5 * sigma
    # determinism
    rng2 = random.Random(42)
    assert [random_even_perm(5, rng2) for _ in range(50)] == seq[:50]


def test_cycle_notation():
    assert str(Permutation.identity(5)) == "()"
    assert str(Permutation.from_cycles(5, [(1, 2, 3), (4, 5)])) == "(1 2 3)(4 5)"


def test_parity_helper():
    assert perm_is_even(Permutation.from_cycles(8, [tuple(range(1, 9))]).images) is False
    assert perm_is_even(Permutation.from_cycles(9, [tuple(range(1, 10))]).images) is True
