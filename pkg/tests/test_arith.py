import math
import random

import pytest

from fewvalues.arith import (
    FactoredInt,
    factorize,
    lcm_factored,
    primes_in_interval,
    primes_up_to,
    zsigmondy_prime_power,
)


def trial_division_primes(limit):
    out = []
    for n in range(2, limit + 1):
        if all(n % d for d in range(2, math.isqrt(n) + 1)):
            out.append(n)
    return out


def test_primes_in_interval_examples():
    assert primes_in_interval(4, 5) == [5]
    assert primes_in_interval(10, 17) == [11, 13, 17]
    # interval (3m, 4m] for m = 9 is nonempty
    assert primes_in_interval(27, 36) == [29, 31]


def test_primes_agree_with_trial_division():
    limit = 10**5
    assert primes_up_to(limit) == trial_division_primes(limit)


def test_interval_bounds_checked():
    with pytest.raises(ValueError):
        primes_in_interval(5, 2)
    with pytest.raises(ValueError):
        primes_in_interval(0, 10**7 + 1)


def test_factorize_roundtrip_random():
    rng = random.Random(0)
    for _ in range(10**4):
        n = rng.randrange(1, 10**12)
        f = factorize(n)
        assert math.prod(p**e for p, e in f.items()) == n
        assert all(e >= 1 for e in f.values())


def test_factored_int_roundtrip():
    rng = random.Random(1)
    for _ in range(2000):
        n = rng.randrange(1, 10**12)
        assert int(FactoredInt.from_int(n)) == n
    assert int(FactoredInt.from_int(1)) == 1
    assert FactoredInt.from_int(-12) == -12


def test_factored_int_ops():
    a = FactoredInt.from_int(12)
    b = FactoredInt.from_int(18)
    assert int(a * b) == 216
    assert a.valuation(2) == 2 and a.valuation(5) == 0
    assert int(a.without_prime(2)) == 3
    assert int(a.times_prime_power(5, 2)) == 300
    assert int(FactoredInt.from_int(216).exact_div(a)) == 18
    with pytest.raises(ValueError):
        b.exact_div(FactoredInt.from_int(5))
    assert a == 12 and hash(a) == hash(12)


def test_lcm_examples():
    assert int(lcm_factored([FactoredInt.from_int(1)])) == 1
    assert int(lcm_factored([12, 18])) == 36
    assert int(lcm_factored([3, 7, 15, 31])) == 3255


def test_zsigmondy_examples():
    assert zsigmondy_prime_power(2, 4) == (5, 1)
    # 9 divides 63 but no 2^i - 1 for i < 6: prime-power fix of the
    # classical (2, 6) exception
    assert zsigmondy_prime_power(2, 6) == (3, 2)
    # q + 1 a power of two: 4 | 8 and 4 does not divide 3 - 1
    r, a = zsigmondy_prime_power(3, 2)
    assert (r, a) == (2, 2)


def brute_zsigmondy(q, n):
    """Independent oracle: trial-divide q**n - 1 from scratch and test every
    prime-power divisor with plain big-int arithmetic."""
    target = q**n - 1
    m = target
    primes = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            primes.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        primes.append(m)
    best = None
    for r in sorted(primes):
        ra, alpha = r, 1
        while target % ra == 0:
            if all((q**i - 1) % ra != 0 for i in range(1, n)):
                cand = (r, alpha)
                if best is None or cand < best:
                    best = cand
                break  # larger alpha for same r can't beat (r, alpha)
            ra *= r
            alpha += 1
    return best


def test_zsigmondy_against_bruteforce():
    for q in range(2, 10):
        for n in range(2, 13):
            assert zsigmondy_prime_power(q, n) == brute_zsigmondy(q, n), (q, n)


def test_zsigmondy_divisibility_contract():
    for q in range(2, 10):
        for n in range(2, 13):
            r, a = zsigmondy_prime_power(q, n)
            ra = r**a
            assert (q**n - 1) % ra == 0
            assert all((q**i - 1) % ra != 0 for i in range(1, n))
