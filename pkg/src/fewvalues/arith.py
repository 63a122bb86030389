"""Prime sieves, factored integers, and Zsigmondy prime-power search.

Everything here is exact integer arithmetic.  The sieve is grown lazily and
capped (default 10**7); factorization uses trial division by sieved primes
with a Brent-rho fallback for 64-bit sized cofactors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

SIEVE_CAP = 10**7

_sieve_limit = 0
_sieve_primes: list[int] = []


def _grow_sieve(limit: int) -> None:
    global _sieve_limit, _sieve_primes
    if limit <= _sieve_limit:
        return
    if limit > SIEVE_CAP:
        raise ValueError(f"sieve bound {limit} exceeds cap {SIEVE_CAP}")
    limit = min(max(limit, 2 * _sieve_limit, 1 << 16), SIEVE_CAP)
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    _sieve_primes = [i for i, f in enumerate(flags) if f]
    _sieve_limit = limit


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, ascending."""
    _grow_sieve(limit)
    import bisect

    return _sieve_primes[: bisect.bisect_right(_sieve_primes, limit)]


def primes_in_interval(lo: int, hi: int) -> list[int]:
    """Primes p with lo < p <= hi, ascending."""
    if not 0 <= lo <= hi:
        raise ValueError("need 0 <= lo <= hi")
    if hi > SIEVE_CAP:
        raise ValueError(f"interval bound {hi} exceeds sieve cap {SIEVE_CAP}")
    return [p for p in primes_up_to(hi) if p > lo]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 2**64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """One nontrivial factor of composite n (n odd, not a prime power of 2)."""
    if n % 2 == 0:
        return 2
    # deterministic parameter schedule keeps results reproducible
    for c in range(1, 50):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out: dict[int, int] = {}
    for p in primes_up_to(min(65536, max(2, math.isqrt(n)))):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        if n == 1:
            return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _brent_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


@dataclass(frozen=True)
class FactoredInt:
    """Nonzero integer kept as a signed prime factorization.

    `factors` is a sorted tuple of (prime, exponent>=1) pairs; empty means 1.
    Instances are immutable and hash/compare by numeric value, so a
    FactoredInt equals the plain int it denotes.
    """

    factors: tuple[tuple[int, int], ...] = ()
    negative: bool = False

    @staticmethod
    def from_int(n: int) -> "FactoredInt":
        if n == 0:
            raise ValueError("FactoredInt cannot represent 0")
        neg = n < 0
        return FactoredInt(tuple(sorted(factorize(abs(n)).items())), neg)

    @staticmethod
    def from_map(m: dict[int, int], negative: bool = False) -> "FactoredInt":
        items = tuple(sorted((p, e) for p, e in m.items() if e != 0))
        if any(e < 0 for _, e in items):
            raise ValueError("exponents must be >= 1")
        return FactoredInt(items, negative)

    @cached_property
    def value(self) -> int:
        v = math.prod(p**e for p, e in self.factors)
        return -v if self.negative else v

    def __int__(self) -> int:
        return self.value

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FactoredInt):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def as_map(self) -> dict[int, int]:
        return dict(self.factors)

    def valuation(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def without_prime(self, p: int) -> "FactoredInt":
        """Divide out the full p-part."""
        return FactoredInt(tuple((q, e) for q, e in self.factors if q != p), self.negative)

    def times_prime_power(self, p: int, k: int) -> "FactoredInt":
        """Multiply by p**k (k >= 0)."""
        if k == 0:
            return self
        m = self.as_map()
        m[p] = m.get(p, 0) + k
        return FactoredInt.from_map(m, self.negative)

    def __mul__(self, other: "FactoredInt") -> "FactoredInt":
        m = self.as_map()
        for p, e in other.factors:
            m[p] = m.get(p, 0) + e
        return FactoredInt.from_map(m, self.negative != other.negative)

    def exact_div(self, other: "FactoredInt") -> "FactoredInt":
        m = self.as_map()
        for p, e in other.factors:
            if m.get(p, 0) < e:
                raise ValueError("not an exact divisor")
            m[p] -= e
        return FactoredInt.from_map(m, self.negative != other.negative)

    def __neg__(self) -> "FactoredInt":
        return FactoredInt(self.factors, not self.negative)

    def __repr__(self) -> str:
        if not self.factors:
            body = "1"
        else:
            body = "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)
        return ("-" if self.negative else "") + body


def lcm_factored(values: list[FactoredInt | int]) -> FactoredInt:
    """Least common multiple, per-prime maximum of exponents."""
    acc: dict[int, int] = {}
    for v in values:
        fv = v if isinstance(v, FactoredInt) else FactoredInt.from_int(v)
        for p, e in fv.factors:
            if acc.get(p, 0) < e:
                acc[p] = e
    return FactoredInt.from_map(acc)


def zsigmondy_prime_power(q: int, n: int) -> tuple[int, int]:
    """Smallest (r, alpha) with r**alpha | q**n - 1 and r**alpha not dividing
    q**i - 1 for any 1 <= i < n.

    Candidates are ordered by r ascending, then alpha ascending, which fixes
    the construction deterministically.  Existence holds for all q, n >= 2
    (the prime-power refinement of Zsigmondy's theorem); failure to find one
    is an internal error.
    """
    if q < 2 or n < 2:
        raise ValueError("need q, n >= 2")
    target = q**n - 1
    for r in sorted(factorize(target)):
        ra = r
        alpha = 1
        while target % ra == 0:
            if all(pow(q, i, ra) != 1 for i in range(1, n)):
                return r, alpha
            ra *= r
            alpha += 1
    raise ArithmeticError(f"no Zsigmondy prime power for q={q}, n={n}")
