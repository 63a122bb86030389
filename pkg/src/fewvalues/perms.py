"""Permutations of {1..n}: arithmetic, cycle structure, conjugacy class
representatives, group exponents, and value classification.

Points act on the right: point^(s*t) = (point^s)^t.  Internally a
permutation is a tuple `images` over 0-based points (point i maps to
images[i]); all text I/O is 1-based cycle notation like "(1 2 3)(4 5)".
The harness works on the raw tuples through the perm_* helpers, which the
Permutation class wraps.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from random import Random
from typing import Iterable, Iterator

from .arith import FactoredInt
from .words import GroupContext, ValueClass

# ---------------------------------------------------------------------------
# raw tuple operations (hot paths)


def perm_identity(n: int) -> tuple:
    return tuple(range(n))


def perm_mul(a: tuple, b: tuple) -> tuple:
    """Apply a, then b."""
    return tuple(b[x] for x in a)


def perm_inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def perm_cycle_lengths(a: tuple) -> list[int]:
    """Lengths >= 2 of the nontrivial cycles."""
    seen = bytearray(len(a))
    out = []
    for i, x in enumerate(a):
        if seen[i] or x == i:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = a[j]
            ln += 1
        out.append(ln)
    return out


def perm_order(a: tuple) -> int:
    return math.lcm(*perm_cycle_lengths(a)) if any(x != i for i, x in enumerate(a)) else 1


def perm_is_even(a: tuple) -> bool:
    return sum(ln - 1 for ln in perm_cycle_lengths(a)) % 2 == 0


def perm_pow(a: tuple, e) -> tuple:
    """a**e with the exponent reduced modulo the order of a."""
    e = int(e)
    if not (-64 < e < 64):
        e %= perm_order(a)
    elif e < 0:
        a = perm_inv(a)
        e = -e
    acc = None
    base = a
    while e:
        if e & 1:
            acc = base if acc is None else perm_mul(acc, base)
        e >>= 1
        if e:
            base = perm_mul(base, base)
    return acc if acc is not None else perm_identity(len(a))


def perm_conj(a: tuple, g: tuple) -> tuple:
    """a^g = g^-1 * a * g."""
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[g[i]] = g[x]
    return tuple(out)


def classify_perm_value(a: tuple) -> ValueClass:
    """Identity, a single 3-cycle, a single p-cycle (p prime > 3), or other."""
    lens = perm_cycle_lengths(a)
    if not lens:
        return ValueClass("identity")
    if len(lens) == 1:
        ln = lens[0]
        if ln == 3:
            return ValueClass("three_cycle")
        if ln > 3 and _is_small_prime(ln):
            return ValueClass("p_cycle", ln)
    return ValueClass("other")


def _is_small_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


# ---------------------------------------------------------------------------
# Permutation class


class Permutation:
    """Bijection of {1..n}, immutable."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("not a permutation of 0..n-1")
        object.__setattr__(self, "images", images)

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(range(n))

    @staticmethod
    def from_cycles(n: int, cycles: Iterable[Iterable[int]]) -> "Permutation":
        """Build from 1-based cycles, e.g. from_cycles(5, [(1, 2, 3)])."""
        images = list(range(n))
        for cyc in cycles:
            cyc = [c - 1 for c in cyc]
            if any(not 0 <= c < n for c in cyc) or len(set(cyc)) != len(cyc):
                raise ValueError(f"bad cycle on {n} points")
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return Permutation(images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(perm_mul(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation(perm_inv(self.images))

    def __pow__(self, e) -> "Permutation":
        return Permutation(perm_pow(self.images, e))

    def conjugated_by(self, g: "Permutation") -> "Permutation":
        return Permutation(perm_conj(self.images, g.images))

    def apply(self, point: int) -> int:
        """Image of a 1-based point."""
        return self.images[point - 1] + 1

    def order(self) -> int:
        return perm_order(self.images)

    def is_even(self) -> bool:
        return perm_is_even(self.images)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles as 1-based tuples, each starting at its least point."""
        seen = bytearray(self.n)
        out = []
        for i in range(self.n):
            if seen[i] or self.images[i] == i:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = 1
                cyc.append(j + 1)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def support(self) -> set[int]:
        return {i + 1 for i, x in enumerate(self.images) if x != i}

    def cycle_type(self) -> "CycleType":
        lens = sorted(perm_cycle_lengths(self.images), reverse=True)
        fixed = self.n - sum(lens)
        return CycleType(tuple(lens), fixed, sum(l - 1 for l in lens) % 2 == 0)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __str__(self):
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self):
        return f"Permutation.of({self})"


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths >= 2 (descending), fixed points, parity."""

    lengths: tuple[int, ...]
    fixed: int
    even: bool


def classify_alt_value(sigma: Permutation | tuple) -> ValueClass:
    images = sigma.images if isinstance(sigma, Permutation) else sigma
    return classify_perm_value(images)


# ---------------------------------------------------------------------------
# conjugacy classes and exponents


def partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All partitions of n, parts descending, in deterministic order."""

    def rec(remaining: int, largest: int, prefix: tuple):
        if remaining == 0:
            yield prefix
            return
        for part in range(min(remaining, largest), 0, -1):
            yield from rec(remaining - part, part, prefix + (part,))

    yield from rec(n, n, ())


def _centralizer_order(parts: tuple[int, ...]) -> int:
    z = 1
    for ln, group in itertools.groupby(parts):
        m = len(list(group))
        z *= ln**m * math.factorial(m)
    return z


def _partition_is_even(parts: tuple[int, ...]) -> bool:
    return sum(l - 1 for l in parts) % 2 == 0


def _splits_in_alt(parts: tuple[int, ...]) -> bool:
    """A Sym-class of even permutations splits in Alt iff all cycle lengths
    (fixed points included, as length-1 cycles) are odd and distinct."""
    return all(l % 2 == 1 for l in parts) and len(set(parts)) == len(parts)


def _rep_from_partition(n: int, parts: tuple[int, ...]) -> Permutation:
    cycles = []
    next_pt = 1
    for ln in parts:
        if ln >= 2:
            cycles.append(tuple(range(next_pt, next_pt + ln)))
        next_pt += ln
    return Permutation.from_cycles(n, cycles)


def sym_class_reps(n: int) -> list[tuple[Permutation, int]]:
    """One representative per Sym(n) conjugacy class with its class size."""
    nf = math.factorial(n)
    return [(_rep_from_partition(n, parts), nf // _centralizer_order(parts)) for parts in partitions(n)]


def alt_class_reps(n: int) -> list[tuple[Permutation, int]]:
    """One representative per Alt(n) conjugacy class with its class size.

    Split classes (all cycle lengths odd and distinct) contribute two
    representatives, the second conjugated by the transposition (1 2).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    nf = math.factorial(n)
    swap = Permutation.from_cycles(n, [(1, 2)])
    out: list[tuple[Permutation, int]] = []
    for parts in partitions(n):
        if not _partition_is_even(parts):
            continue
        rep = _rep_from_partition(n, parts)
        sym_size = nf // _centralizer_order(parts)
        if _splits_in_alt(parts):
            out.append((rep, sym_size // 2))
            out.append((rep.conjugated_by(swap), sym_size // 2))
        else:
            out.append((rep, sym_size))
    return out


@dataclass(frozen=True)
class AltExponents:
    """Group exponent M as a factorization {p: l_p}."""

    n: int
    M: FactoredInt

    def part(self, p: int) -> int:
        return self.M.valuation(p)


def exponent_sym(n: int) -> AltExponents:
    """Exponent of Sym(n): l_p = max a with p**a <= n."""
    m: dict[int, int] = {}
    for p in _primes_le(n):
        a = 1
        while p ** (a + 1) <= n:
            a += 1
        m[p] = a
    return AltExponents(n, FactoredInt.from_map(m))


def exponent_alt(n: int) -> AltExponents:
    """Exponent of Alt(n): odd parts as in Sym(n); the 2-part needs an even
    carrier, a 2**a-cycle plus a transposition, so l_2 = max a with 2**a + 2 <= n."""
    m: dict[int, int] = {}
    for p in _primes_le(n):
        if p == 2:
            a = 0
            while 2 ** (a + 1) + 2 <= n:
                a += 1
            if a:
                m[2] = a
        else:
            a = 1
            while p ** (a + 1) <= n:
                a += 1
            m[p] = a
    return AltExponents(n, FactoredInt.from_map(m))


def _primes_le(n: int) -> list[int]:
    from .arith import primes_up_to

    return primes_up_to(n) if n >= 2 else []


def pow_factored(sigma: Permutation, e) -> Permutation:
    """sigma**e with the exponent reduced modulo the order of sigma."""
    return sigma**e


# ---------------------------------------------------------------------------
# sampling and enumeration


def random_perm(n: int, rng: Random) -> Permutation:
    images = list(range(n))
    rng.shuffle(images)
    return Permutation(images)


def random_even_perm(n: int, rng: Random) -> Permutation:
    """Uniform over Alt(n): uniform shuffle, then a fixed transposition if odd."""
    if n < 3:
        raise ValueError("need n >= 3")
    images = list(range(n))
    rng.shuffle(images)
    p = Permutation(images)
    if not p.is_even():
        p = p * Permutation.from_cycles(n, [(1, 2)])
    return p


def iter_sym_tuples(n: int) -> Iterator[tuple]:
    return itertools.permutations(range(n))


def iter_alt_tuples(n: int) -> Iterator[tuple]:
    return (t for t in itertools.permutations(range(n)) if perm_is_even(t))


def perm_context(n: int) -> GroupContext:
    """Word-evaluation context over raw image tuples."""
    return GroupContext(
        name=f"perm({n})",
        identity=perm_identity(n),
        mul=perm_mul,
        inv=perm_inv,
        pow=perm_pow,
    )
