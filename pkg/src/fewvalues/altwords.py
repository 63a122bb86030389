"""Word constructors for Alt(n)/Sym(n) (3-cycle and p-cycle images), the
constructive witness that the words are nontrivial, and width lower-bound
certificates.

The 3-cycle word for Alt(n) is built from a descending ladder of primes
p_1 > ... > p_k > 3 with n - sum(p_i) in {3, 4, 5} and each p_i covering
more than half of what is left.  With M the group exponent and
m_i = M with the full p_i-part removed (p_0 = 3),

    w_1(x1, x2) = [(x1^m0)^[x2, x1^m1, ..., x1^mk], x1^m0]',  w = w_1^10.

Nontriviality of w_1 forces x1 to have a single p_i-cycle for each i, so
x1^m0 is a 3-cycle and every nonidentity value of w is a 3-cycle.

The Sym(n) variants use the exponent of Sym(n) instead of Alt(n): the two
differ exactly when n or n-1 is a power of two, and there the Alt exponent
does not annihilate the odd elements it never meets inside Alt(n) (an
8-cycle in Sym(8) slips through the gates and produces (3,3)-type values),
so the gates must be built from the full Sym exponent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from random import Random

from .arith import FactoredInt, primes_in_interval
from .perms import (
    Permutation,
    classify_alt_value,
    exponent_alt,
    exponent_sym,
    perm_context,
    random_even_perm,
)
from .words import Commutator, Conjugate, Power, Product, Var, WordExpr, evaluate, print_word


class UnsupportedGroupError(ValueError):
    """The requested group has no word of the requested kind."""


class NoLadderError(ValueError):
    """No admissible prime ladder exists for this n."""


class WitnessSearchError(RuntimeError):
    """Randomized witness search exhausted its trial budget."""


# ---------------------------------------------------------------------------
# prime ladders


@dataclass(frozen=True)
class PrimeLadder:
    n: int
    primes: tuple[int, ...]

    @property
    def remainder(self) -> int:
        return self.n - sum(self.primes)


def prime_ladder(n: int) -> PrimeLadder:
    """Greedy-largest ladder with backtracking.

    At each level with t points left, candidates are primes in (t/2, t-3]
    excluding t-6, t-7 and t-13 (those leave an amount no ladder can
    finish); the search stops when the remainder reaches {3, 4, 5}.
    """
    if n <= 7 or n == 13:
        raise NoLadderError(f"no ladder for n={n}")

    def rec(t: int):
        if t in (3, 4, 5):
            return []
        if t < 8:
            return None
        cands = [p for p in primes_in_interval(t // 2, t - 3) if p not in (t - 6, t - 7, t - 13)]
        for p in reversed(cands):
            sub = rec(t - p)
            if sub is not None:
                return [p] + sub
        return None

    primes = rec(n)
    if primes is None:
        raise NoLadderError(f"ladder search exhausted for n={n}")
    ladder = PrimeLadder(n, tuple(primes))
    assert ladder.remainder in (3, 4, 5)
    return ladder


# ---------------------------------------------------------------------------
# word plans


@dataclass(frozen=True)
class AltWordPlan:
    n: int
    variant: str  # general | n5 | n7 | n13 | sym-general | sym7 | pcycle
    word: WordExpr
    arity: int
    M: FactoredInt
    ladder: PrimeLadder | None = None
    m0: FactoredInt | None = None
    m: tuple[FactoredInt, ...] = ()
    p: int | None = None  # p-cycle target, pcycle variant only
    symmetric: bool = False

    @property
    def word_text(self) -> str:
        return print_word(self.word)

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "variant": self.variant,
            "ladder": list(self.ladder.primes) if self.ladder else None,
            "M": {str(p): e for p, e in self.M.factors},
            "word": self.word_text,
            "arity": self.arity,
        }
        if self.p is not None:
            out["p"] = self.p
        return out


def _ladder_word(M: FactoredInt, ladder: PrimeLadder) -> tuple[WordExpr, FactoredInt, tuple]:
    m0 = M.without_prime(3)
    ms = tuple(M.without_prime(p) for p in ladder.primes)
    inner = Commutator((Var(2),) + tuple(Power(Var(1), mi) for mi in ms))
    w1 = Commutator((Conjugate(Power(Var(1), m0), inner), Power(Var(1), m0)))
    return Power(w1, 10), m0, ms


def _n13_word(M: FactoredInt) -> WordExpr:
    # No ladder reaches 13, so the word stacks two levels.  The 7-cycle
    # power must sit in the commutator slots and the 5-cycle power in the
    # conjugator: a commutator of two 5-cycles never has cycle type (5,3)
    # (exhaustive check over all pairs), while a commutator of two 7-cycles
    # has (5,3) as its only value type whose order is divisible by 15.
    m5 = M.without_prime(5)  # x1^m5 is the 5-cycle part
    m7 = M.without_prime(7)  # x1^m7 is the 7-cycle part
    w1 = Commutator((Conjugate(Power(Var(1), m7), Commutator((Var(2), Power(Var(1), m5)))), Power(Var(1), m7)))
    # 280 = 8*5*7 keeps exactly the 3-part of a (5,3) value and
    # 504 = 8*9*7 exactly its 5-part, so w2 is a commutator of 3-cycles
    w2 = Commutator((Conjugate(Power(w1, 280), Commutator((Var(3), Power(w1, 504)))), Power(w1, 280)))
    return Power(w2, 10)


def construct_word_alt(n: int) -> AltWordPlan:
    """Word whose value set on Alt(n) is the identity and all 3-cycles."""
    if n <= 4:
        raise UnsupportedGroupError(f"Alt({n}) is too small")
    if n == 6:
        raise UnsupportedGroupError("Alt(6) has an outer automorphism mixing 3-cycles with double 3-cycles")
    M = exponent_alt(n).M
    if n == 5:
        return AltWordPlan(5, "n5", Power(Var(1), 10), 1, M)
    if n == 7:
        m0 = M.without_prime(3)  # 140
        m1 = M.without_prime(2)  # 105
        w1 = Commutator((Conjugate(Power(Var(1), m0), Commutator((Var(2), Power(Var(1), m1)))), Power(Var(1), m0)))
        return AltWordPlan(7, "n7", Power(w1, 10), 2, M, m0=m0, m=(m1,))
    if n == 13:
        return AltWordPlan(13, "n13", _n13_word(M), 3, M)
    ladder = prime_ladder(n)
    word, m0, ms = _ladder_word(M, ladder)
    return AltWordPlan(n, "general", word, 2, M, ladder=ladder, m0=m0, m=ms)


def construct_word_sym(n: int) -> AltWordPlan:
    """Word whose value set on Sym(n) is the identity and all 3-cycles.

    Same shape as the Alt(n) word but with exponents from the Sym(n)
    exponent, which is what gates the odd elements of Sym(n); when neither n
    nor n-1 is a power of two the two words coincide.
    """
    if n < 7:
        raise UnsupportedGroupError(f"no symmetric-group word for n={n}")
    M = exponent_sym(n).M
    if n == 7:
        m0 = M.without_prime(3)  # 140
        m1 = M.exact_div(FactoredInt.from_int(2))  # 210: one factor of 2 only
        w1 = Commutator((Conjugate(Power(Var(1), m0), Commutator((Var(2), Power(Var(1), m1)))), Power(Var(1), m0)))
        return AltWordPlan(7, "sym7", Power(w1, 10), 2, M, m0=m0, m=(m1,), symmetric=True)
    if n == 13:
        return AltWordPlan(13, "n13", _n13_word(M), 3, M, symmetric=True)
    ladder = prime_ladder(n)
    word, m0, ms = _ladder_word(M, ladder)
    return AltWordPlan(n, "sym-general", word, 2, M, ladder=ladder, m0=m0, m=ms, symmetric=True)


def construct_word_pcycle(n: int, p: int) -> AltWordPlan:
    """Word whose value set on Alt(n) is the identity and all p-cycles.

    With w the 3-cycle word and z a fresh variable, (w z)^k z^-k is a
    product of k 3-cycles, so for k = (p-1)/2 its nonidentity values live on
    at most 3(p-1)/2 < 2p points; raising to N_p = exponent(Alt(3(p-1)/2))/p
    keeps exactly the p-cycles.
    """
    if p <= 3 or p >= n or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
        raise UnsupportedGroupError(f"need a prime p with 3 < p < n, got p={p}, n={n}")
    base = construct_word_alt(n)
    k = (p - 1) // 2
    carrier = exponent_alt(3 * k).M
    if carrier.valuation(p) != 1:
        raise AssertionError(f"exponent of Alt({3 * k}) should have p-part exactly {p}")
    N_p = carrier.without_prime(p)
    z = Var(base.arity + 1)
    wk = Product((Power(Product((base.word, z)), k), Power(z, -k)))
    return AltWordPlan(
        n, "pcycle", Power(wk, N_p), base.arity + 1, base.M, ladder=base.ladder, m0=base.m0, m=base.m, p=p
    )


# ---------------------------------------------------------------------------
# witnesses


@dataclass
class WitnessAltTrace:
    """Assignment hitting a 3-cycle, with the bookkeeping of the inductive
    construction when the deterministic path was used."""

    n: int
    assignment: tuple[Permutation, ...]
    value: Permutation
    omegas: list[list[int]] = field(default_factory=list)
    cycles: list[Permutation] = field(default_factory=list)  # a_1 .. a_k
    a0: Permutation | None = None
    vs: list[Permutation] = field(default_factory=list)  # v_0 .. v_k
    alpha: int | None = None
    beta: int | None = None
    gamma: int | None = None
    delta: int | None = None
    eta: int | None = None
    tau: Permutation | None = None
    randomized: bool = False
    trials: int = 0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "assignment": [str(g) for g in self.assignment],
            "value": str(self.value),
            "value_class": classify_alt_value(self.value).kind,
            "randomized": self.randomized,
            "tau": str(self.tau) if self.tau else None,
        }


def _commutator_perm(a: Permutation, b: Permutation) -> Permutation:
    return a.inverse() * b.inverse() * a * b


def _build_segment_data(n: int, ladder: PrimeLadder):
    """Run the inductive construction on the canonical n-cycle.

    Returns (a_cycles, omegas, vs, alpha, beta, gamma, delta) where the a_i
    are the ladder cycles and v_k = [y', a_1, ..., a_k] moves exactly alpha
    and beta out of the final remainder set.
    """
    y0 = Permutation.from_cycles(n, [tuple(range(1, n + 1))])
    segment = list(range(1, n + 1))
    omegas = [segment[:]]
    vs = [y0]
    a_cycles: list[Permutation] = []
    v = y0
    k = len(ladder.primes)
    for i, p in enumerate(ladder.primes):
        t = len(segment)
        b = segment  # b[j] is the (j+1)-th point of the current segment
        if i < k - 1:
            tp = t - p
            cycle_pts = [b[0]] + [b[2 * j] for j in range(1, tp + 1)] + b[2 * tp + 1 :]
            a_i = Permutation.from_cycles(n, [tuple(cycle_pts)])
            new_segment = [b[2 * j - 1] for j in range(tp, 0, -1)]
        else:
            cycle_pts = [b[0], b[1]] + b[3 : p + 1]
            a_i = Permutation.from_cycles(n, [tuple(cycle_pts)])
            new_segment = [b[2]] + b[p + 1 :]  # the remainder set, not a segment
        assert len(cycle_pts) == p
        v = _commutator_perm(v, a_i)
        a_cycles.append(a_i)
        vs.append(v)
        if i < k - 1:
            # the new set must again be a segment of a cycle of v
            for x, y in zip(new_segment, new_segment[1:]):
                assert v.apply(x) == y
        segment = new_segment
        omegas.append(segment[:])
    b = omegas[-2]  # points of the last segment
    p_k = ladder.primes[-1]
    alpha, beta, gamma, delta = b[p_k + 1], b[2], b[0], b[3]
    assert v.apply(alpha) == gamma and v.apply(beta) == delta
    return a_cycles, omegas, vs, alpha, beta, gamma, delta


def _solve_cycle_power(a: Permutation, m: FactoredInt, p: int) -> Permutation:
    """c with c^m = a for a p-cycle a and m coprime to p."""
    t = pow(int(m) % p, -1, p)
    return a**t


def _random_of_type(n: int, lengths: tuple[int, ...], rng: Random) -> Permutation:
    pts = list(range(1, n + 1))
    rng.shuffle(pts)
    cycles = []
    at = 0
    for ln in lengths:
        cycles.append(tuple(pts[at : at + ln]))
        at += ln
    return Permutation.from_cycles(n, cycles)


def _randomized_witness(plan: AltWordPlan, seed: int, budget: int) -> WitnessAltTrace:
    n = plan.n
    ctx = perm_context(n)
    rng = Random(seed)
    type_by_variant = {"n7": (3, 2, 2), "n13": (7, 5, 1)}
    lengths = type_by_variant[plan.variant]
    extra = plan.arity - 1
    for trial in range(1, budget + 1):
        x1 = _random_of_type(n, tuple(l for l in lengths if l > 1), rng)
        rest = tuple(random_even_perm(n, rng) for _ in range(extra))
        assignment = (x1,) + rest
        value = Permutation(evaluate(plan.word, tuple(g.images for g in assignment), ctx))
        if classify_alt_value(value).kind == "three_cycle":
            return WitnessAltTrace(n, assignment, value, randomized=True, trials=trial)
    raise WitnessSearchError(f"no witness for Alt({n}) within {budget} trials (seed {seed})")


def witness_alt(n: int, seed: int = 0, budget: int = 10**6) -> WitnessAltTrace:
    """Assignment on which the Alt(n) word evaluates to a 3-cycle.

    Deterministic inductive construction for general n; seeded randomized
    search for n in {7, 13}.  The result is always verified by evaluation.
    """
    plan = construct_word_alt(n)
    ctx = perm_context(n)
    if plan.variant == "n5":
        x1 = Permutation.from_cycles(5, [(1, 2, 3)])
        value = Permutation(evaluate(plan.word, (x1.images,), ctx))
        assert classify_alt_value(value).kind == "three_cycle"
        return WitnessAltTrace(5, (x1,), value)
    if plan.variant in ("n7", "n13"):
        return _randomized_witness(plan, seed, budget)

    ladder = plan.ladder
    a_cycles, omegas, vs, alpha, beta, gamma, delta = _build_segment_data(n, ladder)
    omega_k = omegas[-1]
    eta = min(x for x in omega_k if x not in (alpha, beta))
    a0 = Permutation.from_cycles(n, [(eta, alpha, beta)])

    # x1: disjoint cycles c_i with c_i^{m_i} = a_i exactly
    x1 = _solve_cycle_power(a0, plan.m0, 3)
    for a_i, m_i, p_i in zip(a_cycles, plan.m, ladder.primes):
        x1 = x1 * _solve_cycle_power(a_i, m_i, p_i)
    assert x1.is_even()
    for a_i, m_i in zip(a_cycles, plan.m):
        assert x1**m_i == a_i
    assert x1**plan.m0 == a0

    y0 = vs[0]
    supp_a1 = a_cycles[0].support()
    taus: list[Permutation | None]
    if y0.is_even():
        taus = [None]
    else:
        outside = sorted(set(range(1, n + 1)) - supp_a1)
        first = Permutation.from_cycles(n, [(outside[0], outside[1])])
        fallback = Permutation.from_cycles(n, [(alpha, beta)])
        taus = [first, fallback]
        taus += [
            Permutation.from_cycles(n, [(a, b)])
            for ai, a in enumerate(outside)
            for b in outside[ai + 1 :]
        ]
    for tau in taus:
        y = y0 if tau is None else y0 * tau
        value = Permutation(evaluate(plan.word, (x1.images, y.images), ctx))
        if classify_alt_value(value).kind == "three_cycle":
            return WitnessAltTrace(
                n,
                (x1, y),
                value,
                omegas=omegas,
                cycles=a_cycles,
                a0=a0,
                vs=vs,
                alpha=alpha,
                beta=beta,
                gamma=gamma,
                delta=delta,
                eta=eta,
                tau=tau,
            )
    # not expected to be reached; keep a randomized escape hatch
    rng = Random(seed)
    for trial in range(1, budget + 1):
        y = random_even_perm(n, rng)
        value = Permutation(evaluate(plan.word, (x1.images, y.images), ctx))
        if classify_alt_value(value).kind == "three_cycle":
            return WitnessAltTrace(n, (x1, y), value, randomized=True, trials=trial)
    raise WitnessSearchError(f"no witness for Alt({n}) within {budget} trials")


# ---------------------------------------------------------------------------
# width certificates


@dataclass(frozen=True)
class WidthCertificate:
    """An element of Alt(n) needing at least `bound` 3-cycle factors.

    Each 3-cycle is two transpositions and multiplying by a transposition
    changes (n - #cycles) by at most one, so sigma needs at least
    ceil((n - c(sigma)) / 2) three-cycle factors, with c counting fixed
    points as cycles."""

    k: int
    n: int
    element: Permutation
    bound: int

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "element": str(self.element), "bound": self.bound}


def width_certificate(k: int) -> WidthCertificate:
    if k < 1:
        raise ValueError("need k >= 1")
    n = 2 * k + 3
    sigma = Permutation.from_cycles(n, [tuple(range(1, n + 1))])  # n odd: even permutation
    cycles = 1  # the single n-cycle, no fixed points
    bound = -((n - cycles) // -2)
    assert bound == k + 1
    return WidthCertificate(k, n, sigma, bound)
