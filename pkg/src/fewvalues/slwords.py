"""Transvection-valued words for SL_n(q) and their witnesses.

Case table (E is the certified exponent multiple, p = char):

  n = 2              w = x1^(q^2-1); any nontrivial p-element of SL_2 is a
                     transvection.
  n = 3, q in {2,4}  w = x1^(E with the 2-part cut to a single 2): squares
                     of unipotents are 1 or transvections in dimension 3.
  n = 3 otherwise    two-variable word with r^alpha the smallest prime
                     power dividing q-1 other than 3 (rules out scalar
                     semisimple parts of order 3).  The conjugator is
                     (x^A)^y * (x^A)^(y^-1) rather than [y, x^A]: when the
                     gates pass, a := x^A is scalar on the plane carrying
                     the transvection x^B and diag(-1,-1,1)-like whenever
                     r = 2, and a short computation shows b^[y,a] then
                     never reaches the Heisenberg position against b that a
                     transvection-valued commutator needs (on SL_3(3) the
                     [y, x^A] form is identically trivial, exhaustively).
                     The replacement keeps the same collapse gates and the
                     same product-of-two-transvections image argument.
  n = 4, q = 2       w = x1^210; image also contains double transvections.
  n = 4, q = 3       w = x1^(E with the 3-part cut to a single 3): cubes of
                     unipotents are 1 or transvections in dimension 4.
  n = 4, q >= 4      w2 = [x^B, (x^B)^((x^Abar)^g (x^Abar)^(g^-1))] with
                     g = [y, x^A], r^alpha a Zsigmondy prime power for
                     q^2-1 and rbar^abar a prime power dividing q-1 other
                     than 2.  As in the n = 3 case the two-sided product
                     replaces a plain commutator conjugator, which is
                     degenerate below dimension 5 (identically trivial on
                     SL_4(4), checked on every gate-passing sample); the
                     collapse gates and the image argument are unchanged.
  n > 4              w1 = [x^B, (x^B)^[y,x^A]] with r^alpha a Zsigmondy
                     prime power for q^(n-2)-1.

Two-variable words are raised to (q-1)(q^2-1), which kills the semisimple
part of any product of two transvections and fixes transvections.

Exponents: B = E with the full p-part removed, A = (E with the full r-part
removed) * r^(alpha-1), so x^A != 1 exactly when r^alpha divides the order
of x (same shape for Abar).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random

from .arith import FactoredInt, factorize, zsigmondy_prime_power
from .matgf import (
    Matrix,
    block_diag,
    classify_sl_value,
    elementary,
    exponent_multiple_sl,
    field_for,
    jordan_block,
    mat_det,
    mat_identity,
    mat_inv,
    mat_mul,
    mat_pow,
    mat_rank,
    mat_to_str,
    random_sl,
    singer_torus_element,
    sl_context,
    vec_mat,
)
from .words import Commutator, Conjugate, Power, Product, Var, WordExpr, evaluate, print_word


class WitnessSearchError(RuntimeError):
    """Witness search exhausted its trial budget."""


@dataclass(frozen=True)
class SLWordPlan:
    n: int
    q: int
    p: int
    u: int
    case: str  # n2 | n3-general | n3-q24 | n4-general | n4-q3 | n4-q2 | big
    E: FactoredInt
    word: WordExpr
    arity: int
    image_spec: tuple[str, ...]
    r_alpha: tuple[int, int] | None = None
    rbar_abar: tuple[int, int] | None = None
    A: int | None = None
    B: int | None = None
    Abar: int | None = None
    outer: int | None = None
    gates_force_transvection: bool = True  # False only for SL_4(2)

    @property
    def word_text(self) -> str:
        return print_word(self.word)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "case": self.case,
            "E": {str(p): e for p, e in self.E.factors},
            "r_alpha": list(self.r_alpha) if self.r_alpha else None,
            "A": self.A,
            "B": self.B,
            "Abar": self.Abar,
            "word": self.word_text,
            "arity": self.arity,
            "image_spec": list(self.image_spec),
        }


TRANSVECTION_IMAGE = ("identity", "transvection")
SL42_IMAGE = ("identity", "transvection", "double_transvection")


def _detect_exponent(E: FactoredInt, r: int, alpha: int) -> int:
    """A with x^A != 1 iff r^alpha | order(x), for any x with order dividing E."""
    return int(E.without_prime(r)) * r ** (alpha - 1)


def _single_p_exponent(E: FactoredInt, p: int) -> int:
    """E with the p-part reduced to a single factor of p."""
    return int(E.without_prime(p)) * p


def _n3_prime_power(q: int) -> tuple[int, int]:
    """Smallest prime power dividing q-1 that is not 3 (smallest r, then
    smallest alpha).  Exists exactly when q is not 2 or 4."""
    for r in sorted(factorize(q - 1)):
        ra, alpha = r, 1
        while (q - 1) % ra == 0:
            if ra != 3:
                return r, alpha
            ra *= r
            alpha += 1
    raise ValueError(f"q-1={q - 1} has no prime power other than 3")


def _n4_bar_prime_power(q: int) -> tuple[int, int]:
    """Prime power dividing q-1 other than 2: the smallest odd prime with
    its full part of q-1, else (q-1 a power of two) the full 2-part."""
    f = factorize(q - 1)
    odd = sorted(r for r in f if r != 2)
    if odd:
        return odd[0], f[odd[0]]
    return 2, f[2]


def sl_word_params(n: int, q: int) -> SLWordPlan:
    """Word plan (exponents, case, image spec) for SL_n(q)."""
    if n < 2 or q < 2:
        raise ValueError("need n, q >= 2")
    F = field_for(q)
    p, u = F.p, F.u
    E = exponent_multiple_sl(n, q).E
    B = int(E.without_prime(p))
    outer = (q - 1) * (q * q - 1)

    if n == 2:
        word = Power(Var(1), q * q - 1)
        return SLWordPlan(n, q, p, u, "n2", E, word, 1, TRANSVECTION_IMAGE, A=1, B=q * q - 1)
    if n == 3 and q in (2, 4):
        e = _single_p_exponent(E, p)
        return SLWordPlan(n, q, p, u, "n3-q24", E, Power(Var(1), e), 1, TRANSVECTION_IMAGE, A=1, B=e)
    if n == 4 and q == 2:
        e = _single_p_exponent(E, 2)  # 210 = 2*3*5*7
        return SLWordPlan(
            n, q, p, u, "n4-q2", E, Power(Var(1), e), 1, SL42_IMAGE, A=1, B=e,
            gates_force_transvection=False
        )
    if n == 4 and q == 3:
        e = _single_p_exponent(E, 3)
        return SLWordPlan(n, q, p, u, "n4-q3", E, Power(Var(1), e), 1, TRANSVECTION_IMAGE, A=1, B=e, Abar=1)

    if n == 3:
        r, alpha = _n3_prime_power(q)
        A = _detect_exponent(E, r, alpha)
        conj = Product(
            (
                Conjugate(Power(Var(1), A), Var(2)),
                Conjugate(Power(Var(1), A), Power(Var(2), -1)),
            )
        )
        w1 = Commutator((Power(Var(1), B), Conjugate(Power(Var(1), B), conj)))
        return SLWordPlan(
            n, q, p, u, "n3-general", E, Power(w1, outer), 2, TRANSVECTION_IMAGE,
            r_alpha=(r, alpha), A=A, B=B, outer=outer,
        )
    if n == 4:
        r, alpha = zsigmondy_prime_power(q, 2)
        rb, ab = _n4_bar_prime_power(q)
        A = _detect_exponent(E, r, alpha)
        Abar = _detect_exponent(E, rb, ab)
        # conjugator (x^Abar)^g * (x^Abar)^(g^-1) with g = [y, x^A]: it is 1
        # when x^Abar = 1 and equals (x^Abar)^2 (which commutes with x^B)
        # when x^A = 1, so both gates still collapse the word
        g = Commutator((Var(2), Power(Var(1), A)))
        conj = Product(
            (Conjugate(Power(Var(1), Abar), g), Conjugate(Power(Var(1), Abar), Power(g, -1)))
        )
        w2 = Commutator((Power(Var(1), B), Conjugate(Power(Var(1), B), conj)))
        return SLWordPlan(
            n, q, p, u, "n4-general", E, Power(w2, outer), 2, TRANSVECTION_IMAGE,
            r_alpha=(r, alpha), rbar_abar=(rb, ab), A=A, B=B, Abar=Abar, outer=outer,
        )
    r, alpha = zsigmondy_prime_power(q, n - 2)
    A = _detect_exponent(E, r, alpha)
    w1 = Commutator((Power(Var(1), B), Conjugate(Power(Var(1), B), Commutator((Var(2), Power(Var(1), A))))))
    return SLWordPlan(
        n, q, p, u, "big", E, Power(w1, outer), 2, TRANSVECTION_IMAGE,
        r_alpha=(r, alpha), A=A, B=B, outer=outer,
    )


def construct_word_sl(n: int, q: int) -> SLWordPlan:
    """Word whose value set on SL_n(q) is the identity and all transvections
    (plus the double transvections for SL_4(2))."""
    return sl_word_params(n, q)


# ---------------------------------------------------------------------------
# witnesses


@dataclass
class WitnessSLTrace:
    n: int
    q: int
    assignment: tuple[Matrix, ...]
    value: Matrix
    value_class: str
    x_semisimple: Matrix | None = None  # x'
    x_unipotent: Matrix | None = None  # x''
    a: Matrix | None = None  # x^A
    b: Matrix | None = None  # x^B
    checks: dict = field(default_factory=dict)
    randomized: bool = False
    trials: int = 0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "assignment": [mat_to_str(m) for m in self.assignment],
            "value": mat_to_str(self.value),
            "value_class": self.value_class,
            "checks": self.checks,
            "randomized": self.randomized,
        }


def _single_variable_witness(plan: SLWordPlan) -> WitnessSLTrace:
    n, q = plan.n, plan.q
    F = field_for(q)
    if plan.case == "n2":
        x = elementary(2, 1, 2, 1, F)
    elif plan.case == "n4-q2":
        # J_3 + J_1 squares to a clean transvection (J_4 would square to a
        # double transvection, also in the image spec)
        x = block_diag(F, jordan_block(3, F), mat_identity(1))
    else:
        x = jordan_block(n, F)  # regular unipotent, order p^2 here
    ctx = sl_context(n, q)
    value = evaluate(plan.word, (x,), ctx)
    cls = classify_sl_value(value, F).kind
    assert cls == "transvection", cls
    return WitnessSLTrace(
        n, q, (x,), value, cls,
        x_semisimple=mat_identity(n), x_unipotent=x,
        a=mat_pow(x, plan.A, F), b=mat_pow(x, plan.B, F),
    )


def _basis_completion(rows: list[tuple], n: int, F) -> list[tuple]:
    """Extend linearly independent rows to a basis using standard vectors."""
    out = list(rows)
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        cand = out + [e]
        if mat_rank(tuple(cand + [tuple([0] * n)] * (n - len(cand))), F) == len(cand):
            out.append(e)
        if len(out) == n:
            break
    return out


def _t1_candidates(n: int, F) -> list[tuple]:
    """Deterministic chain starts: standard vectors of the torus block
    first, then vectors with a component in the transvection block (needed
    when a acts with small order and the pure-torus chain degenerates)."""
    out = []
    for i in range(2, n):
        out.append(tuple(1 if j == i else 0 for j in range(n)))
    for lead in (0, 1):
        for i in range(2, n):
            out.append(tuple(1 if j in (lead, i) else 0 for j in range(n)))
    return out


def _constructive_witness(plan: SLWordPlan, seed: int, budget: int) -> WitnessSLTrace:
    n, q = plan.n, plan.q
    F = field_for(q)
    ctx = sl_context(n, q)
    ident = mat_identity(n)
    xu = elementary(n, 1, 2, 1, F)  # transvection in SL_2 x Id
    xs = singer_torus_element(n, q)  # Id_2 x nonsplit torus generator
    x = mat_mul(xs, xu, F)
    a = mat_pow(x, plan.A, F)
    b = mat_pow(x, plan.B, F)
    if a != ident and classify_sl_value(b, F).kind == "transvection":
        ainv = mat_inv(a, F)
        e1 = tuple(1 if j == 0 else 0 for j in range(n))
        e2 = tuple(1 if j == 1 else 0 for j in range(n))
        for t1 in _t1_candidates(n, F):
            t2 = vec_mat(t1, ainv, F)
            t3 = vec_mat(t2, ainv, F)
            chain = [t1, t2, t3]
            probe = tuple(chain + [tuple([0] * n)] * (n - 3))
            if mat_rank(probe, F) != 3:
                continue
            yinv_rows = _basis_completion(chain, n, F)
            yinv = tuple(yinv_rows)
            d = mat_det_fix(yinv, F)
            y = mat_inv(d, F)
            g = mat_mul(mat_mul(mat_inv(y, F), mat_inv(a, F), F), mat_mul(y, a, F), F)
            ok1 = vec_mat(e1, g, F) == e2
            img2 = vec_mat(e2, g, F)
            ok2 = img2[0] == 0 and img2[1] == 0
            if not (ok1 and ok2):
                continue
            value = evaluate(plan.word, (x, y), ctx)
            cls = classify_sl_value(value, F).kind
            if cls == "transvection":
                return WitnessSLTrace(
                    n, q, (x, y), value, cls,
                    x_semisimple=xs, x_unipotent=xu, a=a, b=b,
                    checks={"e1_to_e2": ok1, "e2_into_V": ok2},
                )
    return _randomized_witness(plan, seed, budget)


def mat_det_fix(m: Matrix, F) -> Matrix:
    """Scale the last row so the determinant becomes 1."""
    d = mat_det(m, F)
    if d == 0:
        raise ValueError("singular")
    if d == 1:
        return m
    di = F.inv[d]
    return m[:-1] + (tuple(F.mul[di][x] for x in m[-1]),)


def _randomized_witness(plan: SLWordPlan, seed: int, budget: int) -> WitnessSLTrace:
    n, q = plan.n, plan.q
    F = field_for(q)
    ctx = sl_context(n, q)
    ident = mat_identity(n)
    rng = Random(seed)
    filtered = 0
    for trial in range(1, budget + 1):
        x = random_sl(n, q, rng)
        if mat_pow(x, plan.A, F) == ident:
            continue
        if plan.Abar is not None and mat_pow(x, plan.Abar, F) == ident:
            continue
        b = mat_pow(x, plan.B, F)
        if b == ident:
            continue
        filtered += 1
        y = random_sl(n, q, rng)
        value = evaluate(plan.word, (x, y), ctx)
        cls = classify_sl_value(value, F).kind
        if cls == "transvection":
            return WitnessSLTrace(
                n, q, (x, y), value, cls, a=mat_pow(x, plan.A, F), b=b,
                randomized=True, trials=trial,
            )
    raise WitnessSearchError(
        f"no witness for SL_{n}({q}) within {budget} trials "
        f"({filtered} passed the power filter, seed {seed})"
    )


def witness_sl(n: int, q: int, seed: int = 0, budget: int = 10**6) -> WitnessSLTrace:
    """Assignment on which the SL_n(q) word evaluates to a transvection.

    Single-variable cases use an explicit unipotent; n > 4 builds the torus
    witness and the conjugating y from a chain t1 -> t1 a^-1 -> t1 a^-2;
    n in {3, 4} two-variable cases use seeded randomized search.
    """
    plan = sl_word_params(n, q)
    if plan.arity == 1:
        return _single_variable_witness(plan)
    if n > 4:
        return _constructive_witness(plan, seed, budget)
    return _randomized_witness(plan, seed, budget)
