"""GF(p^u) arithmetic and SL_n(q)/GL_n(q) matrix machinery.

Field elements are integer codes 0..q-1 packing the polynomial coefficient
vector in base p (low degree first), e.g. over GF(4) the codes 0,1,2,3 mean
0, 1, x, x+1.  Fields are small (q <= 16 is all the constructions need), so
arithmetic runs off precomputed q-by-q tables.

Matrices are tuples of row tuples of codes; row vectors act on the right
(v * M), matching the right action used for permutations.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from random import Random
from typing import Iterator

from .arith import FactoredInt, factorize, lcm_factored
from .words import GroupContext, ValueClass

Matrix = tuple  # tuple of row tuples of field codes


# ---------------------------------------------------------------------------
# fields


@dataclass(frozen=True, eq=False)
class FieldSpec:
    p: int
    u: int
    q: int
    modulus: tuple[int, ...]  # monic, coefficients low degree first, length u+1
    add: tuple
    mul: tuple
    neg: tuple
    inv: tuple

    def __repr__(self):
        return f"GF({self.q})"


def _poly_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mulmod(a, b, modulus, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    # reduce by monic modulus
    deg = len(modulus) - 1
    for i in range(len(out) - 1, deg - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j, mj in enumerate(modulus[:-1]):
                out[i - deg + j] = (out[i - deg + j] - c * mj) % p
    return _poly_trim(out)


def _code_to_poly(code: int, p: int) -> tuple[int, ...]:
    c = []
    while code:
        c.append(code % p)
        code //= p
    return tuple(c)


def _poly_to_code(poly, p: int) -> int:
    return sum(c * p**i for i, c in enumerate(poly))


def _irreducible(candidate: tuple[int, ...], p: int, degree: int) -> bool:
    """Trial division by every monic polynomial of degree 1..degree//2."""
    for d in range(1, degree // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = tuple(tail) + (1,)
            if _poly_divides(divisor, candidate, p):
                return False
    return True


def _poly_divides(d, a, p) -> bool:
    rem = list(a)
    dd = len(d) - 1
    inv_lead = pow(d[-1], -1, p)
    while len(rem) - 1 >= dd and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dd:
            break
        c = rem[-1] * inv_lead % p
        shift = len(rem) - 1 - dd
        for j, dj in enumerate(d):
            rem[shift + j] = (rem[shift + j] - c * dj) % p
    return not any(rem)


def _find_modulus(p: int, u: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree u over GF(p),
    with coefficients compared low degree first."""
    if u == 1:
        return (0, 1)  # the polynomial x
    for coeffs in itertools.product(range(p), repeat=u):
        if coeffs[0] == 0:
            continue  # divisible by x
        candidate = coeffs + (1,)
        if _irreducible(candidate, p, u):
            return candidate
    raise ArithmeticError(f"no irreducible polynomial of degree {u} over GF({p})")


@lru_cache(maxsize=None)
def field_for(q: int) -> FieldSpec:
    """Field of order q (a prime power)."""
    f = factorize(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, u),) = f.items()
    modulus = _find_modulus(p, u)
    polys = [_code_to_poly(c, p) for c in range(q)]
    add = tuple(
        tuple(
            _poly_to_code(_poly_trim([(x + y) % p for x, y in itertools.zip_longest(a, b, fillvalue=0)]), p)
            for b in polys
        )
        for a in polys
    )
    mul = tuple(tuple(_poly_to_code(_poly_mulmod(a, b, modulus, p), p) for b in polys) for a in polys)
    neg = tuple(_poly_to_code(_poly_trim([(-x) % p for x in a]), p) for a in polys)
    inv = [0] * q
    for a in range(1, q):
        for b in range(1, q):
            if mul[a][b] == 1:
                inv[a] = b
                break
    return FieldSpec(p, u, q, modulus, add, mul, neg, tuple(inv))


# ---------------------------------------------------------------------------
# matrices


def mat_identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix, F: FieldSpec) -> Matrix:
    add, mul = F.add, F.mul
    n = len(a)
    bt = tuple(zip(*b))
    out = []
    for row in a:
        orow = []
        for col in bt:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = add[acc][mul[x][y]]
            orow.append(acc)
        out.append(tuple(orow))
    return tuple(out)


def vec_mat(v: tuple, m: Matrix, F: FieldSpec) -> tuple:
    add, mul = F.add, F.mul
    out = [0] * len(v)
    for i, x in enumerate(v):
        if x:
            row = m[i]
            for j, y in enumerate(row):
                if y:
                    out[j] = add[out[j]][mul[x][y]]
    return tuple(out)


def mat_sub(a: Matrix, b: Matrix, F: FieldSpec) -> Matrix:
    add, neg = F.add, F.neg
    return tuple(tuple(add[x][neg[y]] for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_is_zero(a: Matrix) -> bool:
    return all(all(x == 0 for x in row) for row in a)


def _elimination(a: Matrix, F: FieldSpec, want_inverse: bool):
    """Gauss-Jordan; returns (rank, det, inverse-or-None)."""
    n = len(a)
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    rows = [list(r) for r in a]
    aug = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if want_inverse else None
    det = 1
    rank = 0
    col = 0
    for col in range(n):
        pivot = None
        for r in range(rank, n):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            det = 0
            continue
        if pivot != rank:
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            if aug:
                aug[rank], aug[pivot] = aug[pivot], aug[rank]
            det = mul[det][neg[1]] if det else 0
        c = rows[rank][col]
        det = mul[det][c] if det else 0
        ci = inv[c]
        if ci != 1:
            rows[rank] = [mul[ci][x] for x in rows[rank]]
            if aug:
                aug[rank] = [mul[ci][x] for x in aug[rank]]
        for r in range(n):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                nf = neg[f]
                rows[r] = [add[x][mul[nf][y]] for x, y in zip(rows[r], rows[rank])]
                if aug:
                    aug[r] = [add[x][mul[nf][y]] for x, y in zip(aug[r], aug[rank])]
        rank += 1
    if rank < n:
        det = 0
    inverse = tuple(tuple(r) for r in aug) if (aug and rank == n) else None
    return rank, det, inverse


def mat_rank(a: Matrix, F: FieldSpec) -> int:
    return _elimination(a, F, False)[0]


def mat_det(a: Matrix, F: FieldSpec) -> int:
    return _elimination(a, F, False)[1]


def mat_inv(a: Matrix, F: FieldSpec) -> Matrix:
    inverse = _elimination(a, F, True)[2]
    if inverse is None:
        raise ValueError("matrix is singular")
    return inverse


def mat_pow(m: Matrix, e, F: FieldSpec) -> Matrix:
    """Square-and-multiply; int or FactoredInt exponent, any sign."""
    e = int(e)
    if e < 0:
        m = mat_inv(m, F)
        e = -e
    acc = None
    base = m
    while e:
        if e & 1:
            acc = base if acc is None else mat_mul(acc, base, F)
        e >>= 1
        if e:
            base = mat_mul(base, base, F)
    return acc if acc is not None else mat_identity(len(m))


mat_pow_big = mat_pow


def elementary(n: int, i: int, j: int, c: int, F: FieldSpec) -> Matrix:
    """I + c*E_{i,j} with 1-based i != j: sends e_i to e_i + c*e_j."""
    if i == j:
        raise ValueError("off-diagonal only")
    m = [list(r) for r in mat_identity(n)]
    m[i - 1][j - 1] = F.add[m[i - 1][j - 1]][c]
    return tuple(tuple(r) for r in m)


def jordan_block(size: int, F: FieldSpec, eigen: int = 1) -> Matrix:
    return tuple(
        tuple(eigen if i == j else (1 if j == i + 1 else 0) for j in range(size)) for i in range(size)
    )


def block_diag(F: FieldSpec, *blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return tuple(tuple(r) for r in out)


def classify_sl_value(m: Matrix, F: FieldSpec) -> ValueClass:
    """identity; transvection (rank(m-I)=1, (m-I)^2=0); double transvection
    (rank 2, square zero); other."""
    d = mat_sub(m, mat_identity(len(m)), F)
    if mat_is_zero(d):
        return ValueClass("identity")
    r = mat_rank(d, F)
    if r <= 2 and mat_is_zero(mat_mul(d, d, F)):
        return ValueClass("transvection" if r == 1 else "double_transvection")
    return ValueClass("other")


# ---------------------------------------------------------------------------
# group orders, sampling, enumeration


def gl_order(n: int, q: int) -> int:
    return math.prod(q**n - q**d for d in range(n))


def sl_order(n: int, q: int) -> int:
    return gl_order(n, q) // (q - 1)


def random_gl(n: int, q: int, rng: Random) -> Matrix:
    F = field_for(q)
    while True:
        m = tuple(tuple(rng.randrange(q) for _ in range(n)) for _ in range(n))
        if mat_det(m, F) != 0:
            return m


def random_sl(n: int, q: int, rng: Random) -> Matrix:
    """Uniform over SL_n(q): uniform invertible, then the last row divided
    by the determinant."""
    F = field_for(q)
    while True:
        m = tuple(tuple(rng.randrange(q) for _ in range(n)) for _ in range(n))
        d = mat_det(m, F)
        if d == 0:
            continue
        if d == 1:
            return m
        di = F.inv[d]
        return m[:-1] + (tuple(F.mul[di][x] for x in m[-1]),)


ENUMERATION_CAP = 10**7


def _iter_rows_outside(span_rows: list[tuple], n: int, q: int, F: FieldSpec, proj: bool) -> Iterator[tuple]:
    """All vectors outside the span of span_rows; leading-coefficient-1
    representatives only when proj is set."""
    # reduced echelon basis for the current span
    basis: list[list[int]] = []
    for r in span_rows:
        v = list(r)
        for b in basis:
            lead = next(i for i, x in enumerate(b) if x)
            if v[lead]:
                f = F.neg[v[lead]]
                v = [F.add[x][F.mul[f][y]] for x, y in zip(v, b)]
        if any(v):
            lead = next(i for i, x in enumerate(v) if x)
            li = F.inv[v[lead]]
            basis.append([F.mul[li][x] for x in v])
    for cand in itertools.product(range(q), repeat=n):
        if not any(cand):
            continue
        if proj and cand[next(i for i, x in enumerate(cand) if x)] != 1:
            continue
        v = list(cand)
        for b in basis:
            lead = next(i for i, x in enumerate(b) if x)
            if v[lead]:
                f = F.neg[v[lead]]
                v = [F.add[x][F.mul[f][y]] for x, y in zip(v, b)]
        if any(v):
            yield cand


def enumerate_gl(n: int, q: int) -> Iterator[Matrix]:
    if gl_order(n, q) > ENUMERATION_CAP:
        raise ValueError(f"GL_{n}({q}) has order {gl_order(n, q)} > {ENUMERATION_CAP}")
    F = field_for(q)

    def rec(rows: list[tuple]) -> Iterator[Matrix]:
        if len(rows) == n:
            yield tuple(rows)
            return
        for r in _iter_rows_outside(rows, n, q, F, proj=False):
            yield from rec(rows + [r])

    yield from rec([])


def enumerate_sl(n: int, q: int) -> Iterator[Matrix]:
    """Every element of SL_n(q) exactly once: free rows for the first n-1,
    projective representatives for the last row, determinant fixed by
    scaling it."""
    if sl_order(n, q) > ENUMERATION_CAP:
        raise ValueError(f"SL_{n}({q}) has order {sl_order(n, q)} > {ENUMERATION_CAP}")
    F = field_for(q)

    def rec(rows: list[tuple]) -> Iterator[Matrix]:
        if len(rows) == n - 1:
            for r in _iter_rows_outside(rows, n, q, F, proj=True):
                m = tuple(rows) + (r,)
                d = mat_det(m, F)
                if d == 1:
                    yield m
                else:
                    di = F.inv[d]
                    yield m[:-1] + (tuple(F.mul[di][x] for x in r),)
            return
        for r in _iter_rows_outside(rows, n, q, F, proj=False):
            yield from rec(rows + [r])

    yield from rec([])


# ---------------------------------------------------------------------------
# Singer torus and exponent multiples


@lru_cache(maxsize=None)
def primitive_poly(m: int, q: int) -> tuple[int, ...]:
    """Lexicographically least monic primitive polynomial of degree m over
    GF(q), coefficients (field codes) compared low degree first."""
    F = field_for(q)
    group_order = q**m - 1

    def mulmod(a, b, modulus):
        out = [0] * (len(a) + len(b) - 1) if a and b else []
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = F.add[out[i + j]][F.mul[ai][bj]]
        deg = len(modulus) - 1
        for i in range(len(out) - 1, deg - 1, -1):
            c = out[i]
            if c:
                out[i] = 0
                nc = F.neg[c]
                for j, mj in enumerate(modulus[:-1]):
                    out[i - deg + j] = F.add[out[i - deg + j]][F.mul[nc][mj]]
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def full_order(modulus) -> bool:
        for r in factorize(group_order):
            e = group_order // r
            acc: tuple = (1,)
            base: tuple = (0, 1)
            k = e
            while k:
                if k & 1:
                    acc = mulmod(acc, base, modulus)
                k >>= 1
                if k:
                    base = mulmod(base, base, modulus)
            if acc == (1,):
                return False
        return True

    def divides(d, a) -> bool:
        rem = list(a)
        dd = len(d) - 1
        li = F.inv[d[-1]]
        while True:
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < dd or not any(rem):
                break
            c = F.mul[rem[-1]][li]
            nc = F.neg[c]
            shift = len(rem) - 1 - dd
            for j, dj in enumerate(d):
                rem[shift + j] = F.add[rem[shift + j]][F.mul[nc][dj]]
        return not any(rem)

    def irreducible(cand) -> bool:
        for d in range(1, m // 2 + 1):
            for tail in itertools.product(range(q), repeat=d):
                if divides(tuple(tail) + (1,), cand):
                    return False
        return True

    for coeffs in itertools.product(range(q), repeat=m):
        if coeffs[0] == 0:
            continue
        cand = coeffs + (1,)
        if irreducible(cand) and full_order(cand):
            return cand
    raise ArithmeticError(f"no primitive polynomial of degree {m} over GF({q})")


def companion(poly: tuple[int, ...], F: FieldSpec) -> Matrix:
    """Companion matrix of a monic polynomial, acting on row vectors from
    the right: e_i -> e_{i+1}, e_m -> -(c_0 e_1 + ... + c_{m-1} e_m)."""
    m = len(poly) - 1
    rows = []
    for i in range(m - 1):
        rows.append(tuple(1 if j == i + 1 else 0 for j in range(m)))
    rows.append(tuple(F.neg[poly[j]] for j in range(m)))
    return tuple(rows)


def singer_torus_element(n: int, q: int) -> Matrix:
    """Id_2 + C^(q-1) block-diagonal, with C the companion matrix of a
    primitive degree-(n-2) polynomial: a determinant-1 generator of the
    nonsplit torus of SL_{n-2}(q), padded by a 2x2 identity."""
    if n < 5:
        raise ValueError("need n >= 5")
    F = field_for(q)
    C = companion(primitive_poly(n - 2, q), F)
    return block_diag(F, mat_identity(2), mat_pow(C, q - 1, F))


@dataclass(frozen=True)
class SLExponents:
    """Certified multiple E of the exponent of SL_n(q):
    E = p^ceil(log_p n) * lcm_{1<=d<=n} (q^d - 1)."""

    n: int
    q: int
    E: FactoredInt


def exponent_multiple_sl(n: int, q: int) -> SLExponents:
    F = field_for(q)
    p = F.p
    c = 0
    while p**c < n:
        c += 1
    E = lcm_factored([q**d - 1 for d in range(1, n + 1)]).times_prime_power(p, c)
    return SLExponents(n, q, E)


# ---------------------------------------------------------------------------
# contexts, conjugacy classes, serialization


def sl_context(n: int, q: int) -> GroupContext:
    F = field_for(q)
    return GroupContext(
        name=f"SL_{n}({q})",
        identity=mat_identity(n),
        mul=lambda a, b: mat_mul(a, b, F),
        inv=lambda a: mat_inv(a, F),
        pow=lambda a, e: mat_pow(a, e, F),
    )


def gl_context(n: int, q: int) -> GroupContext:
    F = field_for(q)
    return GroupContext(
        name=f"GL_{n}({q})",
        identity=mat_identity(n),
        mul=lambda a, b: mat_mul(a, b, F),
        inv=lambda a: mat_inv(a, F),
        pow=lambda a, e: mat_pow(a, e, F),
    )


def _group_generators(n: int, q: int, special: bool) -> list[Matrix]:
    """Transvection generators (plus a diagonal unit for GL).

    E_{i,j}(c) over an additive basis of GF(q) generates every transvection,
    and the transvections generate SL_n(q)."""
    F = field_for(q)
    basis = [F.p**k for k in range(F.u)]  # codes of 1, x, x^2, ...
    gens = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                for c in basis:
                    gens.append(elementary(n, i, j, c, F))
    if not special:
        for g in range(2, q):
            cand = [list(r) for r in mat_identity(n)]
            cand[0][0] = g
            gens.append(tuple(tuple(r) for r in cand))
    return gens


CLASS_BFS_CAP = 10**6


@lru_cache(maxsize=None)
def conjugacy_class_reps(n: int, q: int, special: bool = True) -> tuple[tuple[Matrix, int], ...]:
    """One representative per conjugacy class with class size, by conjugation
    orbit sweep over the whole (small) group."""
    order = sl_order(n, q) if special else gl_order(n, q)
    if order > CLASS_BFS_CAP:
        raise ValueError(f"group too large for class enumeration ({order})")
    F = field_for(q)
    gens = _group_generators(n, q, special)
    gens_inv = [mat_inv(g, F) for g in gens]
    elements = list(enumerate_sl(n, q) if special else enumerate_gl(n, q))
    unseen = set(elements)
    reps: list[tuple[Matrix, int]] = []
    for m in elements:
        if m not in unseen:
            continue
        orbit = {m}
        frontier = [m]
        while frontier:
            x = frontier.pop()
            for g, gi in zip(gens, gens_inv):
                y = mat_mul(gi, mat_mul(x, g, F), F)
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        unseen -= orbit
        reps.append((m, len(orbit)))
    return tuple(reps)


def mat_to_str(m: Matrix) -> str:
    """Rows ';'-separated, entries ','-separated base-p packed codes."""
    return ";".join(",".join(str(x) for x in row) for row in m)


def mat_from_str(text: str, q: int) -> Matrix:
    rows = tuple(tuple(int(x) for x in row.split(",")) for row in text.split(";"))
    if any(not 0 <= x < q for row in rows for x in row):
        raise ValueError(f"entry out of range for GF({q})")
    return rows
