"""Shared test helpers: random word generation and the 3-cycle product BFS."""

from itertools import combinations

from fewvalues.perms import Permutation
from fewvalues.words import Commutator, Conjugate, Power, Product, Var


def random_word(rng, max_var=4, depth=4):
    """Random WordExpr for round-trip tests."""
    kind = rng.randrange(5) if depth > 0 else 0
    if kind == 0:
        return Var(rng.randrange(1, max_var + 1))
    if kind == 1:
        k = rng.randrange(2, 4)
        return Product(tuple(random_word(rng, max_var, depth - 1) for _ in range(k)))
    if kind == 2:
        e = rng.choice([-3, -1, 0, 2, 5, 10, 10**30 + 7])
        return Power(random_word(rng, max_var, depth - 1), e)
    if kind == 3:
        return Conjugate(random_word(rng, max_var, depth - 1), random_word(rng, max_var, depth - 1))
    k = rng.randrange(2, 4)
    return Commutator(tuple(random_word(rng, max_var, depth - 1) for _ in range(k)))


def products_of_three_cycles_types(n, steps):
    """Cycle types reachable as products of exactly j <= steps 3-cycles.

    Type-level BFS is sound because each reachable set is closed under
    conjugation, so one representative per type suffices."""
    three_cycles = []
    for pts in combinations(range(1, n + 1), 3):
        three_cycles.append(Permutation.from_cycles(n, [pts]))
        three_cycles.append(Permutation.from_cycles(n, [(pts[0], pts[2], pts[1])]))
    reps = {(): Permutation.identity(n)}
    reachable = [set(reps)]
    for _ in range(steps):
        nxt = {}
        for t, rep in reps.items():
            for c in three_cycles:
                prod = rep * c
                nxt.setdefault(prod.cycle_type().lengths, prod)
        reps = nxt
        reachable.append(set(reps))
    return reachable
