"""Words with small value sets in Alt(n), Sym(n) and SL_n(q).

Conventions used throughout (all tests depend on these):

  x^y  = y^-1 * x * y          (conjugation)
  [x, y] = x^-1 * y^-1 * x * y   (commutator)
  [a, b, c, ...] = [[a, b], c, ...]  (left-normed)

Permutations act on points from the right, and matrices act on row
vectors from the right, so composition reads left to right.
"""

__version__ = "0.1.0"
