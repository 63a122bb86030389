"""Free-group word expressions: parse, print, reduce, and evaluate.

Grammar (whitespace insignificant):

    word      ::= term { "*" term }
    term      ::= atom { "^" exponent }
    atom      ::= var | "(" word ")" | "[" word "," word { "," word } "]"
    exponent  ::= ["-"] digits | atom
    var       ::= "x" digits

An integer exponent is a power, an atom exponent is conjugation, and
"^" binds tighter than "*" and associates left.  Brackets are the
left-normed commutator: [a,b,c] means [[a,b],c].

Conventions: x^y = y^-1 x y and [x,y] = x^-1 y^-1 x y.

Evaluation goes through a small register program (explicit work list, no
recursion), which also lets the verification harness pre-fold the parts of a
word that depend only on already-fixed variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, NamedTuple, Union

from .arith import FactoredInt

Exponent = Union[int, FactoredInt]


class ValueClass(NamedTuple):
    """Classification of a word value (shared by permutation and matrix sides)."""

    kind: str  # identity | three_cycle | p_cycle | transvection | double_transvection | other
    param: int | None = None


IDENTITY = ValueClass("identity")
THREE_CYCLE = ValueClass("three_cycle")


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("variable indices start at 1")


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        if len(self.factors) < 1:
            raise ValueError("empty product")


@dataclass(frozen=True, eq=False)
class Power:
    base: "WordExpr"
    exponent: Exponent

    def __eq__(self, other):
        if not isinstance(other, Power):
            return NotImplemented
        return self.base == other.base and int(self.exponent) == int(other.exponent)

    def __hash__(self):
        return hash((Power, self.base, int(self.exponent)))


@dataclass(frozen=True)
class Conjugate:
    base: "WordExpr"
    by: "WordExpr"


@dataclass(frozen=True)
class Commutator:
    args: tuple  # left-normed, at least two entries

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("commutator needs at least two arguments")


WordExpr = Union[Var, Product, Power, Conjugate, Commutator]


def arity(w: WordExpr) -> int:
    """Largest variable index used in w."""
    best = 0
    stack = [w]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            best = max(best, node.index)
        elif isinstance(node, Product):
            stack.extend(node.factors)
        elif isinstance(node, Power):
            stack.append(node.base)
        elif isinstance(node, Conjugate):
            stack.extend((node.base, node.by))
        elif isinstance(node, Commutator):
            stack.extend(node.args)
    return best


# ---------------------------------------------------------------------------
# parsing


class WordSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def _skip_ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self._skip_ws()
        return self.text[self.i] if self.i < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            raise WordSyntaxError(f"expected {ch!r}", self.i)
        self.i += 1

    def digits(self) -> int:
        self._skip_ws()
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if self.i == start:
            raise WordSyntaxError("expected digits", start)
        return int(self.text[start : self.i])

    def word(self) -> WordExpr:
        factors = [self.term()]
        while self.peek() == "*":
            self.take("*")
            factors.append(self.term())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def term(self) -> WordExpr:
        node = self.atom()
        while self.peek() == "^":
            self.take("^")
            c = self.peek()
            if c == "-" or c.isdigit():
                neg = c == "-"
                if neg:
                    self.take("-")
                node = Power(node, -self.digits() if neg else self.digits())
            else:
                node = Conjugate(node, self.atom())
        return node

    def atom(self) -> WordExpr:
        c = self.peek()
        if c == "x":
            pos = self.i
            self.take("x")
            idx = self.digits()
            if idx == 0:
                raise WordSyntaxError("variable index 0", pos)
            return Var(idx)
        if c == "(":
            self.take("(")
            inner = self.word()
            self.take(")")
            return inner
        if c == "[":
            self.take("[")
            args = [self.word()]
            self.take(",")
            args.append(self.word())
            while self.peek() == ",":
                self.take(",")
                args.append(self.word())
            self.take("]")
            return Commutator(tuple(args))
        raise WordSyntaxError(f"unexpected {c!r}" if c else "unexpected end of input", self.i)


def parse_word(text: str) -> WordExpr:
    """Parse grammar text into a WordExpr; raises WordSyntaxError with position."""
    p = _Parser(text)
    node = p.word()
    p._skip_ws()
    if p.i != len(text):
        raise WordSyntaxError("trailing input", p.i)
    return node


# ---------------------------------------------------------------------------
# printing


def _atom_str(w: WordExpr) -> str:
    """Render w so it can stand where the grammar wants an atom."""
    if isinstance(w, Var):
        return f"x{w.index}"
    if isinstance(w, Commutator):
        return print_word(w)
    return "(" + print_word(w) + ")"


def _term_str(w: WordExpr) -> str:
    if isinstance(w, (Var, Commutator)):
        return _atom_str(w)
    if isinstance(w, Power):
        return _atom_str(w.base) + "^" + str(int(w.exponent))
    if isinstance(w, Conjugate):
        return _atom_str(w.base) + "^" + _atom_str(w.by)
    return "(" + print_word(w) + ")"


def print_word(w: WordExpr) -> str:
    """Grammar-conformant text; parse_word(print_word(w)) == w structurally."""
    if isinstance(w, Product):
        return "*".join(_term_str(f) for f in w.factors)
    if isinstance(w, Commutator):
        return "[" + ",".join(print_word(a) for a in w.args) + "]"
    return _term_str(w)


# ---------------------------------------------------------------------------
# free reduction

_EXPANSION_CAP = 10**6


def _concat_reduce(left: list, right: tuple) -> list:
    out = list(left)
    for v, e in right:
        if out and out[-1][0] == v:
            s = out[-1][1] + e
            out.pop()
            if s:
                out.append((v, s))
        elif e:
            out.append((v, e))
    return out


def _invert_syllables(s: tuple) -> tuple:
    return tuple((v, -e) for v, e in reversed(s))


def free_reduce(w: WordExpr) -> tuple:
    """Freely reduced form of w as a tuple of (variable, exponent) syllables.

    Powers of a single generator stay symbolic, so huge exponents cost
    nothing; powers of longer words are expanded (capped at 10**6 letters).
    """
    result: dict[int, tuple] = {}
    stack: list[tuple[WordExpr, bool]] = [(w, False)]
    while stack:
        node, ready = stack.pop()
        nid = id(node)
        if nid in result:
            continue
        if isinstance(node, Var):
            result[nid] = ((node.index, 1),)
            continue
        children: tuple[WordExpr, ...]
        if isinstance(node, Product):
            children = node.factors
        elif isinstance(node, Power):
            children = (node.base,)
        elif isinstance(node, Conjugate):
            children = (node.base, node.by)
        else:
            children = node.args
        if not ready:
            stack.append((node, True))
            stack.extend((c, False) for c in children)
            continue
        parts = [result[id(c)] for c in children]
        if isinstance(node, Product):
            acc: list = []
            for part in parts:
                acc = _concat_reduce(acc, tuple(part))
            result[nid] = tuple(acc)
        elif isinstance(node, Power):
            e = int(node.exponent)
            base = parts[0]
            if e == 0 or not base:
                result[nid] = ()
            elif len(base) == 1:
                v, k = base[0]
                result[nid] = ((v, k * e),) if k * e else ()
            else:
                if e < 0:
                    base = _invert_syllables(base)
                    e = -e
                if len(base) * e > _EXPANSION_CAP:
                    raise ValueError("power too large to expand in free reduction")
                acc = []
                for _ in range(e):
                    acc = _concat_reduce(acc, base)
                result[nid] = tuple(acc)
        elif isinstance(node, Conjugate):
            b, y = parts
            acc = _concat_reduce(list(_invert_syllables(y)), tuple(b))
            result[nid] = tuple(_concat_reduce(acc, tuple(y)))
        else:  # Commutator, left-normed
            acc = tuple(parts[0])
            for nxt in parts[1:]:
                t = _concat_reduce(list(_invert_syllables(acc)), _invert_syllables(nxt))
                t = _concat_reduce(t, acc)
                acc = tuple(_concat_reduce(t, nxt))
            result[nid] = acc
    return result[id(w)]


# ---------------------------------------------------------------------------
# evaluation


@dataclass(frozen=True)
class GroupContext:
    """Minimal group interface words are evaluated against.

    `pow` must accept int or FactoredInt exponents of arbitrary size (and
    sign) and is expected to reduce modulo element orders where the group
    can do that cheaply.  Elements must support ==.
    """

    name: str
    identity: Any
    mul: Callable[[Any, Any], Any]
    inv: Callable[[Any], Any]
    pow: Callable[[Any, Exponent], Any]


@dataclass(frozen=True)
class Program:
    """Word lowered to register code: ops run in order, last register is the value.

    op forms: ('var', i0) | ('const', g) | ('mul', a, b) | ('inv', a) | ('pow', a, e)
    with a, b register indices and i0 a 0-based variable slot.
    """

    ops: tuple
    arity: int


def compile_word(w: WordExpr) -> Program:
    """Lower w to a Program with common subexpressions shared."""
    ops: list[tuple] = []
    memo: dict = {}

    def emit(op: tuple) -> int:
        if op in memo:
            return memo[op]
        ops.append(op)
        memo[op] = len(ops) - 1
        return memo[op]

    def commutator(a: int, b: int) -> int:
        ia = emit(("inv", a))
        ib = emit(("inv", b))
        t = emit(("mul", ia, ib))
        t = emit(("mul", t, a))
        return emit(("mul", t, b))

    done: dict[int, int] = {}
    stack: list[tuple[WordExpr, bool]] = [(w, False)]
    while stack:
        node, ready = stack.pop()
        if id(node) in done:
            continue
        if isinstance(node, Var):
            done[id(node)] = emit(("var", node.index - 1))
            continue
        if isinstance(node, Product):
            children: tuple = node.factors
        elif isinstance(node, Power):
            children = (node.base,)
        elif isinstance(node, Conjugate):
            children = (node.base, node.by)
        else:
            children = node.args
        if not ready:
            stack.append((node, True))
            stack.extend((c, False) for c in children)
            continue
        regs = [done[id(c)] for c in children]
        if isinstance(node, Product):
            r = regs[0]
            for nxt in regs[1:]:
                r = emit(("mul", r, nxt))
        elif isinstance(node, Power):
            r = emit(("pow", regs[0], int(node.exponent)))
        elif isinstance(node, Conjugate):
            iy = emit(("inv", regs[1]))
            t = emit(("mul", iy, regs[0]))
            r = emit(("mul", t, regs[1]))
        else:
            r = regs[0]
            for nxt in regs[1:]:
                r = commutator(r, nxt)
        done[id(node)] = r
    return Program(tuple(ops), arity(w))


def run_program(prog: Program, ctx: GroupContext, assignment) -> Any:
    if len(assignment) < prog.arity:
        raise ValueError(f"assignment of length {len(assignment)} for arity {prog.arity}")
    mul, inv, pw = ctx.mul, ctx.inv, ctx.pow
    regs: list = []
    push = regs.append
    for op in prog.ops:
        tag = op[0]
        if tag == "mul":
            push(mul(regs[op[1]], regs[op[2]]))
        elif tag == "inv":
            push(inv(regs[op[1]]))
        elif tag == "pow":
            push(pw(regs[op[1]], op[2]))
        elif tag == "var":
            push(assignment[op[1]])
        else:  # const
            push(op[1])
    return regs[-1] if regs else ctx.identity


def specialize(prog: Program, ctx: GroupContext, bound: dict[int, Any]) -> Program:
    """Fold every op whose inputs depend only on `bound` variables (1-based keys).

    The returned program still reads the full assignment for unbound
    variables, so run_program(specialize(p, ctx, {1: g}), ctx, (g, h)) equals
    run_program(p, ctx, (g, h)).
    """
    mul, inv, pw = ctx.mul, ctx.inv, ctx.pow
    const: dict[int, Any] = {}
    new_ops: list[tuple] = []
    remap: dict[int, int] = {}

    def ref(i: int) -> int:
        """New index for old register i, materializing folded constants."""
        if i not in remap:
            new_ops.append(("const", const[i]))
            remap[i] = len(new_ops) - 1
        return remap[i]

    for i, op in enumerate(prog.ops):
        tag = op[0]
        if tag == "var":
            if op[1] + 1 in bound:
                const[i] = bound[op[1] + 1]
            else:
                new_ops.append(op)
                remap[i] = len(new_ops) - 1
        elif tag == "const":
            const[i] = op[1]
        elif tag == "inv":
            if op[1] in const:
                const[i] = inv(const[op[1]])
            else:
                new_ops.append(("inv", ref(op[1])))
                remap[i] = len(new_ops) - 1
        elif tag == "pow":
            if op[1] in const:
                const[i] = pw(const[op[1]], op[2])
            else:
                new_ops.append(("pow", ref(op[1]), op[2]))
                remap[i] = len(new_ops) - 1
        else:  # mul
            a, b = op[1], op[2]
            if a in const and b in const:
                const[i] = mul(const[a], const[b])
            else:
                new_ops.append(("mul", ref(a), ref(b)))
                remap[i] = len(new_ops) - 1
    last = len(prog.ops) - 1
    if last in const:
        new_ops.append(("const", const[last]))
    return Program(tuple(new_ops), prog.arity)


def evaluate(w: WordExpr, assignment, ctx: GroupContext) -> Any:
    """w(g_1, ..., g_d) under the module's conventions."""
    return run_program(compile_word(w), ctx, assignment)
