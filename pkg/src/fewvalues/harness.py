"""Verify word-image claims exhaustively, by conjugacy class, or by seeded
sampling, producing mergeable machine-readable reports.

Exhaustive-by-class iterates the first variable over conjugacy class
representatives and the remaining variable over the whole group, which
covers the full image because word maps commute with conjugation
(w(x^g, y^g) = w(x, y)^g, so the value classes over a class representative's
slice are exactly those over the whole class).

Jobs are cut into deterministic chunks (one per class representative, or
fixed-size sample batches with seeds derived from the master seed); chunk
reports merge associatively, and --threads > 1 runs chunks in worker
processes.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from random import Random

from .altwords import (
    WitnessSearchError,
    construct_word_alt,
    construct_word_pcycle,
    construct_word_sym,
    witness_alt,
)
from .matgf import (
    classify_sl_value,
    conjugacy_class_reps,
    enumerate_gl,
    enumerate_sl,
    field_for,
    gl_context,
    gl_order,
    mat_to_str,
    random_gl,
    random_sl,
    sl_context,
    sl_order,
)
from .perms import (
    Permutation,
    alt_class_reps,
    classify_perm_value,
    iter_alt_tuples,
    iter_sym_tuples,
    perm_context,
    random_even_perm,
    random_perm,
    sym_class_reps,
)
from .slwords import WitnessSearchError as SLWitnessSearchError
from .slwords import construct_word_sl, witness_sl
from .words import compile_word, run_program, specialize

CLASS_KEYS = ("identity", "three_cycle", "p_cycle", "transvection", "double_transvection", "other")
VIOLATION_CAP = 100
EXHAUSTIVE_CLASS_CAP = 10**8  # (#class reps) * |G| evaluations
EXHAUSTIVE_FULL_CAP = 10**7  # |G| for single-variable words
SAMPLE_CHUNK = 5000


class GroupTooLargeError(ValueError):
    """The requested exhaustive mode exceeds the configured budget."""


@dataclass
class VerifyReport:
    group: dict
    word: str
    image_spec: tuple
    mode: str
    seed: int
    evaluations: int = 0
    classes: dict = field(default_factory=lambda: {k: 0 for k in CLASS_KEYS})
    violations: list = field(default_factory=list)
    witness: dict | None = None
    witness_ok: bool = False
    elapsed_ms: int = 0

    @property
    def nonidentity_seen(self) -> bool:
        return any(self.classes[k] for k in CLASS_KEYS if k != "identity" and k in self.image_spec)

    @property
    def passed(self) -> bool:
        if self.violations:
            return False
        if self.group.get("p"):
            return True  # p-cycle claims are image-discipline only
        return self.nonidentity_seen or self.witness_ok

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "word": self.word,
            "image_spec": list(self.image_spec),
            "mode": self.mode,
            "seed": self.seed,
            "evaluations": self.evaluations,
            "classes": dict(self.classes),
            "violations": self.violations,
            "witness": self.witness,
            "pass": self.passed,
            "elapsed_ms": self.elapsed_ms,
        }


def merge_reports(a: VerifyReport, b: VerifyReport) -> VerifyReport:
    """Combine reports from disjoint chunks of one job (associative and
    commutative on the counts; violations keep first-chunk-first order)."""
    if (a.group, a.word, a.mode, a.seed) != (b.group, b.word, b.mode, b.seed):
        raise ValueError("reports belong to different jobs")
    out = VerifyReport(a.group, a.word, a.image_spec, a.mode, a.seed)
    out.evaluations = a.evaluations + b.evaluations
    out.classes = {k: a.classes[k] + b.classes[k] for k in CLASS_KEYS}
    out.violations = (a.violations + b.violations)[:VIOLATION_CAP]
    out.witness = a.witness if a.witness is not None else b.witness
    out.witness_ok = a.witness_ok or b.witness_ok
    out.elapsed_ms = a.elapsed_ms + b.elapsed_ms
    return out


# ---------------------------------------------------------------------------
# job plumbing


def _perm_str(images: tuple) -> str:
    return str(Permutation(images))


def _job_for(family: str, n: int, q: int | None, p: int | None):
    """(plan, ctx, classify, in_spec, show, enumerate, order, sampler)."""
    if family in ("alt", "sym"):
        if family == "alt":
            plan = construct_word_pcycle(n, p) if p else construct_word_alt(n)
        else:
            plan = construct_word_sym(n)
        ctx = perm_context(n)
        classify = classify_perm_value
        if p:
            spec = ("identity", "p_cycle")

            def in_spec(v):
                return v.kind == "identity" or (v.kind == "p_cycle" and v.param == p)

        else:
            spec = ("identity", "three_cycle")

            def in_spec(v):
                return v.kind in ("identity", "three_cycle")

        if family == "alt":
            order = factorial(n) // 2
            enum = lambda: iter_alt_tuples(n)
            reps = lambda: [(r.images, s) for r, s in alt_class_reps(n)]
            sampler = lambda rng: random_even_perm(n, rng).images
        else:
            order = factorial(n)
            enum = lambda: iter_sym_tuples(n)
            reps = lambda: [(r.images, s) for r, s in sym_class_reps(n)]
            sampler = lambda rng: random_perm(n, rng).images
        return plan, ctx, classify, in_spec, spec, _perm_str, enum, reps, order, sampler

    plan = construct_word_sl(n, q)
    F = field_for(q)
    classify = lambda m: classify_sl_value(m, F)
    spec = plan.image_spec

    def in_spec(v):
        return v.kind in spec

    if family == "sl":
        ctx = sl_context(n, q)
        order = sl_order(n, q)
        enum = lambda: enumerate_sl(n, q)
        reps = lambda: conjugacy_class_reps(n, q, special=True)
        sampler = lambda rng: random_sl(n, q, rng)
    else:
        ctx = gl_context(n, q)
        order = gl_order(n, q)
        enum = lambda: enumerate_gl(n, q)
        reps = lambda: conjugacy_class_reps(n, q, special=False)
        sampler = lambda rng: random_gl(n, q, rng)
    return plan, ctx, classify, in_spec, spec, mat_to_str, enum, reps, order, sampler


def _run_chunk(spec: dict) -> dict:
    """Evaluate one chunk; deterministic given the spec (worker-safe)."""
    family, n, q, p = spec["family"], spec["n"], spec.get("q"), spec.get("p")
    plan, ctx, classify, in_spec, _, show, enum, reps_fn, _, sampler = _job_for(family, n, q, p)
    prog = compile_word(plan.word)
    counts = {k: 0 for k in CLASS_KEYS}
    violations: list[dict] = []
    evaluations = 0

    def record(value, assignment):
        nonlocal evaluations
        v = classify(value)
        counts[v.kind] += 1
        evaluations += 1
        if not in_spec(v) and len(violations) < VIOLATION_CAP:
            violations.append(
                {"assignment": [show(g) for g in assignment], "value": show(value), "value_class": v.kind}
            )

    kind, *args = spec["chunk"]
    if kind == "rep":
        rep_index = args[0]
        rep = reps_fn()[rep_index][0]
        if plan.arity == 1:
            value = run_program(prog, ctx, (rep,))
            record(value, (rep,))
        else:
            part = specialize(prog, ctx, {1: rep})
            for y in enum():
                record(run_program(part, ctx, (None, y)), (rep, y))
    elif kind == "full":
        for x in enum():
            record(run_program(prog, ctx, (x,)), (x,))
    else:  # sample batch
        batch_index, count = args
        rng = Random(f"{spec['seed']}:{batch_index}")  # derived per-batch seed
        for _ in range(count):
            assignment = tuple(sampler(rng) for _ in range(plan.arity))
            record(run_program(prog, ctx, assignment), assignment)
    return {"evaluations": evaluations, "classes": counts, "violations": violations}


def _execute(base: VerifyReport, chunk_specs: list[dict], threads: int) -> VerifyReport:
    start = time.monotonic()
    if threads > 1 and len(chunk_specs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_chunk, chunk_specs))
    else:
        results = [_run_chunk(s) for s in chunk_specs]
    for r in results:
        base.evaluations += r["evaluations"]
        for k in CLASS_KEYS:
            base.classes[k] += r["classes"][k]
        room = VIOLATION_CAP - len(base.violations)
        if room > 0:
            base.violations.extend(r["violations"][:room])
    base.elapsed_ms = int((time.monotonic() - start) * 1000)
    return base


def _verify(family: str, n: int, q: int | None, p: int | None, mode: str, budget: int, seed: int, threads: int) -> VerifyReport:
    plan, ctx, classify, in_spec, spec, show, enum, reps_fn, order, sampler = _job_for(family, n, q, p)
    group = {"kind": family, "n": n}
    if q is not None:
        group["q"] = q
    if p is not None:
        group["p"] = p
    base = VerifyReport(group, plan.word_text, tuple(spec), mode, seed)
    common = {"family": family, "n": n, "q": q, "p": p, "seed": seed}

    if mode == "exhaustive":
        if plan.arity != 1:
            raise GroupTooLargeError(
                f"full enumeration needs a single-variable word (arity {plan.arity}); "
                "use exhaustive-classes or sample"
            )
        if order > EXHAUSTIVE_FULL_CAP:
            raise GroupTooLargeError(f"group order {order} exceeds {EXHAUSTIVE_FULL_CAP}")
        chunks = [dict(common, chunk=("full",))]
    elif mode == "exhaustive-classes":
        reps = reps_fn()
        cost = len(reps) * (order if plan.arity > 1 else 1)
        if plan.arity > 2:
            raise GroupTooLargeError(f"exhaustive-classes needs arity <= 2, word has {plan.arity}")
        if cost > EXHAUSTIVE_CLASS_CAP:
            raise GroupTooLargeError(f"{cost} evaluations exceed {EXHAUSTIVE_CLASS_CAP}")
        chunks = [dict(common, chunk=("rep", i)) for i in range(len(reps))]
    elif mode == "sample":
        chunks = []
        left, i = budget, 0
        while left > 0:
            size = min(SAMPLE_CHUNK, left)
            chunks.append(dict(common, chunk=("sample", i, size)))
            left -= size
            i += 1
    else:
        raise ValueError(f"unknown mode {mode!r}")

    base = _execute(base, chunks, threads)

    # attach a witness where a constructor exists
    if family == "alt" and p is None:
        try:
            tr = witness_alt(n, seed=seed)
            base.witness = tr.to_json()
            base.witness_ok = tr.to_json()["value_class"] == "three_cycle"
        except WitnessSearchError as e:
            base.witness = {"error": str(e)}
    elif family in ("sl", "gl"):
        try:
            tr = witness_sl(n, q, seed=seed)
            base.witness = tr.to_json()
            base.witness_ok = tr.value_class == "transvection"
        except SLWitnessSearchError as e:
            base.witness = {"error": str(e)}
    return base


def verify_image_alt(
    n: int, mode: str = "sample", budget: int = 10**4, seed: int = 0, p: int | None = None, threads: int = 1
) -> VerifyReport:
    """Check that the Alt(n) word only takes identity and 3-cycle values
    (or identity and p-cycles when p is given)."""
    return _verify("alt", n, None, p, mode, budget, seed, threads)


def verify_image_sym(
    n: int, mode: str = "sample", budget: int = 10**4, seed: int = 0, threads: int = 1
) -> VerifyReport:
    """Check that the Sym(n) word only takes identity and 3-cycle values."""
    return _verify("sym", n, None, None, mode, budget, seed, threads)


def verify_image_sl(
    n: int,
    q: int,
    mode: str = "sample",
    budget: int = 10**4,
    seed: int = 0,
    gl: bool = False,
    threads: int = 1,
) -> VerifyReport:
    """Check that the SL_n(q) word only takes identity and transvection
    values (double transvections included for SL_4(2)).  With gl set the
    assignments range over GL_n(q); the claim only extends to n outside
    {3, 4}."""
    if gl and n in (3, 4):
        raise ValueError("the GL variant is only claimed for n outside {3, 4}")
    return _verify("gl" if gl else "sl", n, q, None, mode, budget, seed, threads)


def equivariance_selftest(ctx, word, sample, trials: int = 1000, seed: int = 0) -> bool:
    """w(x_1^g, ..., x_d^g) == w(x_1, ..., x_d)^g on random data.

    This is the identity that justifies exhaustive-by-class verification.
    """
    from .words import arity as word_arity

    prog = compile_word(word)
    d = word_arity(word)
    rng = Random(seed)

    def conj(m, g):
        return ctx.mul(ctx.mul(ctx.inv(g), m), g)

    for _ in range(trials):
        args = tuple(sample(rng) for _ in range(d))
        g = sample(rng)
        lhs = run_program(prog, ctx, tuple(conj(a, g) for a in args))
        rhs = conj(run_program(prog, ctx, args), g)
        if lhs != rhs:
            return False
    return True
