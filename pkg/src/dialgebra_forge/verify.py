"""Identity verification on finite algebras and on the free dialgebra.

Exhaustive mode evaluates a multilinear identity on every tuple of basis
vectors, which decides it exactly. Sample mode evaluates on seeded random
rational vectors; it also accepts non-multilinear identities, in which case
the report is flagged heuristic.

Reports are deterministic: tuples are enumerated lexicographically, work is
split on the first index only, and partial results are merged in range order.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import kernel
from .algebras import FiniteAlgebra, format_vector
from .dsl import (
    Add,
    Bin,
    IdentityDecl,
    Scale,
    Sub,
    Un,
    Unit,
    Var,
    Zero,
    bind,
    eval_ast,
    parse_identity,
    validate_multilinear,
)
from .errors import BindingError, ForgeError, NotMultilinearError
from .freealg import LEFT, RIGHT, Alphabet, FreeElement, basis_words, elem_prod, rb_p
from .program import compile_identity
from .suites import SUITES, load_suite

EXHAUSTIVE, SAMPLE = "exhaustive", "sample"
DEFAULT_CAP = 10


@dataclass(frozen=True)
class Counterexample:
    identity: str
    tuple: tuple  # 0-based basis indices, or (sample number,) in sample mode
    residual: dict
    sample: bool = False

    def where(self):
        if self.sample:
            return f"sample={self.tuple[0] + 1}"
        return ",".join(str(i + 1) for i in self.tuple)


@dataclass(frozen=True)
class CheckReport:
    suite: str
    mode: str
    tuples: int
    counterexamples: tuple = ()
    failures: int = 0
    heuristic: bool = False
    labels: tuple = field(default=(), compare=False)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def lines(self):
        head = f"{self.verdict} {self.suite} tuples={self.tuples}"
        if self.mode != EXHAUSTIVE:
            head += f" mode={self.mode}"
        if self.heuristic:
            head += " heuristic"
        if not self.passed:
            head += f" failures={self.failures}"
        out = [head]
        for cx in self.counterexamples:
            res = _format_residual(cx.residual, self.labels)
            out.append(f"FAIL {self.suite} {cx.identity} {cx.where()} residual={res}")
        return out

    def text(self):
        return "\n".join(self.lines()) + "\n"

    def __str__(self):
        return self.text()


def _format_residual(res, labels):
    if isinstance(res, FreeElement):
        return str(res)
    return format_vector(res, labels)


def merge(reports, name=None, cap=DEFAULT_CAP):
    """Conjunction of reports, keeping the first ``cap`` counterexamples."""
    reports = list(reports)
    cxs = tuple(itertools.chain.from_iterable(r.counterexamples for r in reports))[:cap]
    return CheckReport(
        suite=name or (reports[0].suite if reports else ""),
        mode=reports[0].mode if reports else EXHAUSTIVE,
        tuples=sum(r.tuples for r in reports),
        counterexamples=cxs,
        failures=sum(r.failures for r in reports),
        heuristic=any(r.heuristic for r in reports),
        labels=reports[0].labels if reports else (),
    )


# ---------------------------------------------------------------- finite algebras


def _as_decl(ident) -> IdentityDecl:
    return parse_identity(ident) if isinstance(ident, (str, bytes)) else ident


def _ranges(dim, parts):
    parts = max(1, min(parts, dim))
    step, extra = divmod(dim, parts)
    out, lo = [], 0
    for n in range(parts):
        hi = lo + step + (1 if n < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def _run_range(args):
    prog, lo, hi, cap, backend = args
    return kernel.run(prog, lo, hi, cap, backend)


def _exhaustive(A, d, ident_id, binding, cap, jobs, backend, pool):
    report = validate_multilinear(d)
    if not report:
        raise NotMultilinearError(f"{ident_id}: {report}; exhaustive mode needs a multilinear identity")
    bound = bind(d, A, binding)
    prog = compile_identity(d, bound)
    nvars = len(d.vars)
    first_range = A.dim if nvars else 1
    jobs = max(1, jobs)
    chunks = _ranges(first_range, jobs * 4 if jobs > 1 else 1)
    tasks = [(prog, lo, hi, cap, backend) for lo, hi in chunks]
    if pool is not None and len(tasks) > 1:
        parts = list(pool.map(_run_range, tasks))
    else:
        parts = [_run_range(t) for t in tasks]
    failures = sum(f for f, _ in parts)
    examples = list(itertools.chain.from_iterable(ex for _, ex in parts))[:cap]
    cxs = tuple(
        Counterexample(ident_id, tup, {k: Fraction(v, prog.scale) for k, v in sorted(res.items())})
        for tup, res in examples
    )
    return CheckReport(ident_id, EXHAUSTIVE, A.dim**nvars, cxs, failures, False, A.basis)


def random_vector(rng: random.Random, dim, span=9, denominators=5):
    """Dense random rational vector; entries ``a/b`` with ``|a| <= span``."""
    return {i: Fraction(rng.randint(-span, span), rng.randint(1, denominators)) for i in range(dim)}


def _sampled(A, d, ident_id, binding, samples, seed, cap):
    heuristic = not validate_multilinear(d)
    bound = bind(d, A, binding)
    rng = random.Random(f"{seed}/{ident_id}")
    failures, cxs = 0, []
    for n in range(samples):
        assignment = {v: random_vector(rng, A.dim) for v in d.vars}
        res = eval_ast(d, bound, assignment=assignment)
        if res:
            failures += 1
            if len(cxs) < cap:
                cxs.append(Counterexample(ident_id, (n,), dict(sorted(res.items())), sample=True))
    return CheckReport(ident_id, SAMPLE, samples, tuple(cxs), failures, heuristic, A.basis)


def _executor(jobs):
    return ProcessPoolExecutor(max_workers=jobs) if jobs and jobs > 1 else None


def check_identity(
    A: FiniteAlgebra,
    ident,
    binding: Mapping | None = None,
    mode: str = EXHAUSTIVE,
    samples: int = 1000,
    seed: int = 0,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
    ident_id: str = "identity",
    backend: str | None = None,
    _pool=None,
) -> CheckReport:
    """Check one identity (source text or parsed declaration) on ``A``."""
    d = _as_decl(ident)
    if cap < 1:
        raise ValueError("counterexample cap must be at least 1")
    if mode == EXHAUSTIVE:
        pool = _pool if _pool is not None else _executor(jobs)
        try:
            return _exhaustive(A, d, ident_id, binding, cap, jobs, backend, pool)
        finally:
            if pool is not None and _pool is None:
                pool.shutdown()
    if mode == SAMPLE:
        return _sampled(A, d, ident_id, binding, samples, seed, cap)
    raise ValueError(f"unknown mode {mode!r}")


def suite_binding(name, overrides: Mapping | None = None):
    spec = SUITES[name] if name in SUITES else None
    out = {}
    if spec is not None:
        out.update(spec.binding)
        out.update(spec.params)
    out.update(overrides or {})
    return out


def check_suite(
    A: FiniteAlgebra,
    name: str,
    mode: str = EXHAUSTIVE,
    samples: int = 1000,
    seed: int = 0,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
    binding: Mapping | None = None,
    backend: str | None = None,
) -> CheckReport:
    """Run every identity of a built-in suite; no short-circuiting."""
    idents = load_suite(name)
    full = suite_binding(name, binding)
    pool = _executor(jobs) if mode == EXHAUSTIVE else None
    try:
        reports = []
        remaining = cap
        for ident_id, d in idents:
            r = check_identity(
                A, d, _restrict(full, d), mode, samples, seed, max(remaining, 1), jobs, ident_id, backend, pool
            )
            remaining -= len(r.counterexamples)
            reports.append(r)
    finally:
        if pool is not None:
            pool.shutdown()
    return merge(reports, name, cap)


def _restrict(binding, d):
    names = set(d.binary) | set(d.unary) | set(d.params)
    return {k: v for k, v in binding.items() if k in names}


def passes(A, name, **kw) -> bool:
    return check_suite(A, name, **kw).passed


# ---------------------------------------------------------------- free dialgebra


def _free_eval(node, alphabet, binding, values):
    if isinstance(node, Var):
        return values[node.name]
    if isinstance(node, Zero):
        return FreeElement.zero(alphabet)
    if isinstance(node, Unit):
        raise BindingError("the free dialgebra has no unit")
    if isinstance(node, Scale):
        if node.param:
            c = Fraction(binding[node.param]) if node.param in binding else None
            if c is None:
                raise BindingError(f"parameter {node.param!r} has no value")
        else:
            c = 1
        return (node.coef * c) * _free_eval(node.arg, alphabet, binding, values)
    if isinstance(node, Add):
        return _free_eval(node.lhs, alphabet, binding, values) + _free_eval(node.rhs, alphabet, binding, values)
    if isinstance(node, Sub):
        return _free_eval(node.lhs, alphabet, binding, values) - _free_eval(node.rhs, alphabet, binding, values)
    if isinstance(node, Bin):
        x = _free_eval(node.lhs, alphabet, binding, values)
        y = _free_eval(node.rhs, alphabet, binding, values)
        spec = binding.get(node.op, node.op)
        if isinstance(spec, str):
            spec = {spec: 1}
        out = FreeElement.zero(alphabet)
        for which, c in spec.items():
            if which not in (LEFT, RIGHT):
                raise BindingError(f"the free dialgebra has no product {which!r}")
            out = out + Fraction(c) * elem_prod(x, y, which)
        return out
    if isinstance(node, Un):
        x = _free_eval(node.arg, alphabet, binding, values)
        spec = binding.get(node.op, node.op)
        if spec == "id":
            return x
        if spec != "P":
            raise BindingError(f"the free dialgebra has no operator {spec!r}")
        return rb_p(x)
    raise TypeError(f"not an expression node: {node!r}")


def free_tuples(alphabet: Alphabet, nvars: int, max_total: int):
    """Basis-word tuples with total degree <= max_total, lexicographic in canonical order."""
    words = basis_words(alphabet, max(max_total - (nvars - 1), 1))

    def rec(prefix, budget):
        if len(prefix) == nvars:
            yield tuple(prefix)
            return
        left = nvars - len(prefix) - 1
        for w in words:
            if w.degree + left <= budget:
                yield from rec(prefix + [w], budget - w.degree)

    yield from rec([], max_total)


def check_free_identity(ident, alphabet: Alphabet, max_total: int, binding=None, ident_id="identity", cap=DEFAULT_CAP):
    """Check an identity on the free dialgebra over all word tuples of bounded total degree."""
    d = _as_decl(ident)
    report = validate_multilinear(d)
    if not report:
        raise NotMultilinearError(f"{ident_id}: {report}")
    binding = dict(binding or {})
    count, failures, cxs = 0, 0, []
    for tup in free_tuples(alphabet, len(d.vars), max_total):
        values = {v: FreeElement.basis(alphabet, w) for v, w in zip(d.vars, tup)}
        res = _free_eval(d.lhs, alphabet, binding, values) - _free_eval(d.rhs, alphabet, binding, values)
        count += 1
        if not res.is_zero():
            failures += 1
            if len(cxs) < cap:
                cxs.append(_FreeCounterexample(ident_id, tup, res, alphabet=alphabet))
    return CheckReport(ident_id, EXHAUSTIVE, count, tuple(cxs), failures, False, ())


@dataclass(frozen=True)
class _FreeCounterexample(Counterexample):
    alphabet: Alphabet | None = None

    def where(self):
        return ",".join(w.text(self.alphabet) for w in self.tuple)


def check_free_suite(name, alphabet: Alphabet, max_total: int, binding=None, cap=DEFAULT_CAP):
    full = suite_binding(name, binding)
    full.setdefault("l", LEFT)
    full.setdefault("r", RIGHT)
    reports = [check_free_identity(d, alphabet, max_total, full, ident_id, cap) for ident_id, d in load_suite(name)]
    return merge(reports, name, cap)


__all__ = [
    "CheckReport",
    "Counterexample",
    "ForgeError",
    "check_identity",
    "check_suite",
    "check_free_identity",
    "check_free_suite",
    "free_tuples",
    "merge",
    "passes",
    "random_vector",
    "suite_binding",
]
