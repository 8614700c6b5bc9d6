"""A small named corpus of Rota-Baxter dialgebras for property checks.

Base members satisfy both associativities and the Rota-Baxter equation.
Curated single-entry mutations are kept only if they still do; the broken
members deliberately violate at least one of those hypotheses. Two base
members fail the restricted equations, so the tridendriform equivalence is
exercised in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebras import (
    LinearOperator,
    StructureAlgebra,
    from_central_weight,
    from_td_operator,
    mutate,
    polynomial_quotient,
)
from .freealg import Alphabet, truncate
from .verify import check_suite

HYPOTHESES = ("assoc_left", "assoc_right", "rb_tcda")


@dataclass(frozen=True)
class Member:
    name: str
    algebra: StructureAlgebra
    origin: str  # base, mutation or broken


def central_weight_member(n: int) -> StructureAlgebra:
    """``k[t]/(t^n)``, ``x ⊢ y = x t y`` and ``P(x) = -t x``."""
    A = from_central_weight(polynomial_quotient(n), {1: 1})
    P = LinearOperator(n, {j: {j + 1: Fraction(-1)} for j in range(n - 1)})
    return A.with_operator("P", P)


def td_member(n: int = 3, c=2) -> StructureAlgebra:
    """``k[t]/(t^n)`` with the TD operator ``P = c·id``."""
    return from_td_operator(polynomial_quotient(n), LinearOperator.identity(n, c))


def unrestricted_member(variant: int = 0) -> StructureAlgebra:
    """2-dimensional Rota-Baxter dialgebras (found by search) violating the restricted equations."""
    left = {(0, 0): {0: -1, 1: -1}, (0, 1): {1: -1}, (1, 0): {1: -1}}
    if variant == 0:
        right = {(0, 0): {0: -1}, (0, 1): {1: -1}, (1, 0): {1: -1}, (1, 1): {0: -1}}
        P = LinearOperator.from_rows([[0, 0], [0, -1]])
    else:
        right = {(0, 0): {1: -1}, (0, 1): {1: -1}, (1, 0): {1: -1}, (1, 1): {1: -1}}
        P = LinearOperator.from_rows([[0, 0], [-1, 0]])
    return StructureAlgebra(("a", "b"), left=left, right=right, operators={"P": P})


def truncation_member(q: int, d: int, sign=-1) -> StructureAlgebra:
    return truncate(Alphabet(tuple("xyzuvw"[:q])), d, sign)


@lru_cache(maxsize=None)
def _base():
    out = []
    for q in (1, 2):
        for d in (2, 3):
            out.append(Member(f"free_q{q}_d{d}_neg", truncation_member(q, d), "base"))
    for n in (2, 3, 4):
        out.append(Member(f"central_n{n}", central_weight_member(n), "base"))
    out.append(Member("td_n3_c2", td_member(3, 2), "base"))
    out.append(Member("unrestricted_a", unrestricted_member(0), "base"))
    out.append(Member("unrestricted_b", unrestricted_member(1), "base"))
    return tuple(out)


def base_members():
    return _base()


# (base, where, i, j, k, value) with 0-based indices, see ``algebras.mutate``
PRESERVING = (
    ("free_q1_d2_neg", "left", 1, 1, 1, -1),
    ("free_q1_d2_neg", "op:P", 0, 0, 1, 2),
    ("free_q1_d3_neg", "left", 1, 1, 3, 1),
    ("free_q2_d2_neg", "left", 2, 2, 2, 1),
    ("central_n2", "right", 0, 0, 1, 2),
    ("central_n3", "left", 0, 0, 2, -1),
    ("central_n4", "op:P", 0, 0, 3, 2),
)

BROKEN = (
    ("central_n2", "right", 1, 1, 0, 1),
    ("central_n3", "left", 1, 1, 0, 1),
    ("free_q1_d2_neg", "right", 0, 0, 0, 1),
    ("td_n3_c2", "right", 1, 1, 1, 1),
    ("central_n2", "op:P", 0, 0, 0, 1),
)


def _mutant(spec):
    base = {m.name: m.algebra for m in _base()}
    name, where, i, j, k, v = spec
    label = f"{name}~{where.replace(':', '_')}_{i + 1}_{j + 1}_{k + 1}={v}"
    return label, mutate(base[name], where, i, j, k, v)


def hypotheses_hold(A, **kw) -> bool:
    return all(check_suite(A, s, **kw).passed for s in HYPOTHESES)


@lru_cache(maxsize=None)
def preserving_mutations():
    """Curated mutations that keep the hypotheses; the others are discarded."""
    out = []
    for spec in PRESERVING:
        label, A = _mutant(spec)
        if hypotheses_hold(A):
            out.append(Member(label, A, "mutation"))
    return tuple(out)


@lru_cache(maxsize=None)
def broken_members():
    out = [Member(f"free_q{q}_d{d}_pos", truncation_member(q, d, 1), "broken") for q, d in ((1, 2), (1, 3), (2, 2))]
    for spec in BROKEN:
        label, A = _mutant(spec)
        out.append(Member(label, A, "broken"))
    return tuple(out)


def rtca_corpus():
    """Members satisfying both associativities and the Rota-Baxter equation."""
    return base_members() + preserving_mutations()


def full_corpus():
    return rtca_corpus() + broken_members()


def single_entry_mutations(A: StructureAlgebra, values=(-1, 1), operators=True):
    """Every single-entry change of a product table (and operator) to one of ``values``."""
    wheres = list(A.PRODUCTS) + ([f"op:{name}" for name in sorted(A.operators)] if operators else [])
    for where in wheres:
        is_op = where.startswith("op:")
        for i in range(1 if is_op else A.dim):
            for j in range(A.dim):
                for k in range(A.dim):
                    if is_op:
                        cur = A.operator(where[3:]).columns.get(j, {}).get(k, 0)
                    else:
                        cur = A.table(where).get((i, j), {}).get(k, 0)
                    for v in values:
                        if Fraction(v) != cur:
                            yield (where, i, j, k, v), mutate(A, where, i, j, k, v)


def first_flip(A, suite, values=(-1, 1), **kw):
    """First single-entry mutation making ``suite`` fail on ``A``, or None."""
    for spec, M in single_entry_mutations(A, values):
        if not check_suite(M, suite, cap=1, **kw).passed:
            return spec
    return None
