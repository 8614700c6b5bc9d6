import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dialgebra_forge import kernel
from dialgebra_forge.algebras import StructureAlgebra, mutate, polynomial_quotient
from dialgebra_forge.corpus import first_flip, full_corpus, truncation_member
from dialgebra_forge.derive import commutator_lie, postlie_of, tridendriform_of
from dialgebra_forge.dsl import bind, eval_ast, parse_identity
from dialgebra_forge.errors import BindingError, NotMultilinearError
from dialgebra_forge.freealg import Alphabet
from dialgebra_forge.program import compile_identity
from dialgebra_forge.suites import load_suite
from dialgebra_forge.verify import (
    SAMPLE,
    check_free_suite,
    check_identity,
    check_suite,
)

MIXED = "binary l r; vars x y z; (x l y) r z = x l (y r z)"
BACKENDS = ["python"] + (["cython"] if kernel._ckernel is not None else [])


def dual_numbers():
    Q = polynomial_quotient(2)
    return StructureAlgebra(Q.basis, left=Q.left, right=Q.left, unit=0)


def brute_force(A, d, binding):
    """Independent oracle: evaluate every basis tuple with exact rationals."""
    bound = bind(d, A, binding)
    out = []
    for tup in itertools.product(range(A.dim), repeat=len(d.vars)):
        res = eval_ast(d, bound, assignment={v: {i: 1} for v, i in zip(d.vars, tup)})
        if res:
            out.append((tup, res))
    return out


def test_dual_numbers_mixed_identity_passes():
    r = check_identity(dual_numbers(), MIXED, {"l": "left", "r": "right"})
    assert r.passed and r.tuples == 8
    assert r.lines() == ["PASS identity tuples=8"]


def test_mutation_found_by_brute_force():
    M = mutate(dual_numbers(), "right", 1, 1, 0, 1)  # t ⊢ t = 1
    # associativity of ⊢ alone survives this mutation
    assert check_suite(M, "assoc_right").passed
    r = check_suite(M, "tcda")
    oracle = brute_force(M, parse_identity(MIXED), {"l": "left", "r": "right"})
    first = r.counterexamples[0]
    assert (first.identity, first.tuple, first.residual) == ("mixed_1",) + oracle[0]
    assert r.lines()[1] == "FAIL tcda mixed_1 2,1,2 residual=1"


def test_zero_algebra_passes_everything_without_operators():
    Z = StructureAlgebra(("a", "b"))
    for suite in ("tcda", "compatible_dialgebra", "assoc_left"):
        assert check_suite(Z, suite).passed


def test_suite_examples():
    assert check_suite(truncation_member(2, 3, 1), "tcda").passed
    assert check_suite(truncation_member(1, 3, -1), "rb_tcda").passed
    assert check_suite(dual_numbers(), "compatible_dialgebra").passed


def test_missing_operator_and_unit():
    with pytest.raises(BindingError):
        check_suite(dual_numbers(), "rb_tcda")
    with pytest.raises(BindingError, match="suite requires unit"):
        check_suite(truncation_member(1, 2), "td_operator")


def test_non_multilinear_only_in_sample_mode():
    text = "binary l; vars x; x l x = 0"
    with pytest.raises(NotMultilinearError):
        check_identity(dual_numbers(), text, {"l": "left"})
    r = check_identity(dual_numbers(), text, {"l": "left"}, mode=SAMPLE, samples=20)
    assert r.heuristic and not r.passed
    assert "heuristic" in r.lines()[0] and "mode=sample" in r.lines()[0]


def test_cap_bounds_report_but_counts_all():
    broken = full_corpus()[-2].algebra
    r = check_suite(broken, "tcda", cap=3)
    assert len(r.counterexamples) == 3 and r.failures > 3
    assert len(r.lines()) == 4
    full = check_suite(broken, "tcda", cap=10_000)
    assert full.counterexamples[:3] == r.counterexamples


def test_counterexamples_in_canonical_order():
    broken = mutate(truncation_member(1, 3), "left", 0, 0, 2, 5)
    r = check_suite(broken, "tcda", cap=1000)
    ids = [i for i, _ in load_suite("tcda")]
    keys = [(ids.index(c.identity), c.tuple) for c in r.counterexamples]
    assert keys == sorted(keys)


@pytest.mark.parametrize("backend", BACKENDS)
def test_backends_agree_with_brute_force(backend):
    A = mutate(truncation_member(1, 3), "right", 1, 1, 3, 7)
    for name in ("tcda", "rb_tcda"):
        for ident, d in load_suite(name):
            binding = {"l": "left", "r": "right"}
            r = check_identity(A, d, binding, cap=10_000, ident_id=ident, backend=backend)
            got = [(c.tuple, c.residual) for c in r.counterexamples]
            assert got == brute_force(A, d, binding)


def test_int64_overflow_falls_back_to_exact():
    big = 2**40
    A = StructureAlgebra(("a",), left={(0, 0): {0: big}}, right={(0, 0): {0: big + 1}})
    r = check_suite(A, "tcda")
    oracle = brute_force(A, parse_identity(MIXED), {"l": "left", "r": "right"})
    mixed = [c for c in r.counterexamples if c.identity == "mixed_1"]
    assert [(c.tuple, c.residual) for c in mixed] == oracle
    # products reach 2**120, far beyond int64
    assert all(abs(v) > 2**63 for _, res in oracle for v in res.values())


def test_rational_tables_scale_exactly():
    A = StructureAlgebra(("a", "b"), left={(0, 0): {0: Fraction(1, 3)}, (0, 1): {1: Fraction(2, 7)}})
    for backend in BACKENDS:
        r = check_suite(A, "assoc_left", backend=backend, cap=100)
        assert [(c.tuple, c.residual) for c in r.counterexamples] == brute_force(
            A, parse_identity("binary l; vars x y z; (x l y) l z = x l (y l z)"), {"l": "left"}
        )


def test_jobs_do_not_change_reports():
    for m in full_corpus()[::3]:
        for suite in ("tcda", "rb_tcda"):
            one = check_suite(m.algebra, suite, jobs=1).text()
            assert check_suite(m.algebra, suite, jobs=3).text() == one


def test_compile_shares_subterms():
    A = truncation_member(1, 2)
    d = dict(load_suite("rb_tcda"))["rota_baxter"]
    prog = compile_identity(d, bind(d, A, {"l": "left", "r": "right"}))
    # x, y, P(x), P(y) appear once each despite several uses
    assert len(prog.nodes) < 14


def test_free_suites():
    r = check_free_suite("tcda", Alphabet(("x", "y")), 4)
    assert r.passed and r.tuples > 0
    bad = check_free_suite("rb_tcda", Alphabet(("x",)), 3)
    assert not bad.passed
    assert "x|" in bad.lines()[1]


def test_lie_antisymmetry_of_commutators():
    for m in full_corpus():
        L = commutator_lie(m.algebra)
        for b in ("b1", "b2"):
            for i in range(L.dim):
                for j in range(L.dim):
                    s = L.apply(b, {i: 1}, {j: 1})
                    t = L.apply(b, {j: 1}, {i: 1})
                    assert {k: s.get(k, 0) + t.get(k, 0) for k in set(s) | set(t)} == {k: 0 for k in set(s) | set(t)}


# ---------------------------------------------------------------- cross-checks over the corpus


def _applicable(A):
    out = ["assoc_left", "assoc_right", "tcda", "compatible_dialgebra"]
    if A.has_operator("P"):
        out += ["rb_tcda", "restricted_rda"]
    return out


SMALL = [m for m in full_corpus() if m.algebra.dim <= 6]


@pytest.mark.parametrize("member", SMALL, ids=lambda m: m.name)
def test_sample_mode_agrees_with_exhaustive(member):
    A = member.algebra
    structures = [(A, _applicable(A))]
    if A.has_operator("P"):
        structures.append((tridendriform_of(A), ["tridendriform"]))
        structures.append((commutator_lie(A), ["lie", "tcl", "rbcl"]))
        structures.append((postlie_of(commutator_lie(A)), ["postlie"]))
    for B, suites in structures:
        for suite in suites:
            exact = check_suite(B, suite).passed
            sampled = check_suite(B, suite, mode=SAMPLE, samples=1000 if B.dim <= 3 else 100, seed=11)
            assert sampled.passed == exact, suite


@pytest.mark.parametrize("member", [m for m in full_corpus() if m.algebra.dim <= 10], ids=lambda m: m.name)
def test_mutation_sensitivity(member):
    A = member.algebra
    for suite in ("tcda", "rb_tcda"):
        if A.dim >= 2 and check_suite(A, suite).passed:
            assert first_flip(A, suite) is not None, suite


# ---------------------------------------------------------------- property: kernels


@st.composite
def tiny_algebras(draw):
    dim = draw(st.integers(1, 3))
    entry = st.builds(Fraction, st.integers(-3, 3), st.sampled_from((1, 1, 2, 5)))
    keys = [(i, j) for i in range(dim) for j in range(dim)]

    def table():
        return {k: {c: draw(entry) for c in range(dim)} for k in keys if draw(st.booleans())}

    from dialgebra_forge.algebras import LinearOperator

    P = LinearOperator(dim, {j: {i: draw(entry) for i in range(dim)} for j in range(dim)})
    return StructureAlgebra(tuple(f"e{i}" for i in range(dim)), left=table(), right=table(), operators={"P": P})


@settings(max_examples=80, deadline=None)
@given(tiny_algebras(), st.sampled_from(("tcda", "rb_tcda", "restricted_rda", "compatible_dialgebra")))
def test_kernels_match_oracle(A, suite):
    reports = {b: check_suite(A, suite, backend=b, cap=10_000) for b in BACKENDS}
    texts = {r.text() for r in reports.values()}
    assert len(texts) == 1
    r = reports["python"]
    expected = []
    for ident, d in load_suite(suite):
        from dialgebra_forge.verify import suite_binding

        binding = {k: v for k, v in suite_binding(suite).items() if k in set(d.binary) | set(d.unary)}
        expected += [(ident, t, res) for t, res in brute_force(A, d, binding)]
    assert [(c.identity, c.tuple, c.residual) for c in r.counterexamples] == expected
