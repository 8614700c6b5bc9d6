from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dialgebra_forge.algebras import (
    LinearOperator,
    StructureAlgebra,
    apply_op,
    field_algebra,
    format_vector,
    from_central_weight,
    from_commuting_semihoms,
    from_td_operator,
    hat_p,
    is_central,
    matrix_algebra,
    mutate,
    parse_vector,
    polynomial_quotient,
    read_algebra,
    scale,
    semidirect_double,
    tensor_product,
    write_algebra,
)
from dialgebra_forge.corpus import full_corpus
from dialgebra_forge.errors import AdfError, DimensionError
from dialgebra_forge.freealg import Alphabet, truncate
from dialgebra_forge.verify import check_suite

X = Alphabet(("x",))


def mult_by(A, vec):
    return LinearOperator.from_function(A.dim, lambda j: A.apply("left", vec, {j: 1}))


# ---------------------------------------------------------------- ADF


def test_minimal_file_is_the_field():
    A = read_algebra("dim 1\nbasis e\nleft 1 1 -> 1:1\nright 1 1 -> 1:1\n")
    assert A.dim == 1 and A.left == {(0, 0): {0: 1}} == A.right


def test_missing_right_lines_mean_zero():
    A = read_algebra("# comment\ndim 2\nbasis a b\nleft 1 1 -> 1:1  # trailing\n")
    assert A.right == {}


def test_index_out_of_range_reports_line():
    with pytest.raises(AdfError, match="index out of range, line 3"):
        read_algebra("dim 2\nbasis a b\nleft 1 2 -> 3:1\n")


def test_duplicate_entry_is_error():
    with pytest.raises(AdfError, match="line 4"):
        read_algebra("dim 1\nbasis e\nleft 1 1 -> 1:1\nleft 1 1 -> 1:2\n")


@pytest.mark.parametrize(
    "text",
    [
        "basis a\n",
        "dim 0\nbasis\n",
        "dim 2\nbasis a\n",
        "dim 1\nbasis a\nleft 1 -> 1:1\n",
        "dim 1\nbasis a\nleft 1 1 -> 1:1/0\n",
        "dim 1\nbasis a\nfrobnicate 1 1\n",
        "dim 1\nbasis a\nunit 2\n",
    ],
)
def test_malformed_files_rejected(text):
    with pytest.raises((AdfError, DimensionError)):
        read_algebra(text)


def test_round_trip_over_corpus():
    for m in full_corpus():
        text = write_algebra(m.algebra)
        B = read_algebra(text)
        assert B == m.algebra
        assert write_algebra(B) == text


def test_round_trip_keeps_rationals_and_unit():
    A = StructureAlgebra(
        ("1", "t"),
        left={(0, 0): {0: Fraction(-3, 7)}},
        right={(1, 0): {1: Fraction(5, 2)}},
        operators={"f": LinearOperator(2, {1: {0: Fraction(1, 3)}})},
        unit=0,
    )
    assert read_algebra(write_algebra(A)) == A


# ---------------------------------------------------------------- evaluation


def test_apply_examples():
    Q = polynomial_quotient(2)
    assert Q.apply("left", {1: 1}, {1: 1}) == {}
    assert apply_op(Q, LinearOperator.identity(2), {0: 3, 1: -1}) == {0: 3, 1: -1}
    T = truncate(X, 2)
    assert T.apply("left", {T.index("x|"): 1}, {T.index("x|"): 1}) == {T.index("x.x|"): 1}
    with pytest.raises(DimensionError):
        apply_op(Q, LinearOperator.identity(3), {0: 1})


def test_vector_text_round_trip():
    basis = ("1", "t", "t^2")
    v = {0: Fraction(2), 2: Fraction(-1, 2)}
    assert format_vector(v, basis) == "2 1 - 1/2 t^2"
    assert parse_vector("2 1 - 1/2 t^2", basis) == v
    assert parse_vector("1 + t", basis) == {0: 1, 1: 1}
    assert parse_vector("-t", basis) == {1: -1}
    assert parse_vector("0", basis) == {}


# ---------------------------------------------------------------- constructions


def test_matrix_algebra_examples():
    k = field_algebra()
    M = matrix_algebra(k, 2)
    e11, e12 = M.index("E1_1(e)"), M.index("E1_2(e)")
    assert M.apply("left", {e11: 1}, {e12: 1}) == {e12: 1}
    assert M.apply("left", {e12: 1}, {e11: 1}) == {}
    T = truncate(X, 2)
    M = matrix_algebra(T, 2)
    a, b = M.index("E1_1(x|)"), M.index("E1_2(x|)")
    assert M.apply("left", {a: 1}, {b: 1}) == {M.index("E1_2(x.x|)"): 1}
    one = matrix_algebra(T, 1)
    assert one.left == T.left and one.right == T.right


def test_semidirect_examples():
    Q = from_central_weight(polynomial_quotient(2), {1: 1})
    S = semidirect_double(Q)
    d = Q.dim
    assert S.apply("left", {0: 1}, {0: 1}) == {0: 1}
    assert S.apply("left", {d: 1}, {d: 1}) == {d + 1: 1}
    assert S.right == {}


def test_hat_p_examples():
    T = truncate(X, 2, -1)
    H = hat_p(T)
    d = T.dim
    assert H({0: 1}) == {0: -1}
    assert H({d + 2: 1}) == T.P({2: 1})
    S = semidirect_double(T).with_operator("P", H)
    assert check_suite(S, "rb_weight").passed


def test_tensor_product_examples():
    A = truncate(X, 2)
    assert tensor_product(A, field_algebra()).left == A.left
    B = polynomial_quotient(3)
    B = StructureAlgebra(B.basis, left=B.left, right=B.left)
    C = from_central_weight(polynomial_quotient(2), {1: 1})
    AB = tensor_product(C, B)
    assert AB.dim == 6
    assert check_suite(C, "tcda").passed and check_suite(B, "tcda").passed
    assert check_suite(AB, "tcda").passed


def test_scale_examples():
    A = truncate(X, 3)
    assert scale(A, 1, 1) == A
    Z = scale(A, 0, 1)
    assert Z.left == {} and check_suite(Z, "tcda").passed
    assert scale(A, 1, -1) == truncate(X, 3, -1)


def test_semihom_examples():
    Q = polynomial_quotient(4)
    I = LinearOperator.identity(4)
    same = from_commuting_semihoms(Q, I, I)
    assert same.left == Q.left == same.right
    f, g = mult_by(Q, {1: 1}), mult_by(Q, {2: 1})
    R = from_commuting_semihoms(Q, f, g)
    assert R.apply("left", {1: 1}, {1: 1}) == {3: 1}
    assert R.apply("right", {1: 1}, {1: 1}) == {}
    assert check_suite(Q, "semi_hom", binding={"f": f}).passed
    assert check_suite(R, "tcda").passed


def test_central_weight_examples():
    Q = polynomial_quotient(3)
    assert from_central_weight(Q, {0: 1}).right == Q.left
    W = from_central_weight(Q, {1: 1})
    assert W.apply("right", {1: 1}, {1: 1}) == {}
    assert is_central(Q, {1: 1})


def test_td_example_twice_identity():
    # P = 2 id is TD; the weight w = P(1) = 2 gives x ⊢ y = 2xy
    Q = polynomial_quotient(3).with_operator("P", LinearOperator.identity(3, 2))
    assert check_suite(Q, "td_operator").passed
    W = from_central_weight(Q, {0: 2})
    assert W.apply("right", {1: 1}, {1: 1}) == {2: 2}
    assert check_suite(W, "restricted_rda").passed


def test_td_construction_gives_rota_baxter_dialgebra():
    D = from_td_operator(polynomial_quotient(3), LinearOperator.identity(3, 2))
    assert D.apply("right", {1: 1}, {1: 1}) == {2: -2}
    for suite in ("tcda", "rb_tcda", "restricted_rda"):
        assert check_suite(D, suite).passed


def test_mutate_changes_one_entry():
    Q = polynomial_quotient(2)
    M = mutate(Q, "left", 1, 1, 0, 1)
    assert M.left[1, 1] == {0: 1}
    assert {k: v for k, v in M.left.items() if k != (1, 1)} == Q.left
    T = truncate(X, 2)
    M = mutate(T, "op:P", 0, 1, 0, 5)
    assert M.P.columns[1] == {0: 5, 2: 1}


# ---------------------------------------------------------------- properties


@st.composite
def small_algebras(draw):
    dim = draw(st.integers(1, 3))
    entry = st.builds(Fraction, st.integers(-3, 3), st.integers(1, 3))
    keys = [(i, j) for i in range(dim) for j in range(dim)]

    def table():
        return {k: {c: draw(entry) for c in range(dim)} for k in keys if draw(st.booleans())}

    return StructureAlgebra(tuple(f"e{i}" for i in range(dim)), left=table(), right=table())


@settings(max_examples=60, deadline=None)
@given(small_algebras())
def test_semidirect_associative_iff_tcda(A):
    assert check_suite(A, "tcda").passed == check_suite(semidirect_double(A), "assoc_left").passed


@settings(max_examples=60, deadline=None)
@given(small_algebras())
def test_adf_round_trip_property(A):
    assert read_algebra(write_algebra(A)) == A
