import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dialgebra_forge.algebras import polynomial_quotient, from_central_weight
from dialgebra_forge.errors import AlphabetError, AssignmentError, WordSyntaxError
from dialgebra_forge.freealg import (
    LEFT,
    RIGHT,
    Alphabet,
    BasisWord,
    FreeElement,
    basis_words,
    elem_prod,
    element_to_vector,
    eval_hom,
    parse_element,
    parse_word,
    rb_p,
    rb_word,
    refactor,
    truncate,
    word_factorization,
    word_prod,
)

XY = Alphabet(("x", "y"))
XYZW = Alphabet(("x", "y", "z", "w"))


def w(text, alphabet=XYZW):
    return parse_word(text, alphabet)


def e(text, alphabet=XYZW):
    return parse_element(text, alphabet)


@pytest.mark.parametrize(
    "a, b, which, expected",
    [
        ("x|", "y|", LEFT, "x.y|"),
        ("x|y", "z|", LEFT, "x.y|z"),
        ("x|y", "z|w", RIGHT, "x|y.z.w"),
        ("x|", "y|", RIGHT, "x|y"),
    ],
)
def test_word_prod_examples(a, b, which, expected):
    assert word_prod(w(a), w(b), which) == w(expected)


def test_special_cases_match_unified_rule():
    # n = l = 0: u| ⊣ v| = uv| and u| ⊢ v| moves the last letter right
    for u, v in itertools.product(basis_words(XY, 3), repeat=2):
        if u.right or v.right:
            continue
        uv = u.left + v.left
        assert word_prod(u, v, LEFT) == BasisWord(uv)
        assert word_prod(u, v, RIGHT) == BasisWord(uv[:-1], uv[-1:])


def test_elem_prod_bilinear():
    assert elem_prod(e("2 x| + y|"), e("z|"), LEFT) == e("2 x.z| + y.z|")
    assert elem_prod(e("0"), e("x|y"), LEFT).is_zero()


def test_mixed_bracketings_agree_on_example():
    x, y, z = e("x|"), e("y|"), e("z|")
    assert x.right(y).left(z) == e("x.y|z")
    assert x.right(y.left(z)) == e("x.y|z")


def test_rb_p_examples():
    assert rb_p(e("x|y")) == e("x.y|")
    assert rb_p(e("x|")) == e("x|")
    a, b = e("x|"), e("y|")
    lhs = rb_p(a).left(rb_p(b))
    rhs = rb_p(a.left(rb_p(b))) + rb_p(rb_p(a).left(b)) - rb_p(a.right(b))
    assert lhs == rhs == e("x.y|")


@pytest.mark.parametrize(
    "word, left_chain, right_chain",
    [("x|y.z", (), (0, 1, 2)), ("x.y|", (0, 1), ()), ("x.y|z", (0,), (1, 2))],
)
def test_factorization_examples(word, left_chain, right_chain):
    f = word_factorization(w(word))
    assert (tuple(f.left_chain), tuple(f.right_chain)) == (left_chain, right_chain)
    assert refactor(f) == w(word)


def test_factorization_round_trip_up_to_degree_6():
    for b in basis_words(XY, 6):
        assert refactor(word_factorization(b)) == b


def test_truncation_dimensions_and_basis():
    assert truncate(XY, 3).dim == 34
    A = truncate(Alphabet(("x",)), 2)
    assert A.basis == ("x|", "x|x", "x.x|")
    # degree overflow is zero
    assert A.apply(LEFT, {A.index("x|"): 1}, {A.index("x.x|"): 1}) == {}


def test_truncation_degree_one_sign_minus():
    A = truncate(Alphabet(("x",)), 1, -1)
    assert A.dim == 1 and not A.left and not A.right
    assert A.P.rows() == [[1]]


def test_eval_hom_examples():
    T = truncate(XY, 3)
    ident = {g: element_to_vector(FreeElement.generator(XY, g), T) for g in XY.generators}
    x = e("x.y|x", XY)
    assert eval_hom(x, T, ident) == element_to_vector(x, T)

    Q = from_central_weight(polynomial_quotient(4), {1: 1})
    assert eval_hom(e("x|x", XY), Q, {"x": {1: 1}, "y": {}}) == {3: 1}


def test_eval_hom_errors():
    T = truncate(XY, 2)
    with pytest.raises(AssignmentError):
        eval_hom(e("x|", XY), T, {"x": {0: 1}})
    with pytest.raises(AlphabetError):
        eval_hom(e("x|", XY), T, {"x": {0: 1}, "y": {}, "q": {}})


def test_parse_and_print():
    x = e("2 x|y - 1/2 z.w| + x|")
    assert str(x) == "-1/2 z.w| + 2 x|y + x|"
    assert e(str(x)) == x
    assert str(e("0")) == "0"
    with pytest.raises(AlphabetError):
        e("q|", XY)
    with pytest.raises(WordSyntaxError):
        e("x||y", XY)


def test_canonical_order_is_degree_then_left_then_right():
    words = basis_words(XY, 3)
    assert words == sorted(words, key=BasisWord.sort_key)
    assert [b.degree for b in words] == sorted(b.degree for b in words)


# ---------------------------------------------------------------- properties

letters = st.lists(st.integers(0, 1), min_size=1, max_size=4)
coefs = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 4))


@st.composite
def words(draw):
    seq = draw(letters)
    cut = draw(st.integers(1, len(seq)))
    return BasisWord(tuple(seq[:cut]), tuple(seq[cut:]))


@st.composite
def elements(draw):
    terms = draw(st.lists(st.tuples(words(), coefs), max_size=4))
    return FreeElement(XY, terms)


@given(words(), words(), st.sampled_from((LEFT, RIGHT)))
def test_degree_and_letters_conserved(a, b, which):
    c = word_prod(a, b, which)
    assert c.degree == a.degree + b.degree
    assert c.letters() == a.letters() + b.letters()
    assert len(c.left) >= 1


@given(words(), words(), words(), st.sampled_from((LEFT, RIGHT)))
def test_word_associativity(a, b, c, which):
    assert word_prod(word_prod(a, b, which), c, which) == word_prod(a, word_prod(b, c, which), which)


@given(words(), words(), words())
def test_four_bracketings_coincide(a, b, c):
    vals = {
        word_prod(word_prod(a, b, LEFT), c, RIGHT),
        word_prod(a, word_prod(b, c, RIGHT), LEFT),
        word_prod(word_prod(a, b, RIGHT), c, LEFT),
        word_prod(a, word_prod(b, c, LEFT), RIGHT),
    }
    assert len(vals) == 1


@given(elements(), elements())
def test_rota_baxter_with_minus_right(x, y):
    lhs = rb_p(x).left(rb_p(y))
    rhs = rb_p(x.left(rb_p(y))) + rb_p(rb_p(x).left(y)) - rb_p(x.right(y))
    assert lhs == rhs


@given(words())
def test_p_idempotent_and_degree_preserving(a):
    assert rb_word(rb_word(a)) == rb_word(a)
    assert rb_word(a).degree == a.degree


@given(elements(), elements(), elements())
def test_element_arithmetic_laws(x, y, z):
    assert x + y == y + x
    assert (x + y) - y == x
    assert elem_prod(x + y, z, LEFT) == elem_prod(x, z, LEFT) + elem_prod(y, z, LEFT)
    assert Fraction(3) * (x + y) == 3 * x + 3 * y


@given(elements())
def test_print_parse_round_trip(x):
    assert parse_element(str(x), XY) == x


@settings(max_examples=50)
@given(elements(), elements(), st.sampled_from((LEFT, RIGHT)), st.integers(0, 1000))
def test_eval_hom_is_homomorphism(x, y, which, seed):
    rng = random.Random(seed)
    T = from_central_weight(polynomial_quotient(4), {1: 1})
    assign = {g: {i: Fraction(rng.randint(-3, 3)) for i in range(4)} for g in XY.generators}
    lhs = eval_hom(elem_prod(x, y, which), T, assign)
    rhs = T.apply(which, eval_hom(x, T, assign), eval_hom(y, T, assign))
    assert lhs == rhs
