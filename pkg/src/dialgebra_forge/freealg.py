"""The free totally compatible dialgebra F(X) on a finite alphabet.

A basis word is a pair ``(u, v)`` of a nonempty word ``u`` and a possibly
empty word ``v``; it is written ``u|v`` with letters joined by dots, so
``x.y|z`` is the pair (xy, z). Both products concatenate the four letter
blocks of their arguments and split the result again: ``⊣`` after
``m + k`` letters and ``⊢`` after ``m + k - 1`` letters, where ``m`` and
``k`` are the lengths of the two left parts.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from .errors import AlphabetError, AssignmentError, DimensionError, WordSyntaxError
from .rational import format_coefficient, parse_rational

LEFT = "left"
RIGHT = "right"

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_PART = rf"{_IDENT}(?:\.{_IDENT})*"
_WORD_RE = re.compile(rf"({_PART})\|({_PART})?")
_IDENT_RE = re.compile(_IDENT)


def _check_which(which):
    if which not in (LEFT, RIGHT):
        raise ValueError(f"product must be 'left' or 'right', got {which!r}")


@dataclass(frozen=True)
class Alphabet:
    generators: tuple[str, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise AlphabetError("alphabet must be nonempty")
        for g in gens:
            if not isinstance(g, str) or not _IDENT_RE.fullmatch(g):
                raise AlphabetError(f"invalid generator name {g!r}")
        if len(set(gens)) != len(gens):
            raise AlphabetError(f"duplicate generator in {gens}")
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(gens)})

    @classmethod
    def parse(cls, text):
        """``"x,y"`` -> Alphabet(('x', 'y'))."""
        return cls(tuple(s.strip() for s in text.split(",") if s.strip()))

    def __len__(self):
        return len(self.generators)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise AlphabetError(f"unknown generator {name!r} (alphabet: {','.join(self.generators)})") from None

    def spell(self, indices):
        return ".".join(self.generators[i] for i in indices)


@dataclass(frozen=True, order=True)
class BasisWord:
    """``left`` is never empty; ``right`` may be."""

    left: tuple[int, ...]
    right: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        if not self.left:
            raise WordSyntaxError("left part of a basis word must be nonempty")

    @property
    def degree(self):
        return len(self.left) + len(self.right)

    def sort_key(self):
        return (self.degree, self.left, self.right)

    def letters(self):
        return self.left + self.right

    def text(self, alphabet):
        return f"{alphabet.spell(self.left)}|{alphabet.spell(self.right)}"


def generator_word(i):
    return BasisWord((i,), ())


def parse_word(text, alphabet):
    m = _WORD_RE.fullmatch(text.strip())
    if not m:
        raise WordSyntaxError(f"malformed basis word {text!r}")
    left = tuple(alphabet.index(g) for g in m.group(1).split("."))
    right = tuple(alphabet.index(g) for g in m.group(2).split(".")) if m.group(2) else ()
    return BasisWord(left, right)


def word_prod(a: BasisWord, b: BasisWord, which: str) -> BasisWord:
    _check_which(which)
    w = a.left + a.right + b.left + b.right
    cut = len(a.left) + len(b.left)
    if which == RIGHT:
        cut -= 1
    return BasisWord(w[:cut], w[cut:])


def rb_word(a: BasisWord) -> BasisWord:
    return BasisWord(a.left + a.right, ())


class Factorization(NamedTuple):
    """Basis word as ``(g1 ⊣ … ⊣ g_{m-1}) ⊣ (g_m ⊢ … ⊢ g_{m+n})``.

    ``left_chain`` holds the generators folded with ⊣, ``right_chain`` those
    folded with ⊢. Exactly one of the chains is empty unless the word has
    both a left part of length >= 2 and a nonempty right part.
    """

    left_chain: tuple[int, ...]
    right_chain: tuple[int, ...]


def word_factorization(b: BasisWord) -> Factorization:
    if not b.right:
        return Factorization(b.left, ())
    return Factorization(b.left[:-1], b.left[-1:] + b.right)


def refactor(f: Factorization) -> BasisWord:
    """Multiply a factorization back out using ``word_prod``."""

    def fold(chain, which):
        acc = generator_word(chain[0])
        for g in chain[1:]:
            acc = word_prod(acc, generator_word(g), which)
        return acc

    if not f.right_chain:
        return fold(f.left_chain, LEFT)
    tail = fold(f.right_chain, RIGHT)
    if not f.left_chain:
        return tail
    return word_prod(fold(f.left_chain, LEFT), tail, LEFT)


class FreeElement:
    """Finite linear combination of basis words with rational coefficients.

    Immutable; zero coefficients are never stored and ``terms`` iterates in
    canonical order (degree, left word, right word).
    """

    __slots__ = ("alphabet", "_terms", "_hash")

    def __init__(self, alphabet: Alphabet, terms: Mapping[BasisWord, object] | Iterable = ()):
        self.alphabet = alphabet
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[BasisWord, Fraction] = {}
        n = len(alphabet)
        for word, coef in items:
            if any(i < 0 or i >= n for i in word.letters()):
                raise AlphabetError(f"word {word} uses an index outside the alphabet")
            acc[word] = acc.get(word, 0) + Fraction(coef)
        self._terms = {w: acc[w] for w in sorted(acc, key=BasisWord.sort_key) if acc[w] != 0}
        self._hash = None

    @classmethod
    def zero(cls, alphabet):
        return cls(alphabet)

    @classmethod
    def basis(cls, alphabet, word):
        return cls(alphabet, {word: 1})

    @classmethod
    def generator(cls, alphabet, name):
        return cls.basis(alphabet, generator_word(alphabet.index(name)))

    @classmethod
    def parse(cls, text, alphabet):
        return parse_element(text, alphabet)

    @property
    def terms(self):
        return tuple(self._terms.items())

    def coefficient(self, word):
        return self._terms.get(word, Fraction(0))

    def is_zero(self):
        return not self._terms

    def max_degree(self):
        return max((w.degree for w in self._terms), default=0)

    def _same(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        if other.alphabet != self.alphabet:
            raise AlphabetError("elements live over different alphabets")
        return other

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return FreeElement(self.alphabet, itertools.chain(self.terms, other.terms))

    def __sub__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return FreeElement(self.alphabet, itertools.chain(self.terms, ((w, -c) for w, c in other.terms)))

    def __neg__(self):
        return FreeElement(self.alphabet, ((w, -c) for w, c in self.terms))

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        return FreeElement(self.alphabet, ((w, scalar * c) for w, c in self.terms))

    def __eq__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.alphabet == other.alphabet and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet, tuple(self._terms.items())))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        # highest canonical term first, as polynomials are usually written
        parts = []
        for n, (word, coef) in enumerate(reversed(self._terms.items())):
            parts.append(format_coefficient(coef, n == 0) + word.text(self.alphabet))
        return "".join(parts)

    def __repr__(self):
        return f"FreeElement({str(self)!r})"

    def left(self, other):
        return elem_prod(self, other, LEFT)

    def right(self, other):
        return elem_prod(self, other, RIGHT)


def elem_prod(x: FreeElement, y: FreeElement, which: str) -> FreeElement:
    _check_which(which)
    if x.alphabet != y.alphabet:
        raise AlphabetError("elements live over different alphabets")
    out = {}
    for a, ca in x.terms:
        for b, cb in y.terms:
            w = word_prod(a, b, which)
            out[w] = out.get(w, 0) + ca * cb
    return FreeElement(x.alphabet, out)


def rb_p(x: FreeElement) -> FreeElement:
    """The canonical Rota-Baxter operator ``u|v -> uv|``."""
    out = {}
    for a, c in x.terms:
        w = rb_word(a)
        out[w] = out.get(w, 0) + c
    return FreeElement(x.alphabet, out)


_TERM_RE = re.compile(
    rf"\s*(?P<sign>[+-])?\s*(?P<coef>\d+(?:/\d+)?)?\s*(?P<word>{_PART}\|(?:{_PART})?)?\s*"
)


def parse_element(text: str, alphabet: Alphabet) -> FreeElement:
    """Parse ``"2 x.y|z - 1/3 x|"``; ``"0"`` is the zero element."""
    src = text.strip()
    if src == "0":
        return FreeElement(alphabet)
    if not src:
        raise WordSyntaxError("empty element")
    terms = []
    pos = 0
    while pos < len(src):
        m = _TERM_RE.match(src, pos)
        if m.end() == pos or not m.group("word"):
            raise WordSyntaxError(f"cannot parse element {text!r} at offset {pos}")
        if terms and not m.group("sign"):
            raise WordSyntaxError(f"missing '+' or '-' before term at offset {pos} in {text!r}")
        coef = parse_rational(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        terms.append((parse_word(m.group("word"), alphabet), coef))
        pos = m.end()
    return FreeElement(alphabet, terms)


def infer_alphabet(*texts):
    """Alphabet of all identifiers used in the given element texts, sorted."""
    names = set()
    for t in texts:
        names.update(_IDENT_RE.findall(t))
    if not names:
        raise AlphabetError("cannot infer an alphabet from elements without generators")
    return Alphabet(tuple(sorted(names)))


def basis_words(alphabet: Alphabet, max_degree: int):
    """All basis words of degree <= max_degree in canonical order."""
    q = len(alphabet)
    words = []
    for deg in range(1, max_degree + 1):
        for letters in itertools.product(range(q), repeat=deg):
            for cut in range(1, deg + 1):
                words.append(BasisWord(letters[:cut], letters[cut:]))
    words.sort(key=BasisWord.sort_key)
    return words


def truncate(alphabet: Alphabet, max_degree: int, sign=1):
    """Quotient of F(X) by all words of degree > max_degree, as a StructureAlgebra.

    ``⊢`` is multiplied by ``sign``; with ``sign = -1`` the operator ``P``
    shipped with the result is a Rota-Baxter operator in the sense
    ``P(x)⊣P(y) = P(x⊣P(y)) + P(P(x)⊣y) + P(x⊢y)``.
    """
    from .algebras import LinearOperator, StructureAlgebra

    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    sign = Fraction(sign)
    words = basis_words(alphabet, max_degree)
    index = {w: i for i, w in enumerate(words)}
    left, right = {}, {}
    for i, a in enumerate(words):
        for j, b in enumerate(words):
            if a.degree + b.degree > max_degree:
                continue
            left[i, j] = {index[word_prod(a, b, LEFT)]: Fraction(1)}
            if sign:
                right[i, j] = {index[word_prod(a, b, RIGHT)]: sign}
    p = LinearOperator(len(words), {j: {index[rb_word(w)]: Fraction(1)} for j, w in enumerate(words)})
    return StructureAlgebra(
        basis=tuple(w.text(alphabet) for w in words),
        left=left,
        right=right,
        operators={"P": p},
    )


def element_to_vector(x: FreeElement, algebra, strict=True):
    """Coordinates of ``x`` in a truncation's basis (labels are word texts).

    Words above the truncation degree are dropped unless ``strict``.
    """
    index = {label: i for i, label in enumerate(algebra.basis)}
    vec = {}
    for w, c in x.terms:
        i = index.get(w.text(x.alphabet))
        if i is None:
            if strict:
                raise DimensionError(f"word {w.text(x.alphabet)} is not in the target basis")
            continue
        vec[i] = c
    return vec


def eval_hom(x: FreeElement, target, assignment: Mapping[str, Mapping[int, object]]):
    """Evaluate the unique homomorphism F(X) -> target extending ``assignment``.

    ``target`` must carry both products (a ``StructureAlgebra``);
    ``assignment`` maps each generator name to a coordinate vector
    ``{index: coefficient}`` of the target.
    """
    from .algebras import apply_table, as_vec, vec_axpy

    alphabet = x.alphabet
    images = []
    for g in alphabet.generators:
        if g not in assignment:
            raise AssignmentError(f"generator {g!r} has no assigned value")
        images.append(as_vec(assignment[g], target.dim))
    extra = set(assignment) - set(alphabet.generators)
    if extra:
        raise AlphabetError(f"assignment names unknown generators {sorted(extra)}")

    def fold(chain, table):
        acc = images[chain[0]]
        for g in chain[1:]:
            acc = apply_table(table, acc, images[g])
        return acc

    out = {}
    for word, coef in x.terms:
        f = word_factorization(word)
        if not f.right_chain:
            value = fold(f.left_chain, target.left)
        elif not f.left_chain:
            value = fold(f.right_chain, target.right)
        else:
            value = apply_table(target.left, fold(f.left_chain, target.left), fold(f.right_chain, target.right))
        vec_axpy(out, coef, value)
    return out
