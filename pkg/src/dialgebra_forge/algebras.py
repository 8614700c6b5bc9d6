"""Finite-dimensional algebras given by structure constants.

Coordinates are sparse: a vector is ``{index: Fraction}`` with no zero
entries, a bilinear table maps ``(i, j)`` to the vector ``e_i ∘ e_j`` and
omits zero products, and a linear operator maps a column index ``j`` to the
image of ``e_j``. All indices are 0-based in memory and 1-based on disk.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import ClassVar, Mapping

from .errors import AdfError, DimensionError, MissingOperatorError
from .rational import format_coefficient, format_rational, parse_rational

# ---------------------------------------------------------------- vectors


def as_vec(x, dim=None):
    """Normalize a dense list or a sparse mapping to a sparse vector."""
    if isinstance(x, Mapping):
        items = x.items()
    else:
        x = list(x)
        if dim is not None and len(x) != dim:
            raise DimensionError(f"vector has length {len(x)}, expected {dim}")
        items = enumerate(x)
    out = {}
    for i, c in items:
        if dim is not None and not 0 <= i < dim:
            raise DimensionError(f"coordinate {i} out of range for dimension {dim}")
        c = Fraction(c)
        if c:
            out[i] = c
    return out


def vec_axpy(acc, a, x):
    """acc += a * x, in place, dropping cancelled entries."""
    if not a:
        return acc
    for i, c in x.items():
        v = acc.get(i, 0) + a * c
        if v:
            acc[i] = v
        else:
            acc.pop(i, None)
    return acc


def vec_add(x, y):
    return vec_axpy(dict(x), 1, y)


def vec_sub(x, y):
    return vec_axpy(dict(x), -1, y)


def vec_scale(a, x):
    a = Fraction(a)
    return {i: a * c for i, c in x.items()} if a else {}


def dense(x, dim):
    return [x.get(i, Fraction(0)) for i in range(dim)]


def apply_table(table, x, y):
    out = {}
    for i, a in x.items():
        for j, b in y.items():
            prod = table.get((i, j))
            if prod:
                vec_axpy(out, a * b, prod)
    return out


def _clean_table(table, dim, what):
    out = {}
    for (i, j), vec in table.items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise DimensionError(f"{what}: index pair {(i, j)} out of range for dimension {dim}")
        v = as_vec(vec, None)
        for k in v:
            if not 0 <= k < dim:
                raise DimensionError(f"{what}: result index {k} out of range for dimension {dim}")
        if v:
            out[i, j] = v
    return out


def combine_tables(terms, dim):
    """Linear combination ``Σ c·T`` of bilinear tables."""
    out = {}
    for coef, table in terms:
        for key, vec in table.items():
            vec_axpy(out.setdefault(key, {}), Fraction(coef), vec)
    return {k: v for k, v in out.items() if v}


def scale_table(table, c):
    c = Fraction(c)
    if not c:
        return {}
    return {k: vec_scale(c, v) for k, v in table.items()}


def table_from_function(dim, fn):
    """Compile ``fn(i, j) -> vector`` on basis pairs to a table."""
    out = {}
    for i in range(dim):
        for j in range(dim):
            v = fn(i, j)
            if v:
                out[i, j] = v
    return out


# ---------------------------------------------------------------- operators


@dataclass(frozen=True)
class LinearOperator:
    """Square matrix stored by columns: ``columns[j]`` is the image of ``e_j``."""

    dim: int
    columns: dict = field(default_factory=dict)

    def __post_init__(self):
        cols = {}
        for j, col in self.columns.items():
            if not 0 <= j < self.dim:
                raise DimensionError(f"operator column {j} out of range for dimension {self.dim}")
            v = as_vec(col, self.dim)
            if v:
                cols[j] = v
        object.__setattr__(self, "columns", cols)

    @classmethod
    def identity(cls, dim, scale=1):
        return cls(dim, {j: {j: Fraction(scale)} for j in range(dim)})

    @classmethod
    def zero(cls, dim):
        return cls(dim, {})

    @classmethod
    def from_rows(cls, rows):
        dim = len(rows)
        return cls(dim, {j: {i: rows[i][j] for i in range(dim)} for j in range(dim)})

    @classmethod
    def from_function(cls, dim, fn):
        return cls(dim, {j: fn(j) for j in range(dim)})

    def __call__(self, x):
        out = {}
        for j, c in as_vec(x, self.dim).items():
            col = self.columns.get(j)
            if col:
                vec_axpy(out, c, col)
        return out

    def rows(self):
        return [[self.columns.get(j, {}).get(i, Fraction(0)) for j in range(self.dim)] for i in range(self.dim)]

    def compose(self, other):
        """``self ∘ other``."""
        self._check(other)
        return LinearOperator(self.dim, {j: self(col) for j, col in other.columns.items()})

    def __add__(self, other):
        self._check(other)
        return LinearOperator(self.dim, {j: vec_add(self.columns.get(j, {}), other.columns.get(j, {})) for j in range(self.dim)})

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, scalar):
        return LinearOperator(self.dim, {j: vec_scale(scalar, c) for j, c in self.columns.items()})

    def _check(self, other):
        if other.dim != self.dim:
            raise DimensionError(f"operator dimensions differ: {self.dim} vs {other.dim}")


def apply_op(algebra, op, x):
    if isinstance(op, str):
        op = algebra.operator(op)
    if op.dim != algebra.dim:
        raise DimensionError(f"operator of dimension {op.dim} on algebra of dimension {algebra.dim}")
    return op(x)


# ---------------------------------------------------------------- containers


@dataclass(frozen=True, eq=True)
class FiniteAlgebra:
    """Basis labels, named bilinear products and named linear operators.

    Subclasses fix the product names (``PRODUCTS``) and the ADF dialect
    (``KIND``). No axiom is assumed; use :mod:`dialgebra_forge.verify`.
    """

    KIND: ClassVar[str] = ""
    PRODUCTS: ClassVar[tuple[str, ...]] = ()

    basis: tuple[str, ...]
    products: dict = field(default_factory=dict)
    operators: dict = field(default_factory=dict)
    unit: int | None = None
    single: bool = False

    def __post_init__(self):
        basis = tuple(self.basis)
        object.__setattr__(self, "basis", basis)
        dim = len(basis)
        if dim < 1:
            raise DimensionError("an algebra needs at least one basis element")
        if len(set(basis)) != dim:
            raise AdfError("duplicate basis label")
        for label in basis:
            if not label or any(ch.isspace() for ch in label):
                raise AdfError(f"invalid basis label {label!r}")
        unknown = set(self.products) - set(self.PRODUCTS)
        if unknown:
            raise DimensionError(f"{type(self).__name__} has no products named {sorted(unknown)}")
        prods = {name: _clean_table(self.products.get(name, {}), dim, name) for name in self.PRODUCTS}
        object.__setattr__(self, "products", prods)
        ops = {}
        for name, op in self.operators.items():
            if not isinstance(op, LinearOperator):
                op = LinearOperator(dim, op)
            if op.dim != dim:
                raise DimensionError(f"operator {name} has dimension {op.dim}, algebra has {dim}")
            ops[name] = op
        object.__setattr__(self, "operators", ops)
        if self.unit is not None and not 0 <= self.unit < dim:
            raise DimensionError(f"unit index {self.unit} out of range")

    @property
    def dim(self):
        return len(self.basis)

    def table(self, name):
        try:
            return self.products[name]
        except KeyError:
            raise MissingOperatorError(f"{self.KIND} has no product {name!r}") from None

    def operator(self, name):
        try:
            return self.operators[name]
        except KeyError:
            raise MissingOperatorError(f"algebra carries no operator {name!r}") from None

    @property
    def P(self):
        return self.operator("P")

    def has_operator(self, name="P"):
        return name in self.operators

    def apply(self, which, x, y):
        x = as_vec(x, self.dim)
        y = as_vec(y, self.dim)
        return apply_table(self.table(which), x, y)

    def basis_vector(self, i):
        if not 0 <= i < self.dim:
            raise DimensionError(f"basis index {i} out of range")
        return {i: Fraction(1)}

    def index(self, label):
        try:
            return self.basis.index(label)
        except ValueError:
            raise DimensionError(f"no basis element labelled {label!r}") from None

    def unit_vector(self):
        if self.unit is None:
            raise MissingOperatorError("algebra declares no unit")
        return {self.unit: Fraction(1)}

    def with_operator(self, name, op):
        ops = dict(self.operators)
        ops[name] = op
        return replace(self, operators=ops)

    def without_operators(self):
        return replace(self, operators={})

    def with_products(self, **tables):
        prods = dict(self.products)
        prods.update(tables)
        return replace(self, products=prods)

    def parse_vector(self, text):
        return parse_vector(text, self.basis)

    def format_vector(self, vec):
        return format_vector(vec, self.basis)


@dataclass(frozen=True, eq=True)
class StructureAlgebra(FiniteAlgebra):
    """Two products ``left`` (⊣) and ``right`` (⊢) plus optional operators.

    A single-product algebra keeps its product in ``left`` with ``right``
    zero and ``single=True``.
    """

    KIND: ClassVar[str] = "dialgebra"
    PRODUCTS: ClassVar[tuple[str, ...]] = ("left", "right")

    def __init__(self, basis, left=None, right=None, operators=None, unit=None, single=False, products=None):
        if products is None:
            products = {"left": left or {}, "right": right or {}}
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "products", products)
        object.__setattr__(self, "operators", operators or {})
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "single", single)
        self.__post_init__()

    @property
    def left(self):
        return self.products["left"]

    @property
    def right(self):
        return self.products["right"]


def single_product(basis, table, operators=None, unit=None):
    return StructureAlgebra(basis, left=table, right={}, operators=operators, unit=unit, single=True)


# ---------------------------------------------------------------- vectors as text


_RAT_TOKEN = re.compile(r"-?\d+(?:/\d+)?")


def parse_vector(text, basis):
    """``"2 t - 1/2 t^2 + 1"`` over the given labels; ``"0"`` is zero.

    A rational token directly followed by another label or rational is a
    coefficient, otherwise it is read as a label (so a basis element may be
    called ``1``).
    """
    index = {label: i for i, label in enumerate(basis)}
    tokens = text.split()
    if tokens == ["0"] and "0" not in index:
        return {}
    if not tokens:
        raise DimensionError("empty vector")
    out = {}
    pos = 0
    while pos < len(tokens):
        sign = 1
        if tokens[pos] in ("+", "-"):
            sign = -1 if tokens[pos] == "-" else 1
            pos += 1
        elif out or pos > 0:
            raise DimensionError(f"missing '+' or '-' before {tokens[pos]!r} in {text!r}")
        if pos >= len(tokens):
            raise DimensionError(f"vector {text!r} ends without a term")
        coef = Fraction(1)
        if _RAT_TOKEN.fullmatch(tokens[pos]) and pos + 1 < len(tokens) and tokens[pos + 1] not in ("+", "-"):
            coef = parse_rational(tokens[pos])
            pos += 1
        label = tokens[pos]
        pos += 1
        if label not in index and label.startswith("-") and label[1:] in index:
            sign, label = -sign, label[1:]
        if label not in index:
            raise DimensionError(f"unknown basis label {label!r}")
        vec_axpy(out, sign * coef, {index[label]: Fraction(1)})
    return out


def format_vector(vec, basis):
    if not vec:
        return "0"
    parts = []
    for n, i in enumerate(sorted(vec)):
        parts.append(format_coefficient(vec[i], n == 0) + basis[i])
    return "".join(parts)


# ---------------------------------------------------------------- ADF


def _kinds():
    from .derive import LieDialgebra, PostLieAlgebra, TridendriformAlgebra

    return {cls.KIND: cls for cls in (StructureAlgebra, TridendriformAlgebra, LieDialgebra, PostLieAlgebra)}


def _fmt_vec(vec):
    return " ".join(f"{k + 1}:{format_rational(c)}" for k, c in sorted(vec.items()))


def write_algebra(algebra: FiniteAlgebra) -> str:
    lines = []
    if algebra.KIND != StructureAlgebra.KIND:
        lines.append(f"kind {algebra.KIND}")
    if algebra.single:
        lines.append("single")
    lines.append(f"dim {algebra.dim}")
    lines.append("basis " + " ".join(algebra.basis))
    if algebra.unit is not None:
        lines.append(f"unit {algebra.unit + 1}")
    for name in algebra.PRODUCTS:
        for (i, j), vec in sorted(algebra.products[name].items()):
            lines.append(f"{name} {i + 1} {j + 1} -> {_fmt_vec(vec)}")
    for name in sorted(algebra.operators):
        cols = algebra.operators[name].columns
        if not cols:
            lines.append(f"op {name} 1 ->")
        for j in sorted(cols):
            lines.append(f"op {name} {j + 1} -> {_fmt_vec(cols[j])}")
    return "\n".join(lines) + "\n"


_ENTRY_RE = re.compile(r"(\d+):(-?\d+(?:/\d+)?)")


def read_algebra(text: str) -> FiniteAlgebra:
    kinds = _kinds()
    by_keyword = {p: cls for cls in kinds.values() for p in cls.PRODUCTS}
    kind = None
    single = False
    dim = None
    basis = None
    unit = None
    unit_line = None
    entries = []  # (lineno, keyword, name, i, j, vec)
    seen = set()

    def index(tok, lineno, what):
        if not tok.isdigit():
            raise AdfError(f"expected a positive index for {what}, got {tok!r}", lineno)
        k = int(tok)
        if dim is None:
            raise AdfError("'dim' must precede structure constants", lineno)
        if not 1 <= k <= dim:
            raise AdfError("index out of range", lineno)
        return k - 1

    def parse_rhs(rhs, lineno):
        vec = {}
        for tok in rhs.split():
            m = _ENTRY_RE.fullmatch(tok)
            if not m:
                raise AdfError(f"malformed entry {tok!r}", lineno)
            k = index(m.group(1), lineno, "result")
            if k in vec:
                raise AdfError(f"duplicate result index {k + 1}", lineno)
            try:
                c = parse_rational(m.group(2))
            except ValueError as exc:
                raise AdfError(str(exc), lineno) from None
            if c:
                vec[k] = c
        return vec

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "kind":
            if len(rest) != 1 or rest[0] not in kinds:
                raise AdfError(f"unknown kind {' '.join(rest)!r}", lineno)
            if kind is not None:
                raise AdfError("duplicate 'kind' line", lineno)
            kind = rest[0]
        elif head == "single":
            if rest:
                raise AdfError("'single' takes no arguments", lineno)
            single = True
        elif head == "dim":
            if dim is not None:
                raise AdfError("duplicate 'dim' line", lineno)
            if len(rest) != 1 or not rest[0].isdigit() or int(rest[0]) < 1:
                raise AdfError("'dim' needs a positive integer", lineno)
            dim = int(rest[0])
        elif head == "basis":
            if basis is not None:
                raise AdfError("duplicate 'basis' line", lineno)
            if dim is None:
                raise AdfError("'dim' must precede 'basis'", lineno)
            if len(rest) != dim:
                raise AdfError(f"'basis' lists {len(rest)} labels, dim is {dim}", lineno)
            if len(set(rest)) != dim:
                raise AdfError("duplicate basis label", lineno)
            basis = tuple(rest)
        elif head == "unit":
            if unit is not None:
                raise AdfError("duplicate 'unit' line", lineno)
            if len(rest) != 1:
                raise AdfError("'unit' takes one index", lineno)
            unit = index(rest[0], lineno, "unit")
            unit_line = lineno
        elif head == "op" or head in by_keyword:
            lhs, arrow, rhs = line.partition("->")
            if not arrow:
                raise AdfError("missing '->'", lineno)
            toks = lhs.split()
            if head == "op":
                if len(toks) != 3:
                    raise AdfError("expected 'op NAME j -> ...'", lineno)
                name = toks[1]
                key = ("op", name, index(toks[2], lineno, "column"))
            else:
                if len(toks) != 3:
                    raise AdfError(f"expected '{head} i j -> ...'", lineno)
                name = head
                key = (head, index(toks[1], lineno, "row"), index(toks[2], lineno, "column"))
            if key in seen:
                raise AdfError("duplicate entry", lineno)
            seen.add(key)
            entries.append((lineno, key, parse_rhs(rhs, lineno)))
        else:
            raise AdfError(f"unknown keyword {head!r}", lineno)

    if dim is None:
        raise AdfError("missing 'dim' line")
    if basis is None:
        basis = tuple(f"e{i + 1}" for i in range(dim))
    if kind is None:
        used = {key[0] for _, key, _ in entries if key[0] != "op"}
        guessed = {by_keyword[k].KIND for k in used}
        if len(guessed) > 1:
            raise AdfError(f"products of different dialects mixed: {sorted(used)}")
        kind = guessed.pop() if guessed else StructureAlgebra.KIND
    cls = kinds[kind]
    products = {name: {} for name in cls.PRODUCTS}
    operators = {}
    for lineno, key, vec in entries:
        if key[0] == "op":
            _, name, j = key
            operators.setdefault(name, {})
            if vec:
                operators[name][j] = vec
        else:
            name, i, j = key
            if name not in products:
                raise AdfError(f"product {name!r} is not part of a {kind} file", lineno)
            if vec:
                products[name][i, j] = vec
    if unit is not None and unit_line is not None and unit >= dim:
        raise AdfError("index out of range", unit_line)
    ops = {name: LinearOperator(dim, cols) for name, cols in operators.items()}
    if cls is StructureAlgebra:
        return StructureAlgebra(basis, products=products, operators=ops, unit=unit, single=single)
    return cls(basis=basis, products=products, operators=ops, unit=unit, single=single)


def load_algebra(path):
    import sys

    if str(path) == "-":
        return read_algebra(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return read_algebra(fh.read())


# ---------------------------------------------------------------- constructions


def polynomial_quotient(n, var="t"):
    """``k[t]/(t^n)`` with basis ``1, t, t^2, …`` and declared unit."""
    labels = tuple("1" if e == 0 else var if e == 1 else f"{var}^{e}" for e in range(n))
    table = {(a, b): {a + b: Fraction(1)} for a in range(n) for b in range(n) if a + b < n}
    return single_product(labels, table, unit=0)


def field_algebra():
    """The 1-dimensional algebra k with both products equal to multiplication."""
    t = {(0, 0): {0: Fraction(1)}}
    return StructureAlgebra(("e",), left=t, right=t, unit=0)


def matrix_algebra(A: StructureAlgebra, n: int) -> StructureAlgebra:
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    d = A.dim

    def idx(i, j, a):
        return (i * n + j) * d + a

    def lift(table):
        out = {}
        for (a, b), vec in table.items():
            for i in range(n):
                for k in range(n):
                    for j in range(n):
                        key = (idx(i, k, a), idx(k, j, b))
                        out[key] = {idx(i, j, c): v for c, v in vec.items()}
        return out

    labels = tuple(f"E{i + 1}_{j + 1}({lab})" for i in range(n) for j in range(n) for lab in A.basis)
    return StructureAlgebra(labels, left=lift(A.left), right=lift(A.right), single=A.single)


def semidirect_double(A: StructureAlgebra) -> StructureAlgebra:
    """``A ⊕ A`` with ``(x,y)⋆(z,w) = (x⊣z, x⊣w + y⊣z + y⊢w)`` as its only product."""
    d = A.dim
    star = {}
    for (i, j), vec in A.left.items():
        star[i, j] = dict(vec)
        shifted = {k + d: c for k, c in vec.items()}
        star[i, j + d] = dict(shifted)
        star[i + d, j] = dict(shifted)
    for (i, j), vec in A.right.items():
        star[i + d, j + d] = {k + d: c for k, c in vec.items()}
    labels = tuple(f"({lab},0)" for lab in A.basis) + tuple(f"(0,{lab})" for lab in A.basis)
    return single_product(labels, star, unit=A.unit)


def hat_p(A: StructureAlgebra) -> LinearOperator:
    """``P̂(x, y) = (-x + P(y), 0)`` on the semidirect double of ``A``."""
    P = A.P
    d = A.dim
    cols = {j: {j: Fraction(-1)} for j in range(d)}
    for j, col in P.columns.items():
        cols[j + d] = dict(col)
    return LinearOperator(2 * d, cols)


def tensor_product(A: StructureAlgebra, B: StructureAlgebra) -> StructureAlgebra:
    db = B.dim

    def lift(ta, tb):
        out = {}
        for (a, c), va in ta.items():
            for (b, d), vb in tb.items():
                vec = {}
                for k1, c1 in va.items():
                    for k2, c2 in vb.items():
                        vec[k1 * db + k2] = c1 * c2
                out[a * db + b, c * db + d] = vec
        return out

    labels = tuple(f"{a}*{b}" for a in A.basis for b in B.basis)
    unit = A.unit * db + B.unit if A.unit is not None and B.unit is not None else None
    return StructureAlgebra(labels, left=lift(A.left, B.left), right=lift(A.right, B.right), unit=unit)


def scale(A: StructureAlgebra, r, s) -> StructureAlgebra:
    r, s = Fraction(r), Fraction(s)
    return StructureAlgebra(
        A.basis,
        left=scale_table(A.left, r),
        right=scale_table(A.right, s),
        operators=A.operators,
        unit=A.unit if r == 1 else None,
        single=A.single,
    )


def from_commuting_semihoms(A: StructureAlgebra, f: LinearOperator, g: LinearOperator) -> StructureAlgebra:
    """``x ⊣ y = f(x)·y`` and ``x ⊢ y = g(x)·y`` where ``·`` is A's left product."""
    for op in (f, g):
        if op.dim != A.dim:
            raise DimensionError(f"operator of dimension {op.dim} on algebra of dimension {A.dim}")
    mult = A.left
    e = A.basis_vector
    left = table_from_function(A.dim, lambda i, j: apply_table(mult, f(e(i)), e(j)))
    right = table_from_function(A.dim, lambda i, j: apply_table(mult, g(e(i)), e(j)))
    return StructureAlgebra(A.basis, left=left, right=right, operators=A.operators, unit=None)


def from_central_weight(A: StructureAlgebra, w) -> StructureAlgebra:
    """``⊣`` = A's product and ``x ⊢ y = (x·w)·y``."""
    w = as_vec(w, A.dim)
    mult = A.left
    e = A.basis_vector
    right = table_from_function(A.dim, lambda i, j: apply_table(mult, apply_table(mult, e(i), w), e(j)))
    return StructureAlgebra(A.basis, left=mult, right=right, operators=A.operators, unit=A.unit)


def from_td_operator(A: StructureAlgebra, P: LinearOperator) -> StructureAlgebra:
    """TCDA from an operator on a unital algebra: ``x ⊢ y = -x·P(1)·y``, carrying ``P``.

    When ``P`` is a TD operator the result is a Rota-Baxter dialgebra.
    """
    if A.unit is None:
        raise MissingOperatorError("the TD construction requires a declared unit")
    w = vec_scale(-1, P(A.unit_vector()))
    return from_central_weight(A, w).with_operator("P", P)


def is_central(A: StructureAlgebra, w) -> bool:
    w = as_vec(w, A.dim)
    return all(
        apply_table(A.left, w, A.basis_vector(i)) == apply_table(A.left, A.basis_vector(i), w) for i in range(A.dim)
    )


def commutes(f: LinearOperator, g: LinearOperator) -> bool:
    return f.compose(g) == g.compose(f)


def mutate(A: FiniteAlgebra, where, i, j, k, value) -> FiniteAlgebra:
    """Copy of ``A`` with one structure constant replaced.

    ``where`` is a product name, or ``"op:NAME"`` for operator entry
    ``(row k, column j)`` (``i`` is ignored then).
    """
    value = Fraction(value)
    if where.startswith("op:"):
        name = where[3:]
        op = A.operator(name)
        cols = {c: dict(v) for c, v in op.columns.items()}
        col = cols.setdefault(j, {})
        col[k] = value
        ops = dict(A.operators)
        ops[name] = LinearOperator(A.dim, cols)
        return replace(A, operators=ops)
    table = {key: dict(v) for key, v in A.table(where).items()}
    table.setdefault((i, j), {})[k] = value
    prods = dict(A.products)
    prods[where] = table
    return replace(A, products=prods)
