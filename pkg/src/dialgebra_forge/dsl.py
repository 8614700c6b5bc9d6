"""A small language for multilinear identities.

    binary l r; unary P; vars x y; P(x) l P(y) = P(x l P(y)) + P(P(x) l y) + P(x r y)

Declarations name the binary (infix) symbols, the unary (prefix) symbols,
optional named rational parameters and the variables. A term is an optional
rational coefficient and an optional parameter in front of a factor; a
factor is a chain of primaries joined by one repeated infix symbol, read
left-associated. ``1`` is the unit of the target algebra and ``0`` the zero
element. ``#`` comments run to the end of the line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .algebras import LinearOperator, apply_table, as_vec, combine_tables, vec_axpy, vec_scale, vec_sub
from .errors import BindingError, DslError

MAX_DEPTH = 64
MAX_AST_DEPTH = 256
KEYWORDS = ("binary", "unary", "params", "vars")

# ---------------------------------------------------------------- AST


def _pos():
    return field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    name: str
    pos: tuple = _pos()


@dataclass(frozen=True)
class Unit:
    pos: tuple = _pos()


@dataclass(frozen=True)
class Zero:
    pos: tuple = _pos()


@dataclass(frozen=True)
class Scale:
    coef: Fraction
    param: str | None
    arg: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Add:
    lhs: object
    rhs: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Sub:
    lhs: object
    rhs: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Bin:
    op: str
    lhs: object
    rhs: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Un:
    op: str
    arg: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class IdentityDecl:
    binary: tuple[str, ...]
    unary: tuple[str, ...]
    params: tuple[str, ...]
    vars: tuple[str, ...]
    lhs: object
    rhs: object

    @property
    def symbols(self):
        return self.binary + self.unary


# ---------------------------------------------------------------- lexer


@dataclass(frozen=True)
class Token:
    kind: str  # ident, num, punct, eof
    text: str
    line: int
    col: int


_PUNCT = set("()+-=;/")


def tokenize(text):
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            before = bytes(text[: exc.start]).decode("utf-8", errors="replace")
            line = before.count("\n") + 1
            col = len(before) - (before.rfind("\n") + 1) + 1
            raise DslError("invalid UTF-8 byte", line, col) from None
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col = line + 1, 1
            i += 1
        elif ch in " \t\r\f\v":
            i += 1
            col += 1
        elif ch == "#":
            while i < n and text[i] != "\n":
                i += 1
        elif ch.isascii() and (ch.isalpha() or ch == "_"):
            j = i
            while j < n and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], line, col))
            col += j - i
            i = j
        elif ch.isascii() and ch.isdigit():
            j = i
            while j < n and text[j].isascii() and text[j].isdigit():
                j += 1
            tokens.append(Token("num", text[i:j], line, col))
            col += j - i
            i = j
        elif ch in _PUNCT:
            tokens.append(Token("punct", ch, line, col))
            i += 1
            col += 1
        else:
            raise DslError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("eof", "", line, col))
    return tokens


# ---------------------------------------------------------------- parser


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0
        self.depth = 0
        self.binary = ()
        self.unary = ()
        self.params = ()
        self.vars = ()

    @property
    def tok(self):
        return self.toks[self.i]

    def peek(self, k=1):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return DslError(message, tok.line, tok.col)

    def advance(self):
        tok = self.tok
        if tok.kind != "eof":
            self.i += 1
        return tok

    def expect_punct(self, ch):
        if self.tok.kind != "punct" or self.tok.text != ch:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {ch!r}, found {found!r}")
        return self.advance()

    def is_punct(self, ch, tok=None):
        tok = tok or self.tok
        return tok.kind == "punct" and tok.text == ch

    # declarations

    def names(self, keyword):
        names = []
        while self.tok.kind == "ident" and self.tok.text not in KEYWORDS:
            names.append(self.advance())
        if not names:
            raise self.error(f"'{keyword}' needs at least one name")
        self.expect_punct(";")
        return names

    def declarations(self):
        seen = {}
        sections = {}
        order = list(KEYWORDS)
        last = -1
        while self.tok.kind == "ident" and self.tok.text in KEYWORDS:
            kw = self.advance()
            idx = order.index(kw.text)
            if idx <= last:
                raise self.error(f"'{kw.text}' declaration out of order or repeated", kw)
            last = idx
            names = self.names(kw.text)
            for t in names:
                if t.text in seen:
                    raise self.error(f"name {t.text!r} declared twice", t)
                seen[t.text] = kw.text
            sections[kw.text] = tuple(t.text for t in names)
        for required in ("binary", "vars"):
            if required not in sections:
                raise self.error(f"missing '{required}' declaration")
        self.binary = sections["binary"]
        self.unary = sections.get("unary", ())
        self.params = sections.get("params", ())
        self.vars = sections["vars"]

    def decl(self):
        self.declarations()
        lhs = self.expr()
        self.expect_punct("=")
        rhs = self.expr()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r} after identity")
        for side in (lhs, rhs):
            deep = _too_deep(side)
            if deep is not None:
                raise DslError("expression nested too deeply", *deep.pos)
        return IdentityDecl(self.binary, self.unary, self.params, self.vars, lhs, rhs)

    # expressions

    def enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error("expression nested too deeply")

    def expr(self):
        self.enter()
        node = self.term()
        while self.is_punct("+") or self.is_punct("-"):
            op = self.advance()
            rhs = self.term()
            node = (Add if op.text == "+" else Sub)(node, rhs, (op.line, op.col))
        self.depth -= 1
        return node

    def starts_factor(self, tok):
        if tok.kind == "num":
            return True
        if self.is_punct("(", tok):
            return True
        return tok.kind == "ident" and tok.text not in self.binary

    def term(self):
        start = self.tok
        coef = None
        negate = False
        if self.is_punct("-"):
            self.advance()
            negate = True
        if self.tok.kind == "num":
            num_tok = self.tok
            is_one = num_tok.text == "1" and not self.is_punct("/", self.peek())
            is_zero = num_tok.text == "0" and not self.is_punct("/", self.peek())
            value = self.rational()
            if self.starts_factor(self.tok):
                coef = value
            elif is_one:
                node = self.chain(Unit((num_tok.line, num_tok.col)))
                return Scale(Fraction(-1), None, node, (start.line, start.col)) if negate else node
            elif is_zero and not (self.tok.kind == "ident" and self.tok.text in self.binary):
                return Zero((num_tok.line, num_tok.col))
            else:
                raise self.error("a scalar must multiply a term", num_tok)
        param = None
        if self.tok.kind == "ident" and self.tok.text in self.params:
            param = self.advance().text
            if not self.starts_factor(self.tok):
                raise self.error(f"parameter {param!r} must multiply a term")
        node = self.factor()
        if coef is None and param is None and not negate:
            return node
        c = coef if coef is not None else Fraction(1)
        if negate:
            c = -c
        return Scale(c, param, node, (start.line, start.col))

    def rational(self):
        num = self.advance()
        value = Fraction(int(num.text))
        if self.is_punct("/"):
            self.advance()
            if self.tok.kind != "num":
                raise self.error("expected a denominator")
            den = self.advance()
            if int(den.text) == 0:
                raise self.error("zero denominator", den)
            value /= int(den.text)
        return value

    def factor(self):
        return self.chain(self.primary())

    def chain(self, node):
        op = None
        while self.tok.kind == "ident" and self.tok.text in self.binary:
            sym = self.advance()
            if op is not None and sym.text != op:
                raise self.error("mixed infix operators require parentheses", sym)
            op = sym.text
            rhs = self.primary()
            node = Bin(op, node, rhs, (sym.line, sym.col))
        return node

    def primary(self):
        tok = self.tok
        if tok.kind == "num":
            if tok.text == "1" and not self.is_punct("/", self.peek()):
                self.advance()
                return Unit((tok.line, tok.col))
            raise self.error("only the unit '1' can stand as an operand")
        if self.is_punct("("):
            self.advance()
            node = self.expr()
            self.expect_punct(")")
            return node
        if tok.kind == "ident":
            name = tok.text
            if name in self.vars:
                self.advance()
                return Var(name, (tok.line, tok.col))
            if name in self.unary:
                self.advance()
                self.expect_punct("(")
                self.enter()
                arg = self.expr()
                self.depth -= 1
                self.expect_punct(")")
                return Un(name, arg, (tok.line, tok.col))
            if name in self.binary:
                raise self.error(f"binary symbol {name!r} needs a left operand")
            if name in self.params:
                raise self.error(f"parameter {name!r} must multiply a term")
            raise self.error(f"undeclared symbol {name!r}")
        found = tok.text or "end of input"
        raise self.error(f"unexpected {found!r}")


def _children(node):
    if isinstance(node, (Scale, Un)):
        return (node.arg,)
    if isinstance(node, (Add, Sub, Bin)):
        return (node.lhs, node.rhs)
    return ()


def _too_deep(root):
    """First node found below MAX_AST_DEPTH, or None."""
    stack = [(root, 1)]
    while stack:
        node, depth = stack.pop()
        if depth > MAX_AST_DEPTH:
            return node
        stack.extend((c, depth + 1) for c in _children(node))
    return None


def parse_identity(text) -> IdentityDecl:
    return _Parser(text).decl()


# ---------------------------------------------------------------- printing


def _coef_text(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_expr(node):
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Unit):
        return "1"
    if isinstance(node, Zero):
        return "0"
    if isinstance(node, Un):
        return f"{node.op}({format_expr(node.arg)})"
    if isinstance(node, Bin):
        return f"{_operand(node.lhs)} {node.op} {_operand(node.rhs)}"
    if isinstance(node, Scale):
        head = []
        if node.coef != 1 or node.param is None:
            head.append(_coef_text(node.coef))
        if node.param is not None:
            head.append(node.param)
        arg = node.arg
        body = f"({format_expr(arg)})" if isinstance(arg, (Add, Sub, Scale, Zero)) else format_expr(arg)
        return " ".join(head + [body])
    if isinstance(node, (Add, Sub)):
        sign = "+" if isinstance(node, Add) else "-"
        rhs = format_expr(node.rhs)
        if isinstance(node.rhs, (Add, Sub, Zero)):
            rhs = f"({rhs})"
        return f"{format_expr(node.lhs)} {sign} {rhs}"
    raise TypeError(f"not an expression node: {node!r}")


def _operand(node):
    if isinstance(node, (Var, Unit, Un)):
        return format_expr(node)
    return f"({format_expr(node)})"


def pretty_print(d: IdentityDecl) -> str:
    parts = [f"binary {' '.join(d.binary)};"]
    if d.unary:
        parts.append(f"unary {' '.join(d.unary)};")
    if d.params:
        parts.append(f"params {' '.join(d.params)};")
    parts.append(f"vars {' '.join(d.vars)};")
    parts.append(f"{format_expr(d.lhs)} = {format_expr(d.rhs)}")
    return " ".join(parts)


# ---------------------------------------------------------------- expansion


def expand(node):
    """Distribute sums and scalars: ``{(params, monomial): coefficient}``.

    ``params`` is a sorted tuple of parameter names (with repetition);
    monomials are Var/Unit/Bin/Un trees without positions.
    """
    if isinstance(node, Var):
        return {((), Var(node.name)): Fraction(1)}
    if isinstance(node, Unit):
        return {((), Unit()): Fraction(1)}
    if isinstance(node, Zero):
        return {}
    if isinstance(node, Scale):
        out = {}
        for (ps, m), c in expand(node.arg).items():
            key = (tuple(sorted(ps + (node.param,))) if node.param else ps, m)
            _acc(out, key, c * node.coef)
        return out
    if isinstance(node, (Add, Sub)):
        out = dict(expand(node.lhs))
        sign = 1 if isinstance(node, Add) else -1
        for key, c in expand(node.rhs).items():
            _acc(out, key, sign * c)
        return out
    if isinstance(node, Bin):
        left, right = expand(node.lhs), expand(node.rhs)
        out = {}
        for (pa, ma), ca in left.items():
            for (pb, mb), cb in right.items():
                _acc(out, (tuple(sorted(pa + pb)), Bin(node.op, ma, mb)), ca * cb)
        return out
    if isinstance(node, Un):
        return {(ps, Un(node.op, m)): c for (ps, m), c in expand(node.arg).items()}
    raise TypeError(f"not an expression node: {node!r}")


def _acc(out, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def expand_identity(d: IdentityDecl):
    """Monomial expansion of ``lhs - rhs``."""
    out = dict(expand(d.lhs))
    for key, c in expand(d.rhs).items():
        _acc(out, key, -c)
    return out


def monomial_vars(m):
    if isinstance(m, Var):
        return [m.name]
    if isinstance(m, Unit):
        return []
    if isinstance(m, Un):
        return monomial_vars(m.arg)
    if isinstance(m, Bin):
        return monomial_vars(m.lhs) + monomial_vars(m.rhs)
    raise TypeError(f"not a monomial: {m!r}")


@dataclass(frozen=True)
class MultilinearReport:
    ok: bool
    side: str | None = None
    monomial: str | None = None
    reason: str | None = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "multilinear"
        return f"not multilinear: {self.side} monomial {self.monomial}: {self.reason}"


def validate_multilinear(d: IdentityDecl) -> MultilinearReport:
    for side, node in (("left", d.lhs), ("right", d.rhs)):
        for (_, m), _c in expand(node).items():
            used = monomial_vars(m)
            for v in d.vars:
                n = used.count(v)
                if n != 1:
                    what = "missing" if n == 0 else f"occurs {n} times"
                    return MultilinearReport(False, side, format_expr(m), f"variable {v} {what}")
    return MultilinearReport(True)


# ---------------------------------------------------------------- binding and evaluation


@dataclass(frozen=True)
class BoundSymbols:
    """Concrete meaning of each symbol of a declaration on one algebra."""

    dim: int
    tables: dict
    operators: dict
    params: dict
    unit: dict | None
    sources: dict = field(default_factory=dict, compare=False)


def _resolve_table(algebra, spec):
    if isinstance(spec, str):
        return algebra.table(spec)
    if isinstance(spec, Mapping):
        return combine_tables(((c, algebra.table(name)) for name, c in spec.items()), algebra.dim)
    raise BindingError(f"cannot bind a binary symbol to {spec!r}")


def _resolve_operator(algebra, spec):
    if isinstance(spec, LinearOperator):
        if spec.dim != algebra.dim:
            raise BindingError(f"operator of dimension {spec.dim} bound on algebra of dimension {algebra.dim}")
        return spec
    if isinstance(spec, str):
        if spec == "id":
            return LinearOperator.identity(algebra.dim)
        return algebra.operator(spec)
    if isinstance(spec, Mapping):
        acc = LinearOperator.zero(algebra.dim)
        for name, c in spec.items():
            acc = acc + Fraction(c) * _resolve_operator(algebra, name)
        return acc
    raise BindingError(f"cannot bind a unary symbol to {spec!r}")


def uses_unit(d: IdentityDecl):
    def walk(n):
        if isinstance(n, Unit):
            return True
        if isinstance(n, (Scale, Un)):
            return walk(n.arg)
        if isinstance(n, (Add, Sub, Bin)):
            return walk(n.lhs) or walk(n.rhs)
        return False

    return walk(d.lhs) or walk(d.rhs)


def bind(d: IdentityDecl, algebra, binding: Mapping | None = None) -> BoundSymbols:
    """Resolve every symbol and parameter of ``d`` against ``algebra``.

    ``binding`` maps binary symbols to a product name or ``{name: coef}``,
    unary symbols to an operator name, ``"id"`` or ``{name: coef}``, and
    parameters to rationals. Unmapped symbols are looked up by their own
    name.
    """
    from .errors import MissingOperatorError

    binding = dict(binding or {})
    tables, ops, params = {}, {}, {}
    try:
        for s in d.binary:
            tables[s] = _resolve_table(algebra, binding.get(s, s))
        for s in d.unary:
            ops[s] = _resolve_operator(algebra, binding.get(s, s))
    except MissingOperatorError as exc:
        raise BindingError(str(exc)) from None
    for p in d.params:
        if p not in binding:
            raise BindingError(f"parameter {p!r} has no value")
        params[p] = Fraction(binding[p])
    unit = None
    if uses_unit(d):
        if algebra.unit is None:
            raise BindingError("suite requires unit: the algebra declares none")
        unit = algebra.unit_vector()
    return BoundSymbols(algebra.dim, tables, ops, params, unit, dict(binding))


def eval_node(node, bound: BoundSymbols, assignment):
    if isinstance(node, Var):
        try:
            return assignment[node.name]
        except KeyError:
            raise BindingError(f"variable {node.name!r} has no value") from None
    if isinstance(node, Unit):
        if bound.unit is None:
            raise BindingError("suite requires unit: the algebra declares none")
        return bound.unit
    if isinstance(node, Zero):
        return {}
    if isinstance(node, Scale):
        c = node.coef * (bound.params[node.param] if node.param else 1)
        return vec_scale(c, eval_node(node.arg, bound, assignment))
    if isinstance(node, Add):
        return vec_axpy(dict(eval_node(node.lhs, bound, assignment)), 1, eval_node(node.rhs, bound, assignment))
    if isinstance(node, Sub):
        return vec_sub(eval_node(node.lhs, bound, assignment), eval_node(node.rhs, bound, assignment))
    if isinstance(node, Bin):
        return apply_table(
            bound.tables[node.op], eval_node(node.lhs, bound, assignment), eval_node(node.rhs, bound, assignment)
        )
    if isinstance(node, Un):
        return bound.operators[node.op](eval_node(node.arg, bound, assignment))
    raise TypeError(f"not an expression node: {node!r}")


def _check_assignment(d, bound, assignment):
    out = {}
    for v in d.vars:
        if v not in assignment:
            raise BindingError(f"variable {v!r} has no value")
        out[v] = as_vec(assignment[v], bound.dim)
    return out


def eval_ast(d: IdentityDecl, algebra_or_bound, binding=None, assignment=None):
    """Residual ``lhs - rhs`` of ``d`` at the given variable assignment."""
    bound = algebra_or_bound if isinstance(algebra_or_bound, BoundSymbols) else bind(d, algebra_or_bound, binding)
    values = _check_assignment(d, bound, assignment or {})
    return vec_sub(eval_node(d.lhs, bound, values), eval_node(d.rhs, bound, values))


def eval_expansion(d: IdentityDecl, bound: BoundSymbols, assignment):
    """Same residual as :func:`eval_ast`, computed monomial by monomial."""
    values = _check_assignment(d, bound, assignment)
    out = {}
    for (ps, m), c in expand_identity(d).items():
        for p in ps:
            c *= bound.params[p]
        vec_axpy(out, c, eval_node(m, bound, values))
    return out
