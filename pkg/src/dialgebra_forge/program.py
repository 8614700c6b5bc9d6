"""Compile a bound multilinear identity into an integer evaluation program.

The residual ``lhs - rhs`` is expanded into monomials; every bilinear table
and operator is scaled to integer entries, and each monomial gets an integer
weight so that the integer residual is a fixed nonzero multiple of the exact
rational one. Monomials share subterms through a hash-consed node list in
topological order, each node remembering the highest variable it depends on.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .dsl import Bin, BoundSymbols, IdentityDecl, Un, Unit, Var, expand_identity

VAR, UNIT, UNARY, BINARY = 0, 1, 2, 3


def _denominator_lcm(vectors):
    d = 1
    for vec in vectors:
        for c in vec.values():
            d = lcm(d, c.denominator)
    return d


@dataclass(frozen=True)
class Program:
    dim: int
    nvars: int
    unit: int  # -1 when the identity never uses the unit
    # per table: {(i, j): ((k, c), ...)} with integer c
    binary: tuple
    # per operator: {j: ((i, c), ...)}
    unary: tuple
    # per node: (kind, arg, left child, right child)
    nodes: tuple
    maxvar: tuple
    roots: tuple  # ((weight, node), ...)
    scale: int = 1  # integer residual = scale * exact residual

    def flat(self):
        """Flat typed arrays for the compiled kernel."""
        dim = self.dim
        bptr, bk, bc = array("q", [0]), array("i"), array("q")
        for table in self.binary:
            for i in range(dim):
                for j in range(dim):
                    for k, c in table.get((i, j), ()):
                        bk.append(k)
                        bc.append(c)
                    bptr.append(len(bk))
        uptr, uk, uc = array("q", [0]), array("i"), array("q")
        for op in self.unary:
            for j in range(dim):
                for i, c in op.get(j, ()):
                    uk.append(i)
                    uc.append(c)
                uptr.append(len(uk))
        kinds = array("i", (n[0] for n in self.nodes))
        args = array("i", (n[1] for n in self.nodes))
        lefts = array("i", (n[2] for n in self.nodes))
        rights = array("i", (n[3] for n in self.nodes))
        maxvar = array("i", self.maxvar)
        rw = array("q", (w for w, _ in self.roots))
        rn = array("i", (n for _, n in self.roots))
        return (kinds, args, lefts, rights, maxvar, bptr, bk, bc, uptr, uk, uc, rw, rn)


def compile_identity(d: IdentityDecl, bound: BoundSymbols) -> Program:
    table_ids = {s: n for n, s in enumerate(d.binary)}
    op_ids = {s: n for n, s in enumerate(d.unary)}
    var_ids = {v: n for n, v in enumerate(d.vars)}

    tscale = [_denominator_lcm(bound.tables[s].values()) for s in d.binary]
    oscale = [_denominator_lcm(bound.operators[s].columns.values()) for s in d.unary]
    binary = tuple(
        {key: tuple((k, int(c * tscale[n])) for k, c in sorted(vec.items())) for key, vec in bound.tables[s].items()}
        for n, s in enumerate(d.binary)
    )
    unary = tuple(
        {j: tuple((i, int(c * oscale[n])) for i, c in sorted(col.items())) for j, col in bound.operators[s].columns.items()}
        for n, s in enumerate(d.unary)
    )

    nodes, maxvar, index = [], [], {}

    def node(m):
        if m in index:
            return index[m]
        if isinstance(m, Var):
            entry, mv = (VAR, var_ids[m.name], -1, -1), var_ids[m.name]
        elif isinstance(m, Unit):
            entry, mv = (UNIT, 0, -1, -1), -1
        elif isinstance(m, Un):
            a = node(m.arg)
            entry, mv = (UNARY, op_ids[m.op], a, -1), maxvar[a]
        elif isinstance(m, Bin):
            a, b = node(m.lhs), node(m.rhs)
            entry, mv = (BINARY, table_ids[m.op], a, b), max(maxvar[a], maxvar[b])
        else:
            raise TypeError(f"not a monomial: {m!r}")
        index[m] = len(nodes)
        nodes.append(entry)
        maxvar.append(mv)
        return index[m]

    def usage(m, counts_t, counts_o):
        if isinstance(m, Un):
            counts_o[op_ids[m.op]] += 1
            usage(m.arg, counts_t, counts_o)
        elif isinstance(m, Bin):
            counts_t[table_ids[m.op]] += 1
            usage(m.lhs, counts_t, counts_o)
            usage(m.rhs, counts_t, counts_o)

    terms = []
    for (params, m), c in expand_identity(d).items():
        for p in params:
            c *= bound.params[p]
        if not c:
            continue
        ct, co = [0] * len(d.binary), [0] * len(d.unary)
        usage(m, ct, co)
        s = 1
        for n, k in enumerate(ct):
            s *= tscale[n] ** k
        for n, k in enumerate(co):
            s *= oscale[n] ** k
        terms.append((Fraction(c), s, node(m)))
    big = 1
    for c, s, _ in terms:
        big = lcm(big, s * c.denominator)
    merged = {}
    for c, s, n in terms:
        w = c * big / s
        assert w.denominator == 1
        merged[n] = merged.get(n, 0) + int(w)
    roots = tuple((w, n) for n, w in sorted(merged.items()) if w)

    unit = -1
    if bound.unit is not None:
        (unit,) = bound.unit.keys()
    return Program(
        dim=bound.dim,
        nvars=len(d.vars),
        unit=unit,
        binary=binary,
        unary=unary,
        nodes=tuple(nodes),
        maxvar=tuple(maxvar),
        roots=roots,
        scale=big,
    )
