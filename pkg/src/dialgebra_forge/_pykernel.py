"""Reference kernel: exhaustive basis-tuple evaluation with Python ints."""

from __future__ import annotations

from .program import BINARY, UNARY, UNIT, VAR, Program


def _eval(kind, arg, a, b, idx, vals, prog):
    if kind == VAR:
        return {idx[arg]: 1}
    if kind == UNIT:
        return {prog.unit: 1}
    out = {}
    if kind == UNARY:
        op = prog.unary[arg]
        for j, c in vals[a].items():
            for i, e in op.get(j, ()):
                out[i] = out.get(i, 0) + c * e
    elif kind == BINARY:
        table = prog.binary[arg]
        y = vals[b]
        for i, c in vals[a].items():
            for j, d in y.items():
                entry = table.get((i, j))
                if entry:
                    cd = c * d
                    for k, e in entry:
                        out[k] = out.get(k, 0) + cd * e
    return {k: v for k, v in out.items() if v}


def run(prog: Program, lo: int, hi: int, cap: int):
    """Evaluate every tuple whose first index lies in ``[lo, hi)``.

    Returns ``(failures, examples)`` where ``examples`` holds the first
    ``cap`` failing ``(tuple, integer residual)`` pairs in tuple order.
    """
    n, dim = prog.nvars, prog.dim
    if lo >= hi:
        return 0, []
    nodes = prog.nodes
    stale = [[k for k, mv in enumerate(prog.maxvar) if mv >= p] for p in range(max(n, 1))]
    idx = [lo] + [0] * (n - 1) if n else []
    vals = [None] * len(nodes)
    for k, (kind, arg, a, b) in enumerate(nodes):
        vals[k] = _eval(kind, arg, a, b, idx, vals, prog)
    failures, examples = 0, []
    while True:
        res = {}
        for w, r in prog.roots:
            for k, v in vals[r].items():
                res[k] = res.get(k, 0) + w * v
        res = {k: v for k, v in res.items() if v}
        if res:
            failures += 1
            if len(examples) < cap:
                examples.append((tuple(idx), res))
        if n == 0:
            break
        p = n - 1
        while p > 0:
            idx[p] += 1
            if idx[p] < dim:
                break
            idx[p] = 0
            p -= 1
        if p == 0:
            idx[0] += 1
            if idx[0] >= hi:
                break
        for k in stale[p]:
            kind, arg, a, b = nodes[k]
            vals[k] = _eval(kind, arg, a, b, idx, vals, prog)
    return failures, examples
