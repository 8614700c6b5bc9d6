# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel: same contract as ``_pykernel.run`` on int64 values.

Every multiply and add is overflow-checked; on overflow ``OverflowError`` is
raised and the caller reruns the range on the Python kernel.
"""

from libc.stdlib cimport calloc, free
from libc.string cimport memset

cdef extern from *:
    bint mul_ovf "__builtin_mul_overflow"(long long a, long long b, long long *r) nogil
    bint add_ovf "__builtin_add_overflow"(long long a, long long b, long long *r) nogil

cdef enum:
    VAR = 0
    UNIT = 1
    UNARY = 2
    BINARY = 3


cdef int _eval(int k, int kind, int arg, int a, int b, int dim, const int *idx, int unit,
               long long *vals, int *nz, int *nzc, char *mark,
               const long long *bptr, const int *bk, const long long *bc,
               const long long *uptr, const int *uk, const long long *uc) nogil:
    cdef long long *out = vals + <long long>k * dim
    cdef int *onz = nz + <long long>k * dim
    cdef int i, j, t, p, q, m = 0
    cdef long long c, d, cd, e, s, base
    # clear previous value
    for t in range(nzc[k]):
        out[onz[t]] = 0
    nzc[k] = 0
    if kind == VAR:
        out[idx[arg]] = 1
        onz[0] = idx[arg]
        nzc[k] = 1
        return 0
    if kind == UNIT:
        out[unit] = 1
        onz[0] = unit
        nzc[k] = 1
        return 0
    if kind == UNARY:
        for p in range(nzc[a]):
            j = nz[<long long>a * dim + p]
            c = vals[<long long>a * dim + j]
            base = <long long>arg * dim + j
            for t in range(uptr[base], uptr[base + 1]):
                i = uk[t]
                if mul_ovf(c, uc[t], &e) or add_ovf(out[i], e, &s):
                    return -1
                out[i] = s
                if not mark[i]:
                    mark[i] = 1
                    onz[m] = i
                    m += 1
    else:
        for p in range(nzc[a]):
            i = nz[<long long>a * dim + p]
            c = vals[<long long>a * dim + i]
            for q in range(nzc[b]):
                j = nz[<long long>b * dim + q]
                base = (<long long>arg * dim + i) * dim + j
                if bptr[base] == bptr[base + 1]:
                    continue
                d = vals[<long long>b * dim + j]
                if mul_ovf(c, d, &cd):
                    return -1
                for t in range(bptr[base], bptr[base + 1]):
                    if mul_ovf(cd, bc[t], &e) or add_ovf(out[bk[t]], e, &s):
                        return -1
                    out[bk[t]] = s
                    if not mark[bk[t]]:
                        mark[bk[t]] = 1
                        onz[m] = bk[t]
                        m += 1
    # compact: keep nonzero entries, reset marks
    t = 0
    for p in range(m):
        i = onz[p]
        mark[i] = 0
        if out[i] != 0:
            onz[t] = i
            t += 1
    nzc[k] = t
    return 0


def run(prog, int lo, int hi, int cap):
    """Evaluate every tuple whose first index lies in ``[lo, hi)``."""
    cdef int n = prog.nvars, dim = prog.dim, unit = prog.unit
    if lo >= hi:
        return 0, []
    (kinds, args, lefts, rights, maxvar, bptr, bk, bc, uptr, uk, uc, rw, rn) = prog.flat()
    cdef int nn = len(kinds), nr = len(rw)
    cdef int[::1] K = kinds, A = args, L = lefts, R = rights, MV = maxvar, BK = bk, UK = uk, RN = rn
    cdef long long[::1] BP = bptr, BC = bc, UP = uptr, UC = uc, RW = rw
    # empty arrays give null memoryview buffers; point at a dummy instead
    cdef int zi = 0
    cdef long long zl = 0
    cdef const int *pbk = &BK[0] if BK.shape[0] else &zi
    cdef const long long *pbc = &BC[0] if BC.shape[0] else &zl
    cdef const int *puk = &UK[0] if UK.shape[0] else &zi
    cdef const long long *puc = &UC[0] if UC.shape[0] else &zl
    cdef long long *vals = <long long *>calloc(<size_t>(nn if nn else 1) * dim, sizeof(long long))
    cdef int *nz = <int *>calloc(<size_t>(nn if nn else 1) * dim, sizeof(int))
    cdef int *nzc = <int *>calloc(nn if nn else 1, sizeof(int))
    cdef char *mark = <char *>calloc(dim, sizeof(char))
    cdef long long *res = <long long *>calloc(dim, sizeof(long long))
    cdef int *idx = <int *>calloc(n if n else 1, sizeof(int))
    cdef int k, p, r, t, i
    cdef long long e, s
    cdef bint overflow = False, bad
    failures = 0
    examples = []
    try:
        if not (vals and nz and nzc and mark and res and idx):
            raise MemoryError()
        if n:
            idx[0] = lo
        for k in range(nn):
            if _eval(k, K[k], A[k], L[k], R[k], dim, idx, unit, vals, nz, nzc, mark,
                     &BP[0], pbk, pbc, &UP[0], puk, puc) < 0:
                overflow = True
                break
        while not overflow:
            bad = False
            for r in range(nr):
                k = RN[r]
                for t in range(nzc[k]):
                    i = nz[<long long>k * dim + t]
                    if mul_ovf(RW[r], vals[<long long>k * dim + i], &e) or add_ovf(res[i], e, &s):
                        overflow = True
                        break
                    res[i] = s
                if overflow:
                    break
            if overflow:
                break
            for i in range(dim):
                if res[i] != 0:
                    bad = True
                    break
            if bad:
                failures += 1
                if len(examples) < cap:
                    examples.append((tuple([idx[t] for t in range(n)]),
                                     {i: res[i] for i in range(dim) if res[i] != 0}))
            memset(res, 0, dim * sizeof(long long))
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
            for k in range(nn):
                if MV[k] >= p:
                    if _eval(k, K[k], A[k], L[k], R[k], dim, idx, unit, vals, nz, nzc, mark,
                             &BP[0], pbk, pbc, &UP[0], puk, puc) < 0:
                        overflow = True
                        break
    finally:
        free(vals); free(nz); free(nzc); free(mark); free(res); free(idx)
    if overflow:
        raise OverflowError("int64 overflow in compiled kernel")
    return failures, examples
