# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: weighted lattice-ball counts and Fricke trace trees.

Twin of _pykernels.py; arithmetic is performed in the same order with the
same libm calls so both backends return bit-identical values.
"""

from libc.math cimport acosh, cosh, floor
from libc.stdlib cimport free, malloc

BACKEND = "c"

cdef enum:
    MAXDIM = 8


# ---------------------------------------------------------------------------
# weighted L1 lattice balls in Dehn-Thurston coordinates
# ---------------------------------------------------------------------------

cdef long long _tcount(double* ls, int* zero_m, int n, int i, double budget) noexcept nogil:
    cdef long long k, total
    cdef long long t
    if i == n:
        return 1
    k = <long long>floor(budget / ls[i])
    if i == n - 1:
        return k + 1 if zero_m[i] else 2 * k + 1
    total = _tcount(ls, zero_m, n, i + 1, budget)
    for t in range(1, k + 1):
        if zero_m[i]:
            total += _tcount(ls, zero_m, n, i + 1, budget - t * ls[i])
        else:
            total += 2 * _tcount(ls, zero_m, n, i + 1, budget - t * ls[i])
    return total


cdef long long _mwalk(double* ws, double* ls, unsigned int* masks, int nmask,
                      int n, double L, int i, double cost, long long* m) noexcept nogil:
    cdef long long total, mi
    cdef int j, b
    cdef long long s
    cdef int zero_m[MAXDIM]
    if i == n:
        for j in range(nmask):
            s = 0
            for b in range(n):
                if masks[j] >> b & 1:
                    s += m[b]
            if s & 1:
                return 0
        for b in range(n):
            zero_m[b] = 1 if m[b] == 0 else 0
        return _tcount(ls, zero_m, n, 0, L - cost)
    total = 0
    mi = 0
    while cost + mi * ws[i] <= L:
        m[i] = mi
        total += _mwalk(ws, ls, masks, nmask, n, L, i + 1, cost + mi * ws[i], m)
        mi += 1
    m[i] = 0
    return total


def count_ball(ws, ls, masks, double L):
    """Lattice points in the weighted ball, zero excluded."""
    cdef int n = len(ws)
    cdef int nmask = len(masks)
    cdef double cws[MAXDIM]
    cdef double cls[MAXDIM]
    cdef unsigned int cmasks[MAXDIM]
    cdef long long m[MAXDIM]
    cdef long long total
    cdef int i
    if L <= 0:
        return 0
    if n > MAXDIM or nmask > MAXDIM:
        raise ValueError("kernel supports at most %d cuffs/regions" % MAXDIM)
    for i in range(n):
        cws[i] = ws[i]
        cls[i] = ls[i]
        m[i] = 0
    for i in range(nmask):
        cmasks[i] = masks[i]
    with nogil:
        total = _mwalk(cws, cls, cmasks, nmask, n, L, 0, 0.0, m)
    return total - 1


# ---------------------------------------------------------------------------
# Fricke trace trees on the once-punctured torus
# ---------------------------------------------------------------------------

def trace_of_slope(double x, double y, double z, long p, long q):
    """Trace of the slope p/q curve given root traces (x, y, z)."""
    cdef long pl, ql, pr, qr, pm, qm
    cdef double tl, tr, tm, tnew
    if q < 0:
        raise ValueError("slope denominator must be nonnegative")
    if p < 0:
        return trace_of_slope(x, y, x * y - z, -p, q)
    if p == 0 and q == 1:
        return x
    if p == 1 and q == 0:
        return y
    pl, ql, tl = 0, 1, x
    pr, qr, tr = 1, 0, y
    pm, qm, tm = 1, 1, z
    while pm != p or qm != q:
        if p * qm < pm * q:
            tnew = tl * tm - tr
            pr, qr, tr = pm, qm, tm
            pm, qm, tm = pl + pr, ql + qr, tnew
        else:
            tnew = tm * tr - tl
            pl, ql, tl = pm, qm, tm
            pm, qm, tm = pl + pr, ql + qr, tnew
    return tm


cdef struct Edge:
    long pl, ql, pr, qr
    double tl, tr, tm


cdef struct Stack:
    Edge* data
    size_t size
    size_t cap


cdef int _push(Stack* st, long pl, long ql, double tl,
               long pr, long qr, double tr, double tm) noexcept nogil:
    cdef Edge* grown
    cdef size_t i
    cdef Edge* e
    if st.size == st.cap:
        st.cap *= 2
        grown = <Edge*>malloc(st.cap * sizeof(Edge))
        if grown == NULL:
            return -1
        for i in range(st.size):
            grown[i] = st.data[i]
        free(st.data)
        st.data = grown
    e = &st.data[st.size]
    e.pl = pl
    e.ql = ql
    e.pr = pr
    e.qr = qr
    e.tl = tl
    e.tr = tr
    e.tm = tm
    st.size += 1
    return 0


ctypedef long long (*visit_t)(long p, long q, double t, double L) noexcept nogil


cdef long long _visit_one(long p, long q, double t, double L) noexcept nogil:
    return 1


cdef long long _visit_floor(long p, long q, double t, double L) noexcept nogil:
    return <long long>floor(L / (2.0 * acosh(t / 2.0)))


cdef long long _tree_reduce(double x, double y, double z, double tmax,
                            visit_t visit, double L) except? -1:
    cdef long long acc = 0
    cdef double zroot, tl, tr, tm
    cdef long pl, ql, pr, qr, pm, qm
    cdef int side, rc
    cdef Stack st
    if x <= tmax:
        acc += visit(0, 1, x, L)
    if y <= tmax:
        acc += visit(1, 0, y, L)
    st.cap = 256
    st.data = <Edge*>malloc(st.cap * sizeof(Edge))
    if st.data == NULL:
        raise MemoryError()
    try:
        for side in range(2):
            zroot = z if side == 0 else x * y - z
            st.size = 0
            rc = _push(&st, 0, 1, x, 1, 0, y, zroot)
            if rc < 0:
                raise MemoryError()
            with nogil:
                while st.size > 0:
                    st.size -= 1
                    pl = st.data[st.size].pl
                    ql = st.data[st.size].ql
                    tl = st.data[st.size].tl
                    pr = st.data[st.size].pr
                    qr = st.data[st.size].qr
                    tr = st.data[st.size].tr
                    tm = st.data[st.size].tm
                    if tm > tmax and tm > tl and tm > tr:
                        continue
                    pm = pl + pr
                    qm = ql + qr
                    if tm <= tmax:
                        acc += visit(pm if side == 0 else -pm, qm, tm, L)
                    rc = _push(&st, pl, ql, tl, pm, qm, tm, tl * tm - tr)
                    if rc < 0:
                        break
                    rc = _push(&st, pm, qm, tm, pr, qr, tr, tm * tr - tl)
                    if rc < 0:
                        break
            if rc < 0:
                raise MemoryError()
    finally:
        free(st.data)
    return acc


def slopes_upto(double x, double y, double z, double L):
    """All slopes with length <= L as (p, q, trace) triples, sorted by
    (trace, q, p)."""
    cdef double tmax = 2.0 * cosh(L / 2.0)
    cdef list out = []
    cdef double zroot, tl, tr, tm
    cdef long pl, ql, pr, qr, pm, qm
    cdef int side
    cdef Stack st
    cdef int rc = 0
    if x <= tmax:
        out.append((0, 1, x))
    if y <= tmax:
        out.append((1, 0, y))
    st.cap = 256
    st.data = <Edge*>malloc(st.cap * sizeof(Edge))
    if st.data == NULL:
        raise MemoryError()
    try:
        for side in range(2):
            zroot = z if side == 0 else x * y - z
            st.size = 0
            if _push(&st, 0, 1, x, 1, 0, y, zroot) < 0:
                raise MemoryError()
            while st.size > 0:
                st.size -= 1
                pl = st.data[st.size].pl
                ql = st.data[st.size].ql
                tl = st.data[st.size].tl
                pr = st.data[st.size].pr
                qr = st.data[st.size].qr
                tr = st.data[st.size].tr
                tm = st.data[st.size].tm
                if tm > tmax and tm > tl and tm > tr:
                    continue
                pm = pl + pr
                qm = ql + qr
                if tm <= tmax:
                    out.append((pm if side == 0 else -pm, qm, tm))
                if _push(&st, pl, ql, tl, pm, qm, tm, tl * tm - tr) < 0:
                    raise MemoryError()
                if _push(&st, pm, qm, tm, pr, qr, tr, tm * tr - tl) < 0:
                    raise MemoryError()
    finally:
        free(st.data)
    out.sort(key=lambda s: (s[2], s[1], s[0]))
    return out


def count_upto(double x, double y, double z, double L):
    """Number of slopes with length <= L."""
    cdef double tmax = 2.0 * cosh(L / 2.0)
    return _tree_reduce(x, y, z, tmax, _visit_one, L)


def count_multi(double x, double y, double z, double L):
    """Number of integer multiples of slopes with total length <= L,
    i.e. sum over slopes of floor(L / length)."""
    cdef double tmax = 2.0 * cosh(L / 2.0)
    return _tree_reduce(x, y, z, tmax, _visit_floor, L)
