"""Pure-Python kernels: weighted lattice-ball counts and Fricke trace trees.

Mirrors _ckernels.pyx operation for operation (same arithmetic order, same
libm calls) so both backends produce bit-identical results.
"""

from __future__ import annotations

import math

BACKEND = "pure"


# ---------------------------------------------------------------------------
# weighted L1 lattice balls in Dehn-Thurston coordinates
#
# Points (m, t) with m_i >= 0 integers, t_i integers, t_i >= 0 where m_i = 0,
# parity: for each region mask, sum of m_i over set bits must be even.
# Count of nonzero points with sum(m_i w_i + |t_i| l_i) <= L.
# ---------------------------------------------------------------------------


def _tcount(ls, zero_m, i, budget):
    # number of admissible t_(i..N-1) vectors with sum |t_j| l_j <= budget
    n = len(ls)
    if i == n:
        return 1
    k = math.floor(budget / ls[i])
    if i == n - 1:
        return k + 1 if zero_m[i] else 2 * k + 1
    total = _tcount(ls, zero_m, i + 1, budget)  # t_i = 0
    for t in range(1, k + 1):
        sub = _tcount(ls, zero_m, i + 1, budget - t * ls[i])
        total += sub if zero_m[i] else 2 * sub
    return total


def _parity_ok(masks, m):
    for mask in masks:
        s = 0
        for b in range(len(m)):
            if mask >> b & 1:
                s += m[b]
        if s & 1:
            return False
    return True


def _mwalk(ws, ls, masks, L, i, cost, m):
    n = len(ws)
    if i == n:
        if not _parity_ok(masks, m):
            return 0
        return _tcount(ls, [mi == 0 for mi in m], 0, L - cost)
    total = 0
    mi = 0
    while cost + mi * ws[i] <= L:
        m[i] = mi
        total += _mwalk(ws, ls, masks, L, i + 1, cost + mi * ws[i], m)
        mi += 1
    m[i] = 0
    return total


def count_ball(ws, ls, masks, L):
    """Lattice points in the weighted ball, zero excluded."""
    if L <= 0:
        return 0
    n = len(ws)
    total = _mwalk(list(ws), list(ls), list(masks), L, 0, 0.0, [0] * n)
    return total - 1  # remove the zero point, always admissible and in the ball


# ---------------------------------------------------------------------------
# Fricke trace trees on the once-punctured torus
#
# Slopes p/q (gcd = 1) label simple closed curves; traces follow the tree
# recursion child = t_left * t_right - t_coparent from the root triangles
# (0/1, 1/0, 1/1) and (0/1, 1/0, -1/1).  Lengths are 2*acosh(trace/2).
#
# Pruning: once a child trace exceeds both parents, every deeper trace in
# that subtree is larger still (the recursion gives t_child > t_parent
# whenever the two frontier traces exceed the coparent), so a subtree is cut
# when its child trace exceeds both parents and the target bound.
# ---------------------------------------------------------------------------


def trace_of_slope(x, y, z, p, q):
    """Trace of the slope p/q curve given root traces (x, y, z)."""
    if q < 0:
        raise ValueError("slope denominator must be nonnegative")
    if p < 0:
        return trace_of_slope(x, y, x * y - z, -p, q)
    if (p, q) == (0, 1):
        return x
    if (p, q) == (1, 0):
        return y
    pl, ql, tl = 0, 1, x
    pr, qr, tr = 1, 0, y
    pm, qm, tm = 1, 1, z
    while (pm, qm) != (p, q):
        if p * qm < pm * q:  # target left of mediant
            tnew = tl * tm - tr
            pr, qr, tr = pm, qm, tm
            pm, qm, tm = pl + pr, ql + qr, tnew
        else:
            tnew = tm * tr - tl
            pl, ql, tl = pm, qm, tm
            pm, qm, tm = pl + pr, ql + qr, tnew
    return tm


def _tree_walk(x, y, z, tmax, visit):
    """DFS over both root triangles; visit(p, q, trace) for every slope with
    trace <= tmax (roots 0/1 and 1/0 included)."""
    if x <= tmax:
        visit(0, 1, x)
    if y <= tmax:
        visit(1, 0, y)
    for sign, zroot in ((1, z), (-1, x * y - z)):
        # stack entries: (pl, ql, tl, pr, qr, tr, tco) for the edge whose
        # mediant is next
        stack = [(0, 1, x, 1, 0, y, zroot)]
        while stack:
            pl, ql, tl, pr, qr, tr, tm = stack.pop()
            if tm > tmax and tm > tl and tm > tr:
                continue
            pm, qm = pl + pr, ql + qr
            if tm <= tmax:
                visit(sign * pm, qm, tm)
            stack.append((pl, ql, tl, pm, qm, tm, tl * tm - tr))
            stack.append((pm, qm, tm, pr, qr, tr, tm * tr - tl))
    return None


def slopes_upto(x, y, z, L):
    """All slopes with length <= L as (p, q, trace) triples, sorted by
    (trace, q, p)."""
    tmax = 2.0 * math.cosh(L / 2.0)
    out = []
    _tree_walk(x, y, z, tmax, lambda p, q, t: out.append((p, q, t)))
    out.sort(key=lambda s: (s[2], s[1], s[0]))
    return out


def count_upto(x, y, z, L):
    """Number of slopes with length <= L."""
    tmax = 2.0 * math.cosh(L / 2.0)
    box = [0]

    def visit(p, q, t):
        box[0] += 1

    _tree_walk(x, y, z, tmax, visit)
    return box[0]


def count_multi(x, y, z, L):
    """Number of integer multiples of slopes with total length <= L,
    i.e. sum over slopes of floor(L / length)."""
    tmax = 2.0 * math.cosh(L / 2.0)
    box = [0]

    def visit(p, q, t):
        box[0] += math.floor(L / (2.0 * math.acosh(t / 2.0)))

    _tree_walk(x, y, z, tmax, visit)
    return box[0]
