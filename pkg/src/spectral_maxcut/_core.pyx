# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Same signatures and semantics as ``_pycore``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs
from libc.stdlib cimport abs as iabs

cnp.import_array()

ctypedef cnp.int64_t i64
ctypedef cnp.int8_t i8


def weighted_degrees(Py_ssize_t n, const i64[:] u, const i64[:] v, const double[:] w):
    cdef double[:] s = np.zeros(n)
    cdef double[:] c = np.zeros(n)
    cdef Py_ssize_t e, r, i
    cdef double x, t
    with nogil:
        for e in range(u.shape[0]):
            x = fabs(w[e])
            for r in range(2):
                i = u[e] if r == 0 else v[e]
                t = s[i] + x
                if fabs(s[i]) >= x:
                    c[i] += (s[i] - t) + x
                else:
                    c[i] += (x - t) + s[i]
                s[i] = t
    out = np.empty(n)
    cdef double[:] o = out
    for i in range(n):
        o[i] = s[i] + c[i]
    return out


def sweep(const i64[:] indptr, const i64[:] indices, const double[:] weights,
          const i64[:] order, const i8[:] signs, const double[:] absx,
          const double[:] deg):
    cdef Py_ssize_t n = signs.shape[0]
    cdef i8[:] y = np.array(signs, dtype=np.int8)
    cdef Py_ssize_t i, j, k, pos
    cdef double num = 0.0, den = 0.0
    cdef double best_num = 0.0, best_den = 0.0
    cdef Py_ssize_t best_pos = -2, act = 0
    cdef int yi, yj
    with nogil:
        for i in range(n):
            for k in range(indptr[i], indptr[i + 1]):
                j = indices[k]
                if j > i:
                    num += weights[k] * iabs(y[i] + y[j])
            if y[i] != 0:
                den += deg[i]
                if deg[i] > 0:
                    act += 1
        if act > 0:
            best_pos, best_num, best_den = -1, num, den
        for pos in range(n):
            i = order[pos]
            yi = y[i]
            if yi != 0:
                for k in range(indptr[i], indptr[i + 1]):
                    yj = y[indices[k]]
                    num += weights[k] * (iabs(yj) - iabs(yi + yj))
                den -= deg[i]
                if deg[i] > 0:
                    act -= 1
                y[i] = 0
            if pos + 1 < n and absx[pos + 1] == absx[pos]:
                continue
            if act > 0 and (best_pos == -2 or num * best_den < best_num * den):
                best_pos, best_num, best_den = pos, num, den
    return best_pos, best_num, best_den


def greedy(Py_ssize_t n, const i64[:] indptr, const i64[:] indices,
           const double[:] weights, const i64[:] order, double tol):
    side_arr = np.full(n, -1, dtype=np.int8)
    cdef i8[:] side = side_arr
    cdef Py_ssize_t p, i, k
    cdef double a0, a1, g
    cdef int s
    cdef bint improved = True
    with nogil:
        for p in range(order.shape[0]):
            i = order[p]
            a0 = 0.0
            a1 = 0.0
            for k in range(indptr[i], indptr[i + 1]):
                s = side[indices[k]]
                if s == 0:
                    a0 += weights[k]
                elif s == 1:
                    a1 += weights[k]
            side[i] = 1 if a0 > a1 else 0
        while improved:
            improved = False
            for p in range(order.shape[0]):
                i = order[p]
                g = 0.0
                for k in range(indptr[i], indptr[i + 1]):
                    if side[indices[k]] == side[i]:
                        g += weights[k]
                    else:
                        g -= weights[k]
                if g > tol:
                    side[i] = 1 - side[i]
                    improved = True
    return side_arr


def lift(const i64[:] indptr, const i64[:] indices, const double[:] weights,
         const i64[:] order, p):
    q_arr = np.array(p, dtype=np.float64)
    cdef double[:] q = q_arr
    cdef Py_ssize_t a, v, k
    cdef double s, t, e0, e1
    with nogil:
        for a in range(order.shape[0]):
            v = order[a]
            if q[v] == 0.0 or q[v] == 1.0:
                continue
            s = 0.0
            t = 0.0
            for k in range(indptr[v], indptr[v + 1]):
                s += weights[k] * q[indices[k]]
                t += weights[k]
            e1 = t - s
            e0 = s
            if e1 > e0:
                q[v] = 1.0
            elif e0 > e1:
                q[v] = 0.0
            else:
                q[v] = 1.0 if q[v] >= 0.5 else 0.0
    return q_arr.astype(np.int8)


cdef inline int _ctz(unsigned long long x) nogil:
    cdef int r = 0
    while (x & 1) == 0:
        x >>= 1
        r += 1
    return r


def maxcut_enum(Py_ssize_t n, const i64[:] indptr, const i64[:] indices,
                const double[:] weights):
    if n <= 1:
        return 0.0, np.zeros(n, dtype=np.int8)
    if n > 63:
        raise ValueError("too many vertices for exhaustive enumeration")
    side_arr = np.zeros(n, dtype=np.int8)
    cdef i8[:] side = side_arr
    cdef unsigned long long total = (<unsigned long long>1) << (n - 1)
    cdef unsigned long long it, best_gray = 0
    cdef Py_ssize_t b, k
    cdef double cut = 0.0, best = 0.0, dlt
    with nogil:
        it = 1
        while it < total:
            b = _ctz(it)
            dlt = 0.0
            for k in range(indptr[b], indptr[b + 1]):
                if side[indices[k]] == side[b]:
                    dlt += weights[k]
                else:
                    dlt -= weights[k]
            cut += dlt
            side[b] = 1 - side[b]
            if cut > best:
                best = cut
                best_gray = it ^ (it >> 1)
            it += 1
    out = np.zeros(n, dtype=np.int8)
    for b in range(n - 1):
        out[b] = (best_gray >> b) & 1
    return best, out


def ternary_enum(Py_ssize_t n, const i64[:] indptr, const i64[:] indices,
                 const double[:] weights, const double[:] deg, int mode):
    # For each top index t: y_t = +1, y_{>t} = 0, y_{<t} walks a reflected
    # ternary Gray code. Covers every nonzero y exactly once up to sign.
    y_arr = np.zeros(n, dtype=np.int8)
    best_arr = np.zeros(n, dtype=np.int8)
    cdef i8[:] y = y_arr
    cdef i8[:] by = best_arr
    cdef i8[:] cnt = np.zeros(n + 1, dtype=np.int8)
    cdef i8[:] dr = np.zeros(n + 1, dtype=np.int8)
    cdef Py_ssize_t t, i, j, k, jj, act
    cdef double num, den, best_num = 0.0, best_den = 0.0
    cdef bint have = False, better
    cdef int a, b2, yj
    for t in range(n):
        with nogil:
            for i in range(n):
                y[i] = 0
            y[t] = 1
            for i in range(t):
                y[i] = -1
                cnt[i] = 0
                dr[i] = 1
            cnt[t] = 0
            num = 0.0
            den = 0.0
            act = 0
            for i in range(n):
                if y[i] != 0:
                    den += deg[i]
                    if deg[i] > 0:
                        act += 1
                for k in range(indptr[i], indptr[i + 1]):
                    j = indices[k]
                    if j > i:
                        if mode == 0:
                            num += weights[k] * iabs(y[i] + y[j])
                        else:
                            num -= 2.0 * weights[k] * y[i] * y[j]
            while True:
                if act > 0:
                    if not have:
                        better = True
                    elif mode == 0:
                        better = num * best_den < best_num * den
                    else:
                        better = num * best_den > best_num * den
                    if better:
                        have = True
                        best_num = num
                        best_den = den
                        for i in range(n):
                            by[i] = y[i]
                # advance the base-3 counter; digit jj is the one that moves
                jj = 0
                while jj < t and cnt[jj] == 2:
                    cnt[jj] = 0
                    jj += 1
                if jj >= t:
                    break
                cnt[jj] += 1
                a = y[jj]
                b2 = a + dr[jj]
                if b2 == 1 or b2 == -1:
                    dr[jj] = -dr[jj]
                for k in range(indptr[jj], indptr[jj + 1]):
                    yj = y[indices[k]]
                    if mode == 0:
                        num += weights[k] * (iabs(b2 + yj) - iabs(a + yj))
                    else:
                        num -= 2.0 * weights[k] * (b2 - a) * yj
                den += deg[jj] * (iabs(b2) - iabs(a))
                if deg[jj] > 0:
                    act += iabs(b2) - iabs(a)
                y[jj] = b2
    return best_num, best_den, best_arr
