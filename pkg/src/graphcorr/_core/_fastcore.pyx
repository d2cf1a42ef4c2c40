# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
# cython: initializedcheck=False
"""Compiled search kernels.

Semantics mirror ``_pycore`` exactly: enumeration in lexicographic
order, updates on strictly greater scores only, invalid injections
excluded through -inf diagonals of the pair matrices.
"""

from libc.math cimport INFINITY

import numpy as np

cdef double NEG_INF = -INFINITY


cdef inline int _pidx(int a, int b, int k1) nogil:
    # Index of pair (a, b), a < b, in lexicographic pair order.
    return a * (2 * k1 - a - 1) // 2 + (b - a - 1)


cdef double _search2(double[:, :, ::1] m, Py_ssize_t s, long long* out) nogil:
    cdef Py_ssize_t w0, w1
    cdef double best = NEG_INF, v
    for w0 in range(s):
        for w1 in range(s):
            v = m[0, w0, w1]
            if v > best:
                best = v
                out[0] = w0
                out[1] = w1
    return best


cdef double _search3(double[:, :, ::1] m, Py_ssize_t s, long long* out) nogil:
    cdef Py_ssize_t w0, w1, w2
    cdef double p01, t, inmax, tot, best = NEG_INF
    cdef const double* r02
    cdef const double* r12
    for w0 in range(s):
        for w1 in range(s):
            p01 = m[0, w0, w1]
            if p01 == NEG_INF:
                continue
            r02 = &m[1, w0, 0]
            r12 = &m[2, w1, 0]
            inmax = NEG_INF
            for w2 in range(s):
                t = r02[w2] + r12[w2]
                if t > inmax:
                    inmax = t
            tot = p01 + inmax
            if tot > best:
                best = tot
                out[0] = w0
                out[1] = w1
                for w2 in range(s):
                    if r02[w2] + r12[w2] == inmax:
                        out[2] = w2
                        break
    return best


cdef double _search4(double[:, :, ::1] m, Py_ssize_t s, long long* out) nogil:
    # Pair slots: 0=(0,1) 1=(0,2) 2=(0,3) 3=(1,2) 4=(1,3) 5=(2,3).
    cdef Py_ssize_t w0, w1, w2, w3
    cdef double p01, p2, t, inmax, tot, best = NEG_INF
    cdef const double* r03
    cdef const double* r13
    cdef const double* r23
    for w0 in range(s):
        for w1 in range(s):
            p01 = m[0, w0, w1]
            if p01 == NEG_INF:
                continue
            for w2 in range(s):
                p2 = p01 + m[1, w0, w2] + m[3, w1, w2]
                if p2 == NEG_INF:
                    continue
                r03 = &m[2, w0, 0]
                r13 = &m[4, w1, 0]
                r23 = &m[5, w2, 0]
                inmax = NEG_INF
                for w3 in range(s):
                    t = (r03[w3] + r13[w3]) + r23[w3]
                    if t > inmax:
                        inmax = t
                tot = p2 + inmax
                if tot > best:
                    best = tot
                    out[0] = w0
                    out[1] = w1
                    out[2] = w2
                    for w3 in range(s):
                        if (r03[w3] + r13[w3]) + r23[w3] == inmax:
                            out[3] = w3
                            break
    return best


cdef double _search_generic(double[:, :, ::1] m, int k1, Py_ssize_t s,
                            long long* out, long long* stack, double* partial) nogil:
    cdef int t = 0, a
    cdef double best = NEG_INF, acc
    stack[0] = -1
    while t >= 0:
        stack[t] += 1
        if stack[t] == s:
            t -= 1
            continue
        acc = partial[t - 1] if t > 0 else 0.0
        for a in range(t):
            acc += m[_pidx(a, t, k1), stack[a], stack[t]]
        if acc == NEG_INF:
            continue
        partial[t] = acc
        if t == k1 - 1:
            if acc > best:
                best = acc
                for a in range(k1):
                    out[a] = stack[a]
            continue
        t += 1
        stack[t] = -1
    return best


def match_cliques_batch(double[:, ::1] rmat, double[:, ::1] pmat,
                        double[:, ::1] gammas, double[::1] consts, int k1):
    cdef Py_ssize_t n1 = gammas.shape[0]
    cdef Py_ssize_t npairs = gammas.shape[1]
    cdef Py_ssize_t s = rmat.shape[0]
    scores_arr = np.empty(n1)
    images_arr = np.empty((n1, k1), dtype=np.int64)
    cdef double[::1] scores = scores_arr
    cdef long long[:, ::1] images = images_arr
    m_arr = np.empty((npairs, s, s))
    cdef double[:, :, ::1] m = m_arr
    tup_arr = np.empty(k1, dtype=np.int64)
    cdef long long[::1] tup = tup_arr
    stack_arr = np.empty(k1, dtype=np.int64)
    cdef long long[::1] stack = stack_arr
    partial_arr = np.empty(k1)
    cdef double[::1] partial = partial_arr
    cdef Py_ssize_t i, p, a, b
    cdef double g, best
    with nogil:
        for i in range(n1):
            for p in range(npairs):
                g = gammas[i, p]
                for a in range(s):
                    for b in range(s):
                        m[p, a, b] = g * rmat[a, b] + pmat[a, b]
                for a in range(s):
                    m[p, a, a] = NEG_INF
            if k1 == 2:
                best = _search2(m, s, &tup[0])
            elif k1 == 3:
                best = _search3(m, s, &tup[0])
            elif k1 == 4:
                best = _search4(m, s, &tup[0])
            else:
                best = _search_generic(m, k1, s, &tup[0], &stack[0], &partial[0])
            scores[i] = best + consts[i]
            for a in range(k1):
                images[i, a] = tup[a]
    return scores_arr, images_arr


def pairwise_compatible(long long[:, ::1] doms, long long[:, ::1] imgs):
    cdef Py_ssize_t n2 = doms.shape[0]
    cdef Py_ssize_t k1 = doms.shape[1]
    out_arr = np.ones((n2, n2), dtype=np.uint8)
    cdef unsigned char[:, ::1] out = out_arr
    cdef Py_ssize_t a, b, i, j
    cdef bint ok
    with nogil:
        for a in range(n2):
            for b in range(a + 1, n2):
                ok = True
                for i in range(k1):
                    for j in range(k1):
                        if (doms[a, i] == doms[b, j]) != (imgs[a, i] == imgs[b, j]):
                            ok = False
                            break
                    if not ok:
                        break
                out[a, b] = ok
                out[b, a] = ok
    return out_arr.astype(bool)


cdef double _merged_avg(long long[:, ::1] doms, long long[:, ::1] imgs,
                        double[:, ::1] w1, double[:, ::1] w2,
                        double cxy, double cxx, double cyy,
                        long long* uidx, int usize, int k1) nogil:
    cdef long long mv[64]
    cdef long long mi[64]
    cdef int mc = 0, t, i, q
    cdef long long j, v
    cdef bint seen
    cdef double acc = 0.0, x, y
    for t in range(usize):
        j = uidx[t]
        for i in range(k1):
            v = doms[j, i]
            seen = False
            for q in range(mc):
                if mv[q] == v:
                    seen = True
                    break
            if not seen:
                mv[mc] = v
                mi[mc] = imgs[j, i]
                mc += 1
    for i in range(mc):
        for q in range(i + 1, mc):
            x = w1[mv[i], mv[q]]
            y = w2[mi[i], mi[q]]
            acc += cxy * x * y + cxx * x * x + cyy * y * y
    return acc / (<double> (mc * (mc - 1)) / 2.0)


def seed_search(long long[:, ::1] doms, long long[:, ::1] imgs,
                unsigned char[:, ::1] compat,
                double[:, ::1] w1, double[:, ::1] w2,
                double cxy, double cxx, double cyy, int k2):
    cdef Py_ssize_t n2 = doms.shape[0]
    cdef int k1 = <int> doms.shape[1]
    if k2 < 1 or k2 > 3:
        raise ValueError("compiled seed search handles k2 in {1, 2, 3}")
    if k1 * k2 > 64:
        raise ValueError("merged mapping buffer limit exceeded")
    cdef long long u[3]
    cdef long long bu0 = -1, bu1 = -1, bu2 = -1
    cdef double best = NEG_INF, avg
    cdef Py_ssize_t a, b, c
    with nogil:
        if k2 == 1:
            for a in range(n2):
                u[0] = a
                avg = _merged_avg(doms, imgs, w1, w2, cxy, cxx, cyy, u, 1, k1)
                if avg > best:
                    best = avg
                    bu0 = a
        elif k2 == 2:
            for a in range(n2):
                for b in range(a + 1, n2):
                    if not compat[a, b]:
                        continue
                    u[0] = a
                    u[1] = b
                    avg = _merged_avg(doms, imgs, w1, w2, cxy, cxx, cyy, u, 2, k1)
                    if avg > best:
                        best = avg
                        bu0 = a
                        bu1 = b
        else:
            for a in range(n2):
                for b in range(a + 1, n2):
                    if not compat[a, b]:
                        continue
                    for c in range(b + 1, n2):
                        if compat[a, c] and compat[b, c]:
                            u[0] = a
                            u[1] = b
                            u[2] = c
                            avg = _merged_avg(doms, imgs, w1, w2, cxy, cxx, cyy, u, 3, k1)
                            if avg > best:
                                best = avg
                                bu0 = a
                                bu1 = b
                                bu2 = c
    if bu0 < 0:
        return False, (), NEG_INF
    if k2 == 1:
        return True, (int(bu0),), best
    if k2 == 2:
        return True, (int(bu0), int(bu1)), best
    return True, (int(bu0), int(bu1), int(bu2)), best


cdef inline bint _next_comb(long long* c, int m, Py_ssize_t n) nogil:
    cdef int i = m - 1, j
    while i >= 0 and c[i] == n - m + i:
        i -= 1
    if i < 0:
        return False
    c[i] += 1
    for j in range(i + 1, m):
        c[j] = c[j - 1] + 1
    return True


def exact_search(double[:, ::1] w1, double[:, ::1] w2, int m,
                 double cxy, double cxx, double cyy, long long[:, ::1] perms):
    cdef Py_ssize_t s1 = w1.shape[0]
    cdef Py_ssize_t s2 = w2.shape[0]
    cdef Py_ssize_t nperm = perms.shape[0]
    cdef int npairs = m * (m - 1) // 2
    dom_arr = np.arange(m, dtype=np.int64)
    img_arr = np.arange(m, dtype=np.int64)
    xg_arr = np.empty(npairs)
    ysub_arr = np.empty((m, m))
    bdom_arr = np.empty(m, dtype=np.int64)
    bimg_arr = np.empty(m, dtype=np.int64)
    cdef long long[::1] dom = dom_arr
    cdef long long[::1] img = img_arr
    cdef double[::1] xg = xg_arr
    cdef double[:, ::1] ysub = ysub_arr
    cdef long long[::1] bdom = bdom_arr
    cdef long long[::1] bimg = bimg_arr
    cdef double best = NEG_INF, constd, acc, x, y
    cdef Py_ssize_t pi
    cdef int a, b, idx
    cdef long long pa
    cdef bint more_dom = True, more_img
    with nogil:
        while more_dom:
            idx = 0
            constd = 0.0
            for a in range(m):
                for b in range(a + 1, m):
                    x = w1[dom[a], dom[b]]
                    xg[idx] = cxy * x
                    constd += cxx * x * x
                    idx += 1
            for a in range(m):
                img[a] = a
            more_img = True
            while more_img:
                for a in range(m):
                    for b in range(m):
                        ysub[a, b] = w2[img[a], img[b]]
                for pi in range(nperm):
                    acc = constd
                    idx = 0
                    for a in range(m):
                        pa = perms[pi, a]
                        for b in range(a + 1, m):
                            y = ysub[pa, perms[pi, b]]
                            acc += y * (xg[idx] + cyy * y)
                            idx += 1
                    if acc > best:
                        best = acc
                        for a in range(m):
                            bdom[a] = dom[a]
                            bimg[a] = img[perms[pi, a]]
                more_img = _next_comb(&img[0], m, s2)
            more_dom = _next_comb(&dom[0], m, s1)
    return best, tuple(int(v) for v in bdom_arr), tuple(int(v) for v in bimg_arr)
