# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric kernels; see ``_pure.py`` for the reference versions."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs
from libc.stdlib cimport malloc, free

cnp.import_array()

ctypedef unsigned long long u64

cdef int EDGE = 0
cdef int INNER = 1
cdef int OUTER = 2


cdef inline int popcount(u64 x) nogil:
    return __builtin_popcountll(x)


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef double _off_norm(double[:, ::1] a, Py_ssize_t n) nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(n):
            if i != j:
                s += a[i, j] * a[i, j]
    return sqrt(s)


def off_norm(matrix):
    cdef double[:, ::1] a = np.ascontiguousarray(matrix, dtype=np.float64)
    return _off_norm(a, a.shape[0])


def jacobi_eigenvalues(matrix, double tol=1e-12, int max_sweeps=100):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] arr = np.array(matrix, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] a = arr
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, k
    cdef int sweeps = 0
    cdef double off, apq, g, tau, t, c, s, x, y
    with nogil:
        off = _off_norm(a, n)
        while off > tol and sweeps < max_sweeps:
            sweeps += 1
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    g = 100.0 * fabs(apq)
                    if fabs(a[p, p]) + g == fabs(a[p, p]) and fabs(a[q, q]) + g == fabs(a[q, q]):
                        a[p, q] = 0.0
                        a[q, p] = 0.0
                        continue
                    tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                    if tau > 1e150 or tau < -1e150:
                        t = 0.5 / tau
                    elif tau >= 0:
                        t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                    c = 1.0 / sqrt(1.0 + t * t)
                    s = t * c
                    for k in range(n):
                        x = a[k, p]
                        y = a[k, q]
                        a[k, p] = c * x - s * y
                        a[k, q] = s * x + c * y
                    for k in range(n):
                        x = a[p, k]
                        y = a[q, k]
                        a[p, k] = c * x - s * y
                        a[q, k] = s * x + c * y
                    a[p, q] = 0.0
                    a[q, p] = 0.0
            off = _off_norm(a, n)
    return np.sort(np.diag(arr)), sweeps, off


cdef int _sturm(double* d, double* e2, double* w, Py_ssize_t n, double x) nogil:
    cdef int count = 0
    cdef double q = 1.0
    cdef double wi
    cdef Py_ssize_t i
    for i in range(n):
        wi = 1.0 if w == NULL else w[i]
        if i > 0:
            q = d[i] - x * wi - e2[i - 1] / q
        else:
            q = d[i] - x * wi
        if q == 0.0:
            q = -1e-300
        if q < 0.0:
            count += 1
    return count


def sturm_count(diag, off_sq, weights, double x):
    cdef double[::1] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef double[::1] e2 = np.ascontiguousarray(list(off_sq) + [0.0], dtype=np.float64)
    cdef double[::1] w
    cdef Py_ssize_t n = d.shape[0]
    if n == 0:
        return 0
    if weights is None:
        return _sturm(&d[0], &e2[0], NULL, n, x)
    w = np.ascontiguousarray(weights, dtype=np.float64)
    return _sturm(&d[0], &e2[0], &w[0], n, x)


def bisect_eigenvalues(diag, off_sq, weights, int count, double lo, double hi, double tol=1e-12):
    cdef double[::1] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef double[::1] e2 = np.ascontiguousarray(list(off_sq) + [0.0], dtype=np.float64)
    cdef double[::1] wv
    cdef double* wp = NULL
    cdef Py_ssize_t n = d.shape[0]
    cdef int k
    cdef double a, b, mid
    if weights is not None:
        wv = np.ascontiguousarray(weights, dtype=np.float64)
        wp = &wv[0]
    out = []
    for k in range(count):
        a = lo
        b = hi
        with nogil:
            while b - a > tol:
                mid = 0.5 * (a + b)
                if mid <= a or mid >= b:
                    break
                if _sturm(&d[0], &e2[0], wp, n, mid) > k:
                    b = mid
                else:
                    a = mid
        out.append(0.5 * (a + b))
    return out


cdef inline bint _better(long long num, long long den, int size, u64 mask,
                         long long bnum, long long bden, int bsize, u64 bmask) nogil:
    cdef long long lhs = num * bden
    cdef long long rhs = bnum * den
    cdef u64 diff, low
    if lhs != rhs:
        return lhs < rhs
    if size != bsize:
        return size < bsize
    diff = mask ^ bmask
    low = diff & (~diff + 1)
    return (low & mask) != 0


def cheeger_enum(masks, int kind):
    cdef Py_ssize_t n = len(masks)
    cdef u64* m = <u64*>malloc(n * sizeof(u64)) if n else NULL
    cdef int* deg = <int*>malloc(n * sizeof(int)) if n else NULL
    # DFS stack of partial subsets
    cdef int* stack_v = <int*>malloc((n + 1) * sizeof(int))
    cdef u64* stack_mask = <u64*>malloc((n + 1) * sizeof(u64))
    cdef u64* stack_nbr = <u64*>malloc((n + 1) * sizeof(u64))
    cdef long long* stack_cut = <long long*>malloc((n + 1) * sizeof(long long))
    cdef Py_ssize_t i
    cdef int half = n // 2
    cdef int depth, v
    cdef u64 mask, nbr, x, low
    cdef long long cut, num
    cdef long long bnum = 1, bden = 0
    cdef int bsize = 0
    cdef u64 bmask = 0
    for i in range(n):
        m[i] = <u64>masks[i]
        deg[i] = popcount(m[i])
    if half >= 1:
        with nogil:
            depth = 0
            stack_v[0] = 0
            stack_mask[0] = 0
            stack_nbr[0] = 0
            stack_cut[0] = 0
            # stack_v[depth] is the next candidate vertex at this depth
            while depth >= 0:
                v = stack_v[depth]
                if v >= n:
                    depth -= 1
                    if depth >= 0:
                        stack_v[depth] += 1
                    continue
                mask = stack_mask[depth] | ((<u64>1) << v)
                nbr = stack_nbr[depth] | m[v]
                cut = stack_cut[depth] + deg[v] - 2 * popcount(m[v] & stack_mask[depth])
                if kind == EDGE:
                    num = cut
                elif kind == OUTER:
                    num = popcount(nbr & ~mask)
                else:
                    num = 0
                    x = mask
                    while x:
                        low = x & (~x + 1)
                        if m[__builtin_ctzll(low)] & ~mask:
                            num += 1
                        x ^= low
                if bden == 0 or _better(num, depth + 1, depth + 1, mask, bnum, bden, bsize, bmask):
                    bnum = num
                    bden = depth + 1
                    bsize = depth + 1
                    bmask = mask
                if depth + 1 < half and v + 1 < n:
                    stack_v[depth + 1] = v + 1
                    stack_mask[depth + 1] = mask
                    stack_nbr[depth + 1] = nbr
                    stack_cut[depth + 1] = cut
                    depth += 1
                else:
                    stack_v[depth] += 1
    free(m)
    free(deg)
    free(stack_v)
    free(stack_mask)
    free(stack_nbr)
    free(stack_cut)
    return int(bnum), int(bden), int(bmask)


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef struct PState:
    int n
    int cells
    u64* masks
    u64* blocks
    int* labels
    int* best_labels
    long long bnum
    long long bden


cdef void _leaf(PState* s) nogil:
    cdef long long num = 0, den = 1, bn, bd
    cdef int b, i
    cdef u64 mk, nb, x, low
    for b in range(s.cells):
        mk = s.blocks[b]
        nb = 0
        x = mk
        while x:
            low = x & (~x + 1)
            nb |= s.masks[__builtin_ctzll(low)]
            x ^= low
        bn = popcount(nb & ~mk)
        bd = popcount(mk)
        if bn * den > num * bd:
            num = bn
            den = bd
    if s.bden == 0 or num * s.bden < s.bnum * den:
        s.bnum = num
        s.bden = den
        for i in range(s.n):
            s.best_labels[i] = s.labels[i]


cdef void _rec(PState* s, int i, int used) nogil:
    cdef int b, top
    if s.n - i < s.cells - used:
        return
    if i == s.n:
        if used == s.cells:
            _leaf(s)
        return
    top = used if used < s.cells - 1 else s.cells - 1
    for b in range(top + 1):
        s.labels[i] = b
        s.blocks[b] |= (<u64>1) << i
        _rec(s, i + 1, used if used > b + 1 else b + 1)
        s.blocks[b] ^= (<u64>1) << i


def partition_enum(masks, int cells):
    cdef PState s
    cdef int i
    s.n = len(masks)
    s.cells = cells
    s.masks = <u64*>malloc((s.n + 1) * sizeof(u64))
    s.blocks = <u64*>malloc((cells + 1) * sizeof(u64))
    s.labels = <int*>malloc((s.n + 1) * sizeof(int))
    s.best_labels = <int*>malloc((s.n + 1) * sizeof(int))
    s.bnum = 1
    s.bden = 0
    for i in range(s.n):
        s.masks[i] = <u64>masks[i]
        s.labels[i] = 0
    for i in range(cells):
        s.blocks[i] = 0
    with nogil:
        _rec(&s, 0, 0)
    labels = tuple(s.best_labels[i] for i in range(s.n)) if s.bden else None
    out = (int(s.bnum), int(s.bden), labels)
    free(s.masks)
    free(s.blocks)
    free(s.labels)
    free(s.best_labels)
    return out
