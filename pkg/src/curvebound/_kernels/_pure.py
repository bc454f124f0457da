"""Pure-Python implementations of the numeric kernels.

These mirror ``_ckernels.pyx`` function for function and are used when the
compiled extension is unavailable or ``CURVEBOUND_PURE_PYTHON=1`` is set.
"""

from __future__ import annotations

import math

import numpy as np

EDGE, INNER, OUTER = 0, 1, 2


def off_norm(a: np.ndarray) -> float:
    return float(math.sqrt(max(0.0, float(np.sum(a * a) - np.sum(np.diag(a) ** 2)))))


def jacobi_eigenvalues(matrix, tol=1e-12, max_sweeps=100):
    """Cyclic Jacobi rotations on a symmetric matrix.

    Returns ``(eigenvalues ascending, sweeps used, final off-diagonal norm)``.
    """
    a = np.array(matrix, dtype=np.float64, copy=True)
    n = a.shape[0]
    sweeps = 0
    off = off_norm(a)
    while off > tol and sweeps < max_sweeps:
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                g = 100.0 * abs(apq)
                if abs(a[p, p]) + g == abs(a[p, p]) and abs(a[q, q]) + g == abs(a[q, q]):
                    # negligible against both diagonal entries
                    a[p, q] = a[q, p] = 0.0
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(tau) > 1e150:
                    # tau * tau would overflow
                    t = 0.5 / tau
                else:
                    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                colp = a[:, p].copy()
                colq = a[:, q]
                a[:, p] = c * colp - s * colq
                a[:, q] = s * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :]
                a[p, :] = c * rowp - s * rowq
                a[q, :] = s * rowp + c * rowq
                a[p, q] = a[q, p] = 0.0
        off = off_norm(a)
    return np.sort(np.diag(a)), sweeps, off


def sturm_count(diag, off_sq, weights, x):
    """Number of eigenvalues of the pencil ``(T, W)`` strictly below ``x``.

    ``T`` is symmetric tridiagonal with diagonal ``diag`` and squared
    off-diagonal ``off_sq``; ``W`` is a positive diagonal (``None`` means I).
    """
    n = len(diag)
    count = 0
    q = 1.0
    for i in range(n):
        w = 1.0 if weights is None else weights[i]
        q = diag[i] - x * w - (off_sq[i - 1] / q if i > 0 else 0.0)
        if q == 0.0:
            q = -1e-300
        if q < 0.0:
            count += 1
    return count


def bisect_eigenvalues(diag, off_sq, weights, count, lo, hi, tol=1e-12):
    """Smallest ``count`` eigenvalues by bisection on the Sturm count."""
    out = []
    for k in range(count):
        a, b = lo, hi
        while b - a > tol:
            mid = 0.5 * (a + b)
            if mid <= a or mid >= b:
                break
            if sturm_count(diag, off_sq, weights, mid) > k:
                b = mid
            else:
                a = mid
        out.append(0.5 * (a + b))
    return out


def _popcount(x):
    return bin(x).count("1")


def _better(num, den, size, mask, bnum, bden, bsize, bmask):
    lhs, rhs = num * bden, bnum * den
    if lhs != rhs:
        return lhs < rhs
    if size != bsize:
        return size < bsize
    low = (mask ^ bmask) & -(mask ^ bmask)
    return bool(low & mask)


def cheeger_enum(masks, kind):
    """Minimum boundary/size ratio over non-empty ``A`` with ``|A| <= n/2``.

    Returns ``(numerator, denominator, witness mask)``; ties go to the
    smaller set, then the lexicographically smaller one.
    """
    n = len(masks)
    half = n // 2
    deg = [_popcount(m) for m in masks]
    best = [1, 0, 0, 0]  # num, den, size, mask; den 0 means unset

    def visit(mask, size, nbr, cut):
        if kind == EDGE:
            num = cut
        elif kind == OUTER:
            num = _popcount(nbr & ~mask)
        else:
            num = 0
            m = mask
            while m:
                low = m & -m
                v = low.bit_length() - 1
                if masks[v] & ~mask:
                    num += 1
                m ^= low
        if best[1] == 0 or _better(num, size, size, mask, best[0], best[1], best[2], best[3]):
            best[:] = [num, size, size, mask]

    def dfs(start, mask, size, nbr, cut):
        for v in range(start, n):
            bit = 1 << v
            new_cut = cut + deg[v] - 2 * _popcount(masks[v] & mask)
            new_mask = mask | bit
            visit(new_mask, size + 1, nbr | masks[v], new_cut)
            if size + 1 < half:
                dfs(v + 1, new_mask, size + 1, nbr | masks[v], new_cut)

    if half >= 1:
        dfs(0, 0, 0, 0, 0)
    return best[0], best[1], best[3]


def partition_enum(masks, cells):
    """Min over partitions into ``cells`` blocks of the max outer ratio.

    Partitions are visited as restricted growth strings, so each is seen
    once. Returns ``(numerator, denominator, labels)``.
    """
    n = len(masks)
    labels = [0] * n
    blocks = [0] * cells
    best = [1, 0, None]

    def leaf():
        num, den = 0, 1
        for b in range(cells):
            m = blocks[b]
            nb = 0
            x = m
            while x:
                low = x & -x
                nb |= masks[low.bit_length() - 1]
                x ^= low
            bn, bd = _popcount(nb & ~m), _popcount(m)
            if bn * den > num * bd:
                num, den = bn, bd
        if best[1] == 0 or num * best[1] < best[0] * den:
            best[:] = [num, den, tuple(labels)]

    def rec(i, used):
        if n - i < cells - used:
            return
        if i == n:
            if used == cells:
                leaf()
            return
        top = min(used, cells - 1)
        for b in range(top + 1):
            labels[i] = b
            blocks[b] |= 1 << i
            rec(i + 1, max(used, b + 1))
            blocks[b] ^= 1 << i

    rec(0, 0)
    return best[0], best[1], best[2]
