# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice scan.  See ``_kernel_py`` for the contract."""

cimport cython
from libc.stdlib cimport malloc, free
from numpy cimport int64_t, int32_t


def scan(int n, int D, int first_lo, int first_hi, int64_t[:, ::1] vals, int32_t[:, :, ::1] wits):
    cdef int *x = <int *> malloc(n * sizeof(int))
    if x == NULL:
        raise MemoryError()
    cdef int i, j, v, u, k
    cdef long long s, vn, mm, pb, key
    cdef int above, below, gt, ties
    cdef int h = D // 2
    cdef bint half_even = D % 2 == 0
    cdef int a, b
    cdef long long visited = 0
    if n % 2 == 0:
        a = n // 2 - 1
        b = n // 2
    else:
        a = n // 2
        b = n // 2
    for i in range(n):
        x[i] = first_lo
    try:
        while True:
            visited += 1
            s = 0
            for i in range(n):
                s += x[i]
            mm = <long long> n * (x[a] + x[b]) - 2 * s
            above = 0
            below = 0
            gt = 0
            ties = 0
            for i in range(n):
                vn = <long long> x[i] * n
                if vn > s:
                    above += 1
                elif vn < s:
                    below += 1
                if half_even:
                    if x[i] == h:
                        ties += 1
                    elif x[i] > h:
                        gt += 1
                elif 2 * x[i] > D:
                    gt += 1
            pb = above - below
            for u in range(ties + 1):
                key = s * (n + 1) + gt + u
                if mm < vals[key, 0]:
                    vals[key, 0] = mm
                    for j in range(n):
                        wits[key, 0, j] = x[j]
                    wits[key, 0, n] = u
                if mm > vals[key, 1]:
                    vals[key, 1] = mm
                    for j in range(n):
                        wits[key, 1, j] = x[j]
                    wits[key, 1, n] = u
                if pb < vals[key, 2]:
                    vals[key, 2] = pb
                    for j in range(n):
                        wits[key, 2, j] = x[j]
                    wits[key, 2, n] = u
                if pb > vals[key, 3]:
                    vals[key, 3] = pb
                    for j in range(n):
                        wits[key, 3, j] = x[j]
                    wits[key, 3, n] = u
                vals[key, 4] += 1
                if mm == 0:
                    vals[key, 5] = 1
                if pb == 0:
                    vals[key, 6] = 1
                    if mm == 0:
                        vals[key, 7] = 1
            i = n - 1
            while i >= 0 and x[i] == D:
                i -= 1
            if i < 0 or (i == 0 and x[0] >= first_hi):
                break
            v = x[i] + 1
            for j in range(i, n):
                x[j] = v
    finally:
        free(x)
    return visited
