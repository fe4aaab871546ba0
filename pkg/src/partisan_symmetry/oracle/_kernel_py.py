"""Pure-Python lattice scan; same contract as the compiled ``_kernel.scan``.

All arithmetic is on integers.  For a multiset x_1 <= ... <= x_n of shares in
{0, ..., D} (share = x/D) with sum s:

* MM * 2nD = n (x_a + x_b) - 2s for even n (a, b the middle pair), else 2n x_m - 2s
* PB * 2n  = #{x_i n > s} - #{x_i n < s}

A share of exactly D/2 may be won or lost, so every winner count
gt + u, u = 0..ties, is recorded.
"""

BIG = 1 << 62

# columns of ``vals``
MM_MIN, MM_MAX, PB_MIN, PB_MAX, COUNT, MM_ZERO, PB_ZERO, BOTH_ZERO = range(8)
NCOL = 8


def scan(n, D, first_lo, first_hi, vals, wits):
    """Scan multisets whose smallest share lies in [first_lo, first_hi].

    ``vals`` is an int64 array of shape ((nD+1)(n+1), 8); row s*(n+1)+seats.
    ``wits`` is int32 of shape ((nD+1)(n+1), 4, n+1): the shares of the
    witness for each of MM_MIN..PB_MAX, followed by the tied-winner count u.
    Both are updated in place; returns the number of multisets visited.
    """
    rows = [list(map(int, r)) for r in vals]
    best = {}
    x = [first_lo] * n
    half_even = D % 2 == 0
    h = D // 2
    a, b = (n // 2 - 1, n // 2) if n % 2 == 0 else (n // 2, n // 2)
    visited = 0
    while True:
        visited += 1
        s = sum(x)
        mm = n * (x[a] + x[b]) - 2 * s
        above = below = gt = ties = 0
        for v in x:
            vn = v * n
            if vn > s:
                above += 1
            elif vn < s:
                below += 1
            if half_even and v == h:
                ties += 1
            elif v > h if half_even else 2 * v > D:
                gt += 1
        pb = above - below
        for u in range(ties + 1):
            key = s * (n + 1) + gt + u
            r = rows[key]
            if mm < r[MM_MIN]:
                r[MM_MIN] = mm
                best[(key, 0)] = (tuple(x), u)
            if mm > r[MM_MAX]:
                r[MM_MAX] = mm
                best[(key, 1)] = (tuple(x), u)
            if pb < r[PB_MIN]:
                r[PB_MIN] = pb
                best[(key, 2)] = (tuple(x), u)
            if pb > r[PB_MAX]:
                r[PB_MAX] = pb
                best[(key, 3)] = (tuple(x), u)
            r[COUNT] += 1
            if mm == 0:
                r[MM_ZERO] = 1
            if pb == 0:
                r[PB_ZERO] = 1
                if mm == 0:
                    r[BOTH_ZERO] = 1
        # next non-decreasing tuple
        i = n - 1
        while i >= 0 and x[i] == D:
            i -= 1
        if i < 0 or (i == 0 and x[0] >= first_hi):
            break
        v = x[i] + 1
        for j in range(i, n):
            x[j] = v
    for key, r in enumerate(rows):
        for c in range(NCOL):
            vals[key, c] = r[c]
    for (key, k), (xs, u) in best.items():
        for j in range(n):
            wits[key, k, j] = xs[j]
        wits[key, k, n] = u
    return visited
