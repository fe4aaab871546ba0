"""Exact lattice extremes at a single (V, S) without full enumeration.

Districts are split into groups that each range over an integer interval
[lo, hi] (shares x/D).  A group of k districts can reach every integer sum in
[k lo, k hi], so a configuration is feasible iff the target sum s = nDV lies
in [sum of lows, sum of highs].  Scanning the median value(s) for MM and
the above/at/below counts for PB then gives the exact lattice optimum.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..election import HALF, DistrictResult, Election


@dataclass
class ProbeResult:
    V: Fraction
    S: Fraction
    n: int
    D: int
    min_mm: Optional[Fraction]
    max_mm: Optional[Fraction]
    min_pb: Optional[Fraction]
    max_pb: Optional[Fraction]
    mm_zero: bool
    pb_zero: bool
    witnesses: dict


def _ranges(D: int):
    lose_hi = D // 2
    win_lo = (D + 1) // 2
    return lose_hi, win_lo


def _realize(groups, total: int) -> Optional[list]:
    """Integer values for ``groups`` [(count, lo, hi, won)] summing to ``total``."""
    low = sum(k * lo for k, lo, hi, _ in groups)
    high = sum(k * hi for k, lo, hi, _ in groups)
    if not low <= total <= high:
        return None
    extra = total - low
    out = []
    for k, lo, hi, won in groups:
        for _ in range(k):
            d = min(hi - lo, extra)
            extra -= d
            out.append((lo + d, won))
    return out


def _election(values, D: int) -> Election:
    ds = []
    for v, won in values:
        share = Fraction(v, D)
        ds.append(DistrictResult(share, won if share == HALF else None))
    return Election(tuple(ds))


def _mm_groups(n, lost, D, p, q):
    """Groups for sorted positions with x_a = p and x_b = q (a = b for odd n)."""
    lose_hi, win_lo = _ranges(D)
    if n % 2:
        a = b = n // 2
    else:
        a, b = n // 2 - 1, n // 2
    groups = []
    for i in range(n):
        won = i >= lost
        lo, hi = (win_lo, D) if won else (0, lose_hi)
        if i < a:
            hi = min(hi, p)
        elif i == a:
            lo, hi = max(lo, p), min(hi, p)
        elif i == b:
            lo, hi = max(lo, q), min(hi, q)
        else:
            lo = max(lo, q)
        if lo > hi:
            return None
        groups.append((1, lo, hi, won))
    return groups


def _pb_groups(n, lost, D, s, counts):
    """Groups for losers/winners split into below/at/above the mean s/n."""
    lose_hi, win_lo = _ranges(D)
    lb, la, lu, wb, wa, wu = counts
    below_hi = (s - 1) // n  # x n < s
    above_lo = s // n + 1  # x n > s
    at = s // n if s % n == 0 else None
    groups = []
    for k, lo, hi, won in (
        (lb, 0, min(lose_hi, below_hi), False),
        (la, at, at, False),
        (lu, max(0, above_lo), lose_hi, False),
        (wb, win_lo, min(D, below_hi), True),
        (wa, at, at, True),
        (wu, max(win_lo, above_lo), D, True),
    ):
        if k == 0:
            continue
        if lo is None or hi is None:
            return None
        if won and not win_lo <= lo:
            lo = win_lo
        if not won and hi > lose_hi:
            hi = lose_hi
        if lo > hi:
            return None
        groups.append((k, lo, hi, won))
    return groups


def probe(V, S, n: int, D: int, witnesses: bool = True, metrics=("mm", "pb")) -> ProbeResult:
    """Exact min/max of MM and PB over elections with shares in {0, 1/D, ..., 1}."""
    V, S = Fraction(V), Fraction(S)
    s = V * n * D
    lost = (1 - S) * n
    if s.denominator != 1 or lost.denominator != 1:
        raise ValueError(f"(V={V}, S={S}) is not on the n={n}, D={D} lattice")
    s, lost = int(s), int(lost)
    won = n - lost
    best = {"min_mm": None, "max_mm": None, "min_pb": None, "max_pb": None}
    wit = {}
    mm_zero = pb_zero = False

    def offer(kind, value, groups, smaller):
        cur = best[kind]
        if cur is None or (value < cur if smaller else value > cur):
            best[kind] = value
            if witnesses:
                wit[kind] = _election(_realize(groups, s), D)

    # mean-median: scan the median value(s)
    if "mm" not in metrics:
        pairs = ()
    elif n % 2:
        pairs = ((t, t) for t in range(D + 1))
    else:
        pairs = ((p, q) for p in range(D + 1) for q in range(p, D + 1))
    for p, q in pairs:
        groups = _mm_groups(n, lost, D, p, q)
        if groups is None or _realize_check(groups, s) is False:
            continue
        mm = Fraction(n * (p + q) - 2 * s, 2 * n * D)
        mm_zero |= mm == 0
        offer("min_mm", mm, groups, True)
        offer("max_mm", mm, groups, False)
    # partisan bias: scan above/at/below counts within losers and winners
    for lb in range(lost + 1 if "pb" in metrics else 0):
        for la in range(lost - lb + 1):
            lu = lost - lb - la
            for wb in range(won + 1):
                for wa in range(won - wb + 1):
                    wu = won - wb - wa
                    groups = _pb_groups(n, lost, D, s, (lb, la, lu, wb, wa, wu))
                    if groups is None or _realize_check(groups, s) is False:
                        continue
                    pb = Fraction((lu + wu) - (lb + wb), 2 * n)
                    pb_zero |= pb == 0
                    offer("min_pb", pb, groups, True)
                    offer("max_pb", pb, groups, False)
    return ProbeResult(V, S, n, D, best["min_mm"], best["max_mm"], best["min_pb"], best["max_pb"],
                       mm_zero, pb_zero, wit)


def _realize_check(groups, total) -> bool:
    low = sum(k * lo for k, lo, hi, _ in groups)
    high = sum(k * hi for k, lo, hi, _ in groups)
    return low <= total <= high
