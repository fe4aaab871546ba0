"""Lattice scans for zero sets: MM = PB = 0 and near-zero declination."""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Optional

from ..bounds import zero_region_contains, zero_region_turnout_contains
from ..election import as_fraction
from .enumerate import DEFAULT_BUDGET, BudgetExceeded, LatticeSpec, enumerate_extremes


@dataclass
class ZeroMask:
    n: int
    D: int
    C: Optional[Fraction] = None
    mm: set = field(default_factory=set)  # (V, S) with some MM = 0 election
    pb: set = field(default_factory=set)
    both: set = field(default_factory=set)  # one election has MM = PB = 0
    cells: set = field(default_factory=set)  # every reachable (V, S)

    @property
    def step(self) -> Fraction:
        return Fraction(1, self.D)

    def to_csv(self) -> str:
        lines = ["v_num,v_den,s_num,s_den,mm_zero,pb_zero"]
        for V, S in sorted(self.cells, key=lambda k: (k[1], k[0])):
            lines.append(f"{V.numerator},{V.denominator},{S.numerator},{S.denominator},"
                         f"{int((V, S) in self.mm)},{int((V, S) in self.pb)}")
        return "\n".join(lines) + "\n"


def _turnout_size(n: int, D: int) -> int:
    return math.comb(n + D, n) * 2 ** n


def zero_achievability_scan(spec: LatticeSpec, turnout_levels=None,
                            budget: int = DEFAULT_BUDGET) -> ZeroMask:
    """Cells where MM = 0 and PB = 0 are reachable on the share lattice.

    ``turnout_levels`` is ``None`` (equal turnout) or ``(C, weights)``; each
    district then carries turnout 1 or C, and V is the turnout-weighted share.
    ``weights`` is accepted for interface symmetry and must be ``None`` or
    ``(1, C)``.
    """
    n, D = spec.n, spec.D
    if turnout_levels is None:
        table = enumerate_extremes(spec, budget=budget, witnesses=False)
        mask = ZeroMask(n, D)
        for c in table:
            key = (c.V, c.S)
            mask.cells.add(key)
            if c.mm_zero:
                mask.mm.add(key)
            if c.pb_zero:
                mask.pb.add(key)
            if c.both_zero:
                mask.both.add(key)
        return mask
    C, levels = turnout_levels
    C = as_fraction(C)
    if levels not in (None, (1, C)):
        raise ValueError("only the two-level pattern (1, C) is supported")
    if _turnout_size(n, D) > budget:
        raise BudgetExceeded(_turnout_size(n, D), budget)
    return _turnout_scan(n, D, C)


def _turnout_scan(n: int, D: int, C: Fraction) -> ZeroMask:
    mask = ZeroMask(n, D, C)
    a, b = (n // 2 - 1, n // 2) if n % 2 == 0 else (n // 2, n // 2)
    for xs in combinations_with_replacement(range(D + 1), n):
        s = sum(xs)
        mm0 = n * (xs[a] + xs[b]) == 2 * s
        pb0 = sum(1 for x in xs if x * n > s) == sum(1 for x in xs if x * n < s)
        ties = sum(1 for x in xs if 2 * x == D)
        gt = sum(1 for x in xs if 2 * x > D)
        # which districts get high turnout; identical shares make many patterns equal
        seen = set()
        for bits in range(2 ** n):
            hi = tuple(xs[i] for i in range(n) if bits >> i & 1)
            if hi in seen:
                continue
            seen.add(hi)
            k = len(hi)
            V = Fraction(s + (C - 1) * sum(hi), D * (n + (C - 1) * k))
            for u in range(ties + 1):
                key = (V, Fraction(gt + u, n))
                mask.cells.add(key)
                if mm0:
                    mask.mm.add(key)
                if pb0:
                    mask.pb.add(key)
                if mm0 and pb0:
                    mask.both.add(key)
    return mask


def _region(mask: ZeroMask):
    if mask.C is None:
        return lambda V, S: zero_region_contains(V, S)
    return lambda V, S: zero_region_turnout_contains(V, S, mask.C)


def compare_zero_mask(mask: ZeroMask, which: str = "both", slack: Optional[Fraction] = None) -> dict:
    """Cell-wise comparison against the closed-form zero region.

    A cell counts as a mismatch only if no point within ``slack`` in V (default
    one lattice step 1/D) on the same S row agrees with the scan.
    Returns ``{"outside": [...], "missing": [...]}``: achievable cells the region
    excludes, and region cells the lattice cannot reach.
    """
    inside = _region(mask)
    slack = Fraction(1, mask.D) if slack is None else as_fraction(slack)
    got = {"mm": mask.mm, "pb": mask.pb, "both": mask.both}[which]
    rows: dict = {}
    for V, S in got:
        rows.setdefault(S, []).append(V)
    for vs in rows.values():
        vs.sort()

    def near_region(V, S):
        # the region along a row is a union of intervals; test the endpoints of the window too
        for t in (V - slack, V, V + slack, V - slack / 2, V + slack / 2):
            if 0 <= t <= 1 and inside(t, S):
                return True
        return False

    def near_scan(V, S):
        vs = rows.get(S, [])
        i = bisect.bisect_left(vs, V - slack)
        return i < len(vs) and vs[i] <= V + slack

    outside = sorted(((V, S) for V, S in got if not near_region(V, S)), key=lambda k: (k[1], k[0]))
    missing = sorted(((V, S) for V, S in mask.cells if (V, S) not in got and inside(V, S)
                      and not near_scan(V, S)), key=lambda k: (k[1], k[0]))
    return {"outside": outside, "missing": missing}


# -- declination --------------------------------------------------------


def _dec(n: int, w: int, wsum: float, lsum: float) -> float:
    lost = n - w
    yw, yl = wsum / w, lsum / lost
    return 2.0 / math.pi * (math.atan((yw - 0.5) / (w / (2 * n)))
                            - math.atan((0.5 - yl) / (lost / (2 * n))))


def declination_zero_cells(n: int = 8, D: int = 40, tol: float = 0.02, v_tol=None):
    """Approximate set of (V, S) where declination can be within ``tol`` of zero.

    Declination depends only on the win count and the winner/loser share sums,
    and every integer sum between the extremes of a group is reachable, so the
    scan runs over (w, winner sum, loser sum) instead of whole elections.
    Returns a predicate ``(V, S) -> bool``; S snaps to the nearest w/n row and V
    matches within ``v_tol`` (default the larger of 1/400 and 1/(nD)).
    """
    if v_tol is None:
        v_tol = max(Fraction(1, 400), Fraction(1, n * D))
    v_tol = float(v_tol)
    lose_hi, win_lo = D // 2, (D + 1) // 2
    rows = {}
    for w in range(1, n):
        lost = n - w
        hits = set()
        for ws in range(w * win_lo, w * D + 1):
            for ls in range(0, lost * lose_hi + 1):
                if abs(_dec(n, w, ws / D, ls / D)) <= tol:
                    hits.add(ws + ls)
        rows[w] = sorted(h / (n * D) for h in hits)

    def contains(V, S) -> bool:
        S = float(S)
        w = round(S * n)
        if abs(S - w / n) > 1 / (2 * n) or w not in rows:
            return False
        vs = rows[w]
        V = float(V)
        i = bisect.bisect_left(vs, V - v_tol)
        return i < len(vs) and vs[i] <= V + v_tol

    contains.rows = rows
    contains.params = {"n": n, "D": D, "tol": tol}
    return contains


__all__ = ["ZeroMask", "zero_achievability_scan", "compare_zero_mask", "declination_zero_cells"]
