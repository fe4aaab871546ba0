"""Partisan symmetry metrics and comparison metrics on a single election.

Mean-median and partisan bias always use the unweighted district shares;
turnout weights only move the statewide vote share.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from .election import (
    HALF,
    Election,
    UnsupportedInputError,
    seat_share,
    statewide_vote_share,
)

DECLINATION_DPS = 50


def _mean(shares) -> Fraction:
    return sum(shares, Fraction(0)) / len(shares)


def _median(shares) -> Fraction:
    s = sorted(shares)
    n = len(s)
    if n % 2:
        return s[n // 2]
    return (s[n // 2 - 1] + s[n // 2]) / 2


def mean_median(e: Election) -> Fraction:
    shares = e.shares
    return _median(shares) - _mean(shares)


def partisan_bias(e: Election) -> Fraction:
    shares = e.shares
    mean = _mean(shares)
    above = sum(1 for v in shares if v > mean)
    below = sum(1 for v in shares if v < mean)
    return Fraction(above - below, 2 * e.n)


def efficiency_gap(e: Election) -> Fraction:
    """S - 2V + 1/2; valid only for equal turnout and equal district populations."""
    if not e.equal_turnout:
        raise UnsupportedInputError("efficiency gap formula S - 2V + 1/2 needs equal turnout")
    p = seat_share(e)
    return p.S - 2 * p.V + HALF


def wasted_vote_gap(e: Election, turnout: int = 2) -> Fraction:
    """Efficiency gap from ballot-level wasted votes, ``turnout`` votes per district.

    Independent route to :func:`efficiency_gap` used as its check.
    """
    if not e.equal_turnout:
        raise UnsupportedInputError("wasted_vote_gap assumes equal turnout")
    waste_a = waste_b = Fraction(0)
    for d in e.districts:
        a = d.share * turnout
        b = turnout - a
        if d.won:
            waste_a += a - Fraction(turnout, 2)
            waste_b += b
        else:
            waste_a += a
            waste_b += b - Fraction(turnout, 2)
    return (waste_b - waste_a) / (turnout * e.n)


@dataclass(frozen=True)
class MetricValue:
    value: Optional[Fraction]
    defined: bool = True

    def __float__(self) -> float:
        if not self.defined:
            return float("nan")
        return float(self.value)


def declination(e: Election, dps: int = DECLINATION_DPS) -> MetricValue:
    """Declination, evaluated with ``dps`` significant digits and returned as a Fraction.

    This is the one approximate metric; it is undefined for sweeps.
    """
    won = [d.share for d in e.districts if d.won]
    lost = [d.share for d in e.districts if not d.won]
    if not won or not lost:
        return MetricValue(None, False)
    n = e.n
    y_w, y_l = _mean(won), _mean(lost)
    with mpmath.workdps(dps + 10):
        def q(fr: Fraction):
            return mpmath.mpf(fr.numerator) / fr.denominator

        theta_w = mpmath.atan(q((y_w - HALF) / Fraction(len(won), 2 * n)))
        theta_l = mpmath.atan(q((HALF - y_l) / Fraction(len(lost), 2 * n)))
        delta = 2 * (theta_w - theta_l) / mpmath.pi
        text = mpmath.nstr(delta, dps, strip_zeros=False, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
    value = Fraction(text)
    # symmetric inputs land within rounding of zero
    if abs(value) < Fraction(1, 10 ** dps):
        value = Fraction(0)
    return MetricValue(value, True)


def sign_consistency(e: Election) -> bool:
    """True unless MM and PB take strictly opposite signs, or MM = 0 with PB != 0."""
    mm, pb = mean_median(e), partisan_bias(e)
    if (mm > 0 and pb < 0) or (mm < 0 and pb > 0):
        return False
    if mm == 0 and pb != 0:
        return False
    return True


# -- seats-votes curve under uniform swing -----------------------------


@dataclass(frozen=True)
class Step:
    """The curve jumps at swung vote share ``v`` from ``left`` to ``right`` seats (counts)."""

    v: Fraction
    left: int
    right: int
    at: int  # seat count at exactly v, resolved by tie flags


@dataclass(frozen=True)
class SeatsVotesCurve:
    n: int
    mean: Fraction
    steps: tuple

    def seats_at(self, v: Fraction) -> Fraction:
        """Seat share at swung statewide share ``v`` (flags resolve exact flip points)."""
        count = 0
        for st in self.steps:
            if v > st.v:
                count = st.right
            elif v == st.v:
                count = st.at
                break
            else:
                break
        return Fraction(count, self.n)

    def left_limit(self, v: Fraction) -> Fraction:
        count = 0
        for st in self.steps:
            if st.v < v:
                count = st.right
        return Fraction(count, self.n)

    def right_limit(self, v: Fraction) -> Fraction:
        count = 0
        for st in self.steps:
            if st.v <= v:
                count = st.right
        return Fraction(count, self.n)

    def breakpoints(self, clip: bool = True) -> list:
        """(v, s) vertices of the step function, including (0, 0) and (1, 1)."""
        pts = [(Fraction(0), Fraction(0))]
        for st in self.steps:
            v = min(max(st.v, Fraction(0)), Fraction(1)) if clip else st.v
            pts.append((v, Fraction(st.left, self.n)))
            pts.append((v, Fraction(st.right, self.n)))
        pts.append((Fraction(1), Fraction(1)))
        return pts

    def to_csv(self) -> str:
        rows = ["v,s"] + [f"{v},{s}" for v, s in self.breakpoints()]
        return "\n".join(rows) + "\n"


def seats_votes_curve(e: Election) -> SeatsVotesCurve:
    if not e.equal_turnout:
        raise UnsupportedInputError("the uniform-swing seats-votes curve needs equal turnout")
    mean = _mean(e.shares)
    groups: dict = {}
    for d in e.districts:
        groups.setdefault(d.share, []).append(d)
    steps = []
    seats = 0
    # districts flip in descending share order as the swing grows
    for share in sorted(groups, reverse=True):
        members = groups[share]
        flip = mean + HALF - share
        at = seats + sum(1 for d in members if d.share == HALF and d.winner_at_half)
        steps.append(Step(flip, seats, seats + len(members), at))
        seats += len(members)
    return SeatsVotesCurve(e.n, mean, tuple(steps))


def mm_from_curve(c: SeatsVotesCurve) -> Fraction:
    """1/2 minus where the curve crosses S = 1/2.

    For even n the curve runs along S = 1/2 over an interval; its midpoint is
    the crossing.
    """
    half_count = Fraction(c.n, 2)
    v_lo = v_hi = None
    for st in c.steps:
        if v_lo is None and st.right >= half_count:
            v_lo = st.v
        if st.left <= half_count:
            v_hi = st.v
    return HALF - (v_lo + v_hi) / 2


def pb_from_curve(c: SeatsVotesCurve) -> Fraction:
    """Curve height at V = 1/2 minus 1/2; a jump at exactly 1/2 counts at its midpoint."""
    height = (c.left_limit(HALF) + c.right_limit(HALF)) / 2
    return height - HALF
