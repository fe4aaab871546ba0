"""Achievable ranges of mean-median and partisan bias for a given (V, S).

Everything here assumes equal turnout unless a turnout ratio ``C`` is
given.  Formulas are evaluated for S >= 1/2; smaller seat shares are mapped
through the party swap (V, S) -> (1 - V, 1 - S), which negates both metrics.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .election import HALF, DomainError, SVPair, as_fraction, infeasibility_reason

ONE = Fraction(1)
QUARTER = Fraction(1, 4)
THREE_QUARTERS = Fraction(3, 4)


@dataclass(frozen=True)
class MetricInterval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True
    forced_value: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")
        if self.forced_value is None and self.lo == self.hi and self.lo_closed and self.hi_closed:
            object.__setattr__(self, "forced_value", self.lo)
        if self.forced_value is not None and not (
            self.lo == self.hi == self.forced_value and self.lo_closed and self.hi_closed
        ):
            raise ValueError("forced interval must be a closed single point")

    @classmethod
    def forced(cls, value: Fraction) -> "MetricInterval":
        return cls(value, value, True, True, value)

    def contains(self, x: Fraction) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def closure_contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def negated(self) -> "MetricInterval":
        return MetricInterval(-self.hi, -self.lo, self.hi_closed, self.lo_closed,
                              None if self.forced_value is None else -self.forced_value)

    def __str__(self) -> str:
        if self.forced_value is not None:
            return f"{{{self.forced_value}}}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo}, {self.hi}{right}"


def _check_pair(V, S) -> tuple:
    V, S = as_fraction(V), as_fraction(S)
    reason = infeasibility_reason(V, S)
    if reason is not None:
        raise DomainError(f"(V={V}, S={S}) is infeasible: violates {reason}")
    return V, S


def _ceil(x: Fraction) -> int:
    return math.ceil(x)


def _floor(x: Fraction) -> int:
    return math.floor(x)


# -- partisan bias ------------------------------------------------------


def pb_range_limit(V, S) -> MetricInterval:
    """PB values reachable with equal turnout and any number of districts."""
    V, S = _check_pair(V, S)
    if S < HALF:
        return pb_range_limit(1 - V, 1 - S).negated()
    if V == 1 or (V == HALF and S == 1):
        return MetricInterval.forced(Fraction(0))
    if S == 2 * V or S == 2 * V - 1:
        return MetricInterval.forced(S - HALF)
    if V < HALF:
        return MetricInterval(S - HALF, HALF - S * (1 / (2 * V) - 1), True, False)
    if V == HALF:
        return MetricInterval((S - 1) / 2, S / 2, False, False)
    lo = (1 - S) * (V - HALF) / (1 - V) - HALF
    if S == 1:
        return MetricInterval(lo, HALF, False, False)
    return MetricInterval(lo, S - HALF, False, True)


def pb_range_fixed(p: SVPair) -> MetricInterval:
    """PB values reachable with exactly ``p.n`` equal-turnout districts."""
    V, S = _check_pair(p.V, p.S)
    if S < HALF:
        return pb_range_fixed(p.swapped()).negated()
    n, lost = p.n, p.lost
    if V == 1 or (V == HALF and S == 1):
        return MetricInterval.forced(Fraction(0))
    if V < HALF:
        x = n * (1 - S / (2 * V))
        extra = max(2 * (_ceil(x) - 1), _floor(x), 0)
        return MetricInterval(S - HALF, S - HALF + Fraction(extra, 2 * n))
    if V == HALF:
        return MetricInterval(Fraction(1 - lost, 2 * n), Fraction(n - lost - 1, 2 * n))
    y = n - lost / (2 * (1 - V))
    extra = max(2 * (_ceil(y) - 1), _floor(y), 0)
    lo = Fraction(n - 2 * lost - extra, 2 * n)
    hi = S - HALF if lost else Fraction(max(n - 2, 0), 2 * n)
    return MetricInterval(lo, hi)


def pb_range_fixed_literal(p: SVPair) -> tuple:
    """The uncorrected closed-form endpoints, evaluated verbatim (may be inverted)."""
    V, S = _check_pair(p.V, p.S)
    if S < HALF:
        lo, hi = pb_range_fixed_literal(p.swapped())
        return (-hi, -lo)
    n = p.n
    if V == 1 or (V == HALF and S == 1):
        return (Fraction(0), Fraction(0))
    if V < HALF:
        k = _ceil(n * (1 - S / (2 * V)) - 1)
        return (S - HALF, (2 * S - 1 + Fraction(2 * k, n)) / 2)
    if V == HALF:
        return ((S - 1 + Fraction(1, n)) / 2, (S - Fraction(1, n)) / 2)
    if S == 1:
        return (Fraction(1, n) - HALF, HALF - Fraction(1, n))
    k = _ceil(n * (1 - (1 - S) / (2 * (1 - V))) - 1)
    return ((2 * S - 1 - Fraction(2 * k, n)) / 2, S - HALF)


# -- mean-median --------------------------------------------------------


def mm_range_limit(V, S) -> MetricInterval:
    """MM values reachable with equal turnout and any number of districts."""
    V, S = _check_pair(V, S)
    if S < HALF:
        return mm_range_limit(1 - V, 1 - S).negated()
    if S == 2 * V:
        return MetricInterval.forced(HALF - V if S > HALF else Fraction(0))
    if S == 2 * V - 1:
        return MetricInterval.forced(1 - V if S > HALF else Fraction(0))
    if S == HALF:
        if V < HALF:
            return MetricInterval(QUARTER - V, QUARTER, True, False)
        if V == HALF:
            return MetricInterval(-QUARTER, QUARTER, False, False)
        return MetricInterval(-QUARTER, THREE_QUARTERS - V, False, True)
    peak = V - S + HALF
    hi = min(1 - V, peak)
    hi_closed = 1 - V < peak
    if V < THREE_QUARTERS:
        return MetricInterval(HALF - V, hi, True, hi_closed)
    return MetricInterval((2 * V + S - 2) / (2 * S - 1) - V, hi, False, hi_closed)


def _median_extremes(n: int, lost: int, V: Fraction) -> tuple:
    """Smallest and largest possible median share with S > 1/2."""
    T = n * V
    m_hi = n // 2 if n % 2 == 0 else (n + 1) // 2
    m_lo = n // 2 + 1 if n % 2 == 0 else (n + 1) // 2
    t_max = min(ONE, (T - Fraction(m_hi - 1 - lost, 2)) / (n - m_hi + 1))
    t_min = max(HALF, (T - Fraction(lost, 2) - (n - m_lo)) / (m_lo - lost))
    return t_min, t_max


def mm_range_fixed(p: SVPair) -> MetricInterval:
    """MM values reachable with exactly ``p.n`` equal-turnout districts (n >= 3)."""
    if p.n < 3:
        raise DomainError("mm_range_fixed needs n >= 3")
    V, S = _check_pair(p.V, p.S)
    if S < HALF:
        return mm_range_fixed(p.swapped()).negated()
    n = p.n
    if S == HALF:
        if V <= Fraction(n - 1, 2 * n):
            lo = QUARTER - V
        elif V <= THREE_QUARTERS - Fraction(1, 2 * n):
            lo = Fraction(1, 2 * n) - QUARTER
        else:
            lo = (n - 2) * V / 2 - Fraction(3 * n, 8) + THREE_QUARTERS
        if V < QUARTER + Fraction(1, 2 * n):
            hi = (n - 2) * V / 2 - Fraction(n, 8) + QUARTER
        elif V <= Fraction(n + 1, 2 * n):
            hi = QUARTER - Fraction(1, 2 * n)
        else:
            hi = THREE_QUARTERS - V
        return MetricInterval(lo, hi)
    t_min, t_max = _median_extremes(n, p.lost, V)
    return MetricInterval(t_min - V, t_max - V)


def mm_range_fixed_literal(p: SVPair, odd_form: str = "statement", boundary: str = "le") -> Optional[tuple]:
    """Uncorrected fixed-n MM endpoints evaluated verbatim.

    ``odd_form`` picks the odd-n upper bound: ``"statement"`` uses
    (... + 1/(2n)) / (1 + 1/n), ``"proof"`` uses (... + 1/n) / (1 + 2/n).
    ``boundary`` places V = (n-1)/(2n) in the first S = 1/2 row (``"le"``) or
    the second (``"lt"``).  Returns None where no row applies.
    """
    V, S = _check_pair(p.V, p.S)
    n = p.n
    inv = Fraction(1, n)
    if S == HALF:
        edge = Fraction(n - 1, 2 * n)
        first = V <= edge if boundary == "le" else V < edge
        if first:
            return (QUARTER - V, QUARTER - inv / 2)
        if V < Fraction(n + 1, 2 * n):
            return (inv / 2 - QUARTER, QUARTER - inv / 2)
        return (inv / 2 - QUARTER, THREE_QUARTERS - V)
    if n % 2 == 0:
        top = min(1 - V, (2 * V + HALF - S + inv) / (1 + 2 * inv) - V)
        if V <= Fraction(3 * n - 2, 4 * n):
            return (HALF - V, top)
        return ((2 * V + S - 2 + 2 * inv) / (2 * S - 1 + 2 * inv) - V, top)
    if odd_form == "statement":
        top = min(1 - V, (2 * V + HALF - S + inv / 2) / (1 + inv) - V)
    else:
        top = min(1 - V, (2 * V + HALF - S + inv) / (1 + 2 * inv) - V)
    edge = Fraction(3 * n - 1, 4 * n)
    if V < edge:
        return (HALF - V, top)
    if V > edge:
        return ((2 * V + S - 2 + inv) / (2 * S - 1 + inv) - V, top)
    return None


# -- zero regions -------------------------------------------------------


def zero_region_contains(V, S, include_degenerate: bool = True) -> bool:
    """Whether some equal-turnout election at (V, S) has MM = PB = 0.

    With ``include_degenerate=False`` only the open-form region is used:
    1/2 <= V < 3/4, or V >= 3/4 with S > (3V-2)/(2V-1) (for S >= 1/2).
    The default also admits the S = 1/2 row for 1/4 <= V < 1/2 (the mirror of
    the row above 1/2) and the two forced corners (1, 1) and (3/4, 1/2).
    """
    V, S = as_fraction(V), as_fraction(S)
    if infeasibility_reason(V, S) is not None:
        return False
    if S < HALF:
        return zero_region_contains(1 - V, 1 - S, include_degenerate)
    if include_degenerate:
        if S == HALF and QUARTER <= V <= THREE_QUARTERS:
            return True
        if V == 1 and S == 1:
            return True
    if HALF <= V < THREE_QUARTERS:
        return True
    if THREE_QUARTERS <= V <= 1:
        return S > (3 * V - 2) / (2 * V - 1)
    return False


@dataclass(frozen=True)
class TurnoutZeroBand:
    C: Fraction
    S: Fraction
    v_lo: Fraction
    v_hi: Fraction

    def contains(self, V) -> bool:
        return self.v_lo <= as_fraction(V) < self.v_hi


def zero_region_turnout(S, C) -> TurnoutZeroBand:
    """Vote shares admitting MM = PB = 0 at seat share S >= 1/2 when turnout ratios reach C."""
    S, C = as_fraction(S), as_fraction(C)
    if C < 1:
        raise DomainError(f"turnout ratio C={C} must be >= 1")
    if not HALF <= S <= 1:
        raise DomainError(f"S={S} must lie in [1/2, 1]; use party swap for smaller S")
    v_lo = 1 / (2 * (S + C * (1 - S)))
    v_hi = (1 + C * (3 - 2 * S)) / ((C + 1) * (3 - 2 * S))
    return TurnoutZeroBand(C, S, v_lo, v_hi)


def zero_region_turnout_contains(V, S, C) -> bool:
    V, S = as_fraction(V), as_fraction(S)
    if not (0 <= V <= 1 and 0 <= S <= 1):
        return False
    if S < HALF:
        return zero_region_turnout_contains(1 - V, 1 - S, C)
    if V == 1 and S == 1:
        return True  # forced corner: every district at share 1
    if S == HALF:
        # the row maps to itself under a party swap, so it is symmetric about 1/2
        C = as_fraction(C)
        if C < 1:
            raise DomainError(f"turnout ratio C={C} must be >= 1")
        w = 1 / (2 * (C + 1))
        return w <= V <= 1 - w
    return zero_region_turnout(S, C).contains(V)


# -- rasters ------------------------------------------------------------


@dataclass
class Raster:
    """Per-cell values on a (V, S) grid; ``None`` marks infeasible cells."""

    metric: str
    which: str
    resolution: int
    cells: list  # rows of (v, s, value, lo_closed, hi_closed)
    meta: dict = field(default_factory=dict)

    def value(self, v, s):
        v, s = as_fraction(v), as_fraction(s)
        step = Fraction(1, self.resolution - 1)
        i, j = v / step, s / step
        if i.denominator != 1 or j.denominator != 1:
            raise KeyError(f"({v}, {s}) is not a grid point")
        return self.cells[int(j) * self.resolution + int(i)][2]

    def to_csv(self) -> str:
        lines = ["v,s,value,closed_lo,closed_hi"]
        for v, s, val, lc, hc in self.cells:
            if val is None:
                text = ""
            elif isinstance(val, bool):
                text = str(int(val))
            else:
                text = str(val)
            lines.append(f"{v},{s},{text},{'' if lc is None else int(lc)},{'' if hc is None else int(hc)}")
        return "\n".join(lines) + "\n"


def _interval_fn(metric: str, n: Optional[int]) -> Callable:
    if metric == "PB":
        return (lambda V, S: pb_range_fixed(SVPair.of(V, S, n))) if n else pb_range_limit
    return (lambda V, S: mm_range_fixed(SVPair.of(V, S, n))) if n else mm_range_limit


def region_raster(metric: str, which: str, grid: int = 201, n: Optional[int] = None,
                  C=None, dec_options: Optional[dict] = None) -> Raster:
    """Evaluate a range endpoint or zero-membership on a ``grid`` x ``grid`` lattice over [0, 1]^2.

    With ``n`` set, S values not expressible with n districts are null.  With
    ``C`` set (zero masks for MM/PB only), feasibility uses unequal turnout.
    """
    metric = metric.upper()
    if metric not in ("MM", "PB", "EG", "DEC"):
        raise DomainError(f"unknown metric {metric!r}")
    if which not in ("min", "max", "zero"):
        raise DomainError(f"unknown endpoint {which!r}")
    if grid < 2:
        raise DomainError("grid resolution must be >= 2")
    if metric in ("EG", "DEC") and which != "zero":
        from .election import UnsupportedInputError
        raise UnsupportedInputError(f"{metric} only supports zero regions")
    meta = {"metric": metric, "which": which, "grid": grid, "n": n,
            "C": None if C is None else str(C), "approximate": metric == "DEC"}
    dec_zero = None
    if metric == "DEC":
        from .oracle.scan import declination_zero_cells
        opts = dict(dec_options or {})
        dec_zero = declination_zero_cells(**opts)
        meta.update({"dec_" + k: str(v) for k, v in dec_zero.params.items()})
    step = Fraction(1, grid - 1)
    cells = []
    for j in range(grid):
        S = j * step
        for i in range(grid):
            V = i * step
            cells.append(_cell(metric, which, V, S, n, C, dec_zero))
    return Raster(metric, which, grid, cells, meta)


def _cell(metric, which, V, S, n, C, dec_zero):
    if n is not None and (S * n).denominator != 1:
        return (V, S, None, None, None)
    if C is not None:
        if which != "zero" or metric not in ("MM", "PB"):
            raise DomainError("a turnout ratio applies only to MM/PB zero masks")
        if (V == 0 and S != 0) or (V == 1 and S != 1):
            return (V, S, None, None, None)
        return (V, S, zero_region_turnout_contains(V, S, C), None, None)
    if infeasibility_reason(V, S) is not None:
        return (V, S, None, None, None)
    if metric == "EG":
        return (V, S, S == 2 * V - HALF, None, None)
    if metric == "DEC":
        return (V, S, dec_zero(V, S), None, None)
    if which == "zero":
        if n is None:
            return (V, S, zero_region_contains(V, S), None, None)
        if metric == "MM" and n < 3:
            return (V, S, None, None, None)
        return (V, S, _interval_fn(metric, n)(V, S).contains(Fraction(0)), None, None)
    if metric == "MM" and n is not None and n < 3:
        return (V, S, None, None, None)
    iv = _interval_fn(metric, n)(V, S)
    value = iv.lo if which == "min" else iv.hi
    return (V, S, value, iv.lo_closed, iv.hi_closed)
