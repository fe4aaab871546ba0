"""Explicit witness elections for extremal and zero MM/PB values.

A :class:`ConstructionPlan` lists buckets of identical districts together
with the free parameters that were picked; ``plan.compile()`` turns it into
an :class:`Election` and checks that (V, S) come out exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bounds import mm_range_fixed, pb_range_fixed, zero_region_contains, zero_region_turnout
from .election import HALF, DistrictResult, DomainError, Election, SVPair, as_fraction, seat_share

ONE = Fraction(1)


@dataclass(frozen=True)
class Bucket:
    share: Fraction
    count: int
    winner_at_half: Optional[bool] = None
    turnout_level: str = "low"

    def swapped(self) -> "Bucket":
        flag = None if self.winner_at_half is None else not self.winner_at_half
        return Bucket(1 - self.share, self.count, flag, self.turnout_level)


def _bucket(share, count: int, won: bool, level: str = "low") -> Optional[Bucket]:
    share = Fraction(share)
    if count <= 0:
        return None
    return Bucket(share, count, won if share == HALF else None, level)


@dataclass
class ConstructionPlan:
    V: Fraction
    S: Fraction
    n: int
    buckets: list
    chosen: dict = field(default_factory=dict)
    high_weight: Fraction = ONE  # turnout of "high" buckets relative to "low" ones

    def swapped(self) -> "ConstructionPlan":
        chosen = dict(self.chosen, swapped=True)
        return ConstructionPlan(1 - self.V, 1 - self.S, self.n,
                                [b.swapped() for b in self.buckets], chosen, self.high_weight)

    def compile(self) -> Election:
        districts, raw = [], []
        for b in self.buckets:
            for _ in range(b.count):
                districts.append(DistrictResult(b.share, b.winner_at_half))
                raw.append(self.high_weight if b.turnout_level == "high" else ONE)
        if len(districts) != self.n:
            raise RuntimeError(f"plan has {len(districts)} districts, expected {self.n}")
        weights = None
        if any(w != ONE for w in raw):
            total = sum(raw)
            weights = tuple(w / total for w in raw)
        e = Election(tuple(districts), weights)
        got = seat_share(e)
        if got.V != self.V or got.S != self.S:
            raise RuntimeError(f"plan realizes (V={got.V}, S={got.S}), expected ({self.V}, {self.S})")
        return e

    def describe(self) -> str:
        lines = [f"V = {self.V}, S = {self.S}, n = {self.n}"]
        for b in self.buckets:
            share = str(b.share)
            if b.winner_at_half is not None:
                share = "1/2+" if b.winner_at_half else "1/2-"
            tag = f"  (turnout x{self.high_weight})" if b.turnout_level == "high" else ""
            lines.append(f"  {b.count} x {share}{tag}")
        for k, v in self.chosen.items():
            lines.append(f"  {k} = {v}")
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "V": str(self.V), "S": str(self.S), "n": self.n,
            "buckets": [
                {"share": str(b.share), "count": b.count, "winner_at_half": b.winner_at_half,
                 "turnout_level": b.turnout_level}
                for b in self.buckets
            ],
            "chosen": {k: str(v) for k, v in self.chosen.items()},
            "high_weight": str(self.high_weight),
        }


def _plan(p: SVPair, buckets, chosen=None, high_weight=ONE) -> ConstructionPlan:
    return ConstructionPlan(p.V, p.S, p.n, [b for b in buckets if b is not None], chosen or {}, high_weight)


def choose_epsilon(n: int, constraints) -> Optional[Fraction]:
    """Pick a small positive rational for strict constraints ``coef * eps < margin``.

    The tightest constraint (smallest margin/coef) sets
    eps = margin / (2 n max(1, coef + 1)).  Returns None when there is nothing
    to satisfy; raises DomainError if some margin is not positive, which means
    the pair is degenerate and the metric is forced.
    """
    constraints = [(Fraction(m), Fraction(c)) for m, c in constraints if c > 0]
    if not constraints:
        return None
    for margin, _ in constraints:
        if margin <= 0:
            raise DomainError("no positive slack: the metric value is forced here")
    margin, coef = min(constraints, key=lambda mc: mc[0] / mc[1])
    return margin / (2 * n * max(1, coef + 1))


def _check_eps(eps, n, constraints) -> Optional[Fraction]:
    if eps is None:
        return choose_epsilon(n, constraints)
    eps = as_fraction(eps)
    for margin, coef in constraints:
        if coef > 0 and not (0 < eps and coef * eps < margin):
            raise DomainError(f"eps={eps} violates {coef}*eps < {margin}")
    return eps


# -- partisan bias ------------------------------------------------------


def plan_pb_value(p: SVPair, target, eps=None) -> ConstructionPlan:
    """A plan whose partisan bias equals ``target`` (a multiple of 1/(2n) in range)."""
    target = as_fraction(target)
    iv = pb_range_fixed(p)
    code = target * 2 * p.n
    if code.denominator != 1 or not iv.contains(target):
        raise DomainError(f"PB={target} is not achievable at (V={p.V}, S={p.S}, n={p.n}); range {iv}")
    if p.S < HALF:
        return plan_pb_value(p.swapped(), -target, eps).swapped()
    V, S, n, lost = p.V, p.S, p.n, p.lost
    won = n - lost
    code = int(code)
    if V == 1:
        return _plan(p, [_bucket(1, n, True)], {"case": "V = 1"})
    if V == HALF and S == 1:
        return _plan(p, [_bucket(HALF, n, True)], {"case": "V = 1/2, S = 1"})
    T = n * V
    if V < HALF:
        c = code - (n - 2 * lost)
        k, e = divmod(c, 2)
        cons = []
        if k:
            cons = [(T - Fraction(won, 2) - (k + e) * V, k), (HALF - V, 1)]
        eps = _check_eps(eps, n, cons) if k else None
        bump = (eps or 0) * k
        delta = (T - Fraction(won, 2) - (k + e) * V - bump) / won
        buckets = [
            _bucket(0, lost - k - e, False),
            _bucket(V, e, False),
            _bucket(V + (eps or 0), k, False),
            _bucket(HALF + delta, won, True),
        ]
        return _plan(p, buckets, {"case": "1/4 <= V < 1/2", "k": k, "at_mean": e, "eps": eps or 0, "delta": delta})
    if V == HALF:
        if code == 0:
            alpha = beta = 0
        elif code > 0:
            alpha, beta = code + 1, 1
        else:
            alpha, beta = 1, 1 - code
        cons = [(HALF, max(alpha, beta))] if alpha else []
        eps = _check_eps(eps, n, cons) if alpha else None
        buckets = [
            _bucket(HALF - alpha * (eps or 0), beta, False),
            _bucket(HALF, lost - beta, False),
            _bucket(HALF, won - alpha, True),
            _bucket(HALF + beta * (eps or 0), alpha, True),
        ]
        return _plan(p, buckets, {"case": "V = 1/2", "above": alpha, "below": beta, "eps": eps or 0})
    c = n - 2 * lost - code
    j, e = divmod(c, 2)
    rest = won - j - e
    y = n - lost / (2 * (1 - V))
    cons = [((1 - V) * (y - j - e), j), (V - HALF, 1)] if j else []
    eps = _check_eps(eps, n, cons) if j else None
    buckets = [_bucket(HALF, lost, False), _bucket(V - (eps or 0), j, True), _bucket(V, e, True)]
    if rest:
        u = (T - Fraction(lost, 2) - e * V - j * (V - (eps or 0))) / rest
        buckets.append(_bucket(u, rest, True))
    return _plan(p, buckets, {"case": "1/2 < V < 1", "below_mean_winners": j, "at_mean": e, "eps": eps or 0})


def plan_pb_extremal(p: SVPair, which: str, eps=None) -> ConstructionPlan:
    iv = pb_range_fixed(p)
    return plan_pb_value(p, iv.lo if which == "min" else iv.hi, eps)


def construct_pb_extremal(p: SVPair, which: str, eps=None) -> Election:
    """Election at (V, S, n) whose PB is the min or max of :func:`pb_range_fixed`."""
    if which not in ("min", "max"):
        raise DomainError(f"which must be 'min' or 'max', not {which!r}")
    return plan_pb_extremal(p, which, eps).compile()


# -- mean-median --------------------------------------------------------


def _fill(values: list, indices, cap: Fraction, amount: Fraction, sign: int) -> Fraction:
    """Move up to ``amount`` into (sign=+1) or out of (sign=-1) the given slots, each bounded by ``cap``."""
    for i in indices:
        if amount <= 0:
            break
        room = (cap - values[i]) if sign > 0 else (values[i] - cap)
        d = min(room, amount)
        values[i] += sign * d
        amount -= d
    return amount


def _mm_vector(p: SVPair, which: str) -> list:
    """Sorted extremal share vector for S >= 1/2 (index i is lost iff i < lost)."""
    V, n, lost = p.V, p.n, p.lost
    T = n * V
    x = [Fraction(0)] * n
    if p.S == HALF:
        a = n // 2  # x[a-1] is the top loser, x[a] the lowest winner
        R = T - Fraction(n, 4)
        if which == "max":
            if V < Fraction(1, 4) + Fraction(1, 2 * n):
                x[a - 1] = R
                x[a:] = [HALF] * (n - a)
            elif V <= Fraction(n + 1, 2 * n):
                x[a - 1] = HALF
                x[a:] = [HALF + (R - HALF) * 2 / n] * (n - a)
            else:
                x[a - 1] = HALF
                x[a:] = [ONE] * (n - a)
                _fill(x, range(a - 2, -1, -1), HALF, T - HALF - (n - a), +1)
        else:
            if V <= Fraction(n - 1, 2 * n):
                x[a] = HALF
                x[a + 1:] = [(T - HALF) / (n - a - 1)] * (n - a - 1)
            elif V <= Fraction(3, 4) - Fraction(1, 2 * n):
                x[:a] = [(T - Fraction(n - 1, 2)) / a] * a
                x[a] = HALF
                x[a + 1:] = [ONE] * (n - a - 1)
            else:
                x[:a] = [HALF] * a
                x[a] = T - Fraction(3 * n, 4) + 1
                x[a + 1:] = [ONE] * (n - a - 1)
        return x
    from .bounds import _median_extremes

    t_min, t_max = _median_extremes(n, lost, V)
    if which == "max":
        m = n // 2 if n % 2 == 0 else (n + 1) // 2
        x[lost:m - 1] = [HALF] * (m - 1 - lost)
        x[m - 1:] = [t_max] * (n - m + 1)
        excess = T - sum(x)
        excess = _fill(x, range(m - 2, lost - 1, -1), ONE, excess, +1)
        _fill(x, range(lost - 1, -1, -1), HALF, excess, +1)
    else:
        m = n // 2 + 1 if n % 2 == 0 else (n + 1) // 2
        x[:lost] = [HALF] * lost
        x[lost:m] = [t_min] * (m - lost)
        x[m:] = [ONE] * (n - m)
        deficit = sum(x) - T
        deficit = _fill(x, range(m, n), t_min, deficit, -1)
        _fill(x, range(lost), Fraction(0), deficit, -1)
    return x


def _vector_plan(p: SVPair, x: list, chosen: dict) -> ConstructionPlan:
    buckets = []
    for i, share in enumerate(sorted(x)):
        won = i >= p.lost
        b = _bucket(share, 1, won)
        if buckets and buckets[-1].share == b.share and buckets[-1].winner_at_half == b.winner_at_half:
            buckets[-1] = Bucket(b.share, buckets[-1].count + 1, b.winner_at_half)
        else:
            buckets.append(b)
    return _plan(p, buckets, chosen)


def plan_mm_value(p: SVPair, target) -> ConstructionPlan:
    """A plan whose mean-median difference equals ``target``.

    Blends the two extremal layouts; sorted share vectors mix linearly, so the
    median (and the MM value) does too.
    """
    if p.n < 3:
        raise DomainError("MM constructions need n >= 3")
    target = as_fraction(target)
    iv = mm_range_fixed(p)
    if not iv.contains(target):
        raise DomainError(f"MM={target} is not achievable at (V={p.V}, S={p.S}, n={p.n}); range {iv}")
    if p.S < HALF:
        return plan_mm_value(p.swapped(), -target).swapped()
    lo, hi = _mm_vector(p, "min"), _mm_vector(p, "max")
    if iv.lo == iv.hi:
        lam = ONE
    else:
        lam = (target - iv.lo) / (iv.hi - iv.lo)
    x = [lam * b + (1 - lam) * a for a, b in zip(lo, hi)]
    return _vector_plan(p, x, {"blend": lam})


def plan_mm_extremal(p: SVPair, which: str) -> ConstructionPlan:
    if p.n < 3:
        raise DomainError("MM constructions need n >= 3")
    if p.S < HALF:
        other = "max" if which == "min" else "min"
        return plan_mm_extremal(p.swapped(), other).swapped()
    mm_range_fixed(p)  # feasibility check
    return _vector_plan(p, _mm_vector(p, which), {"endpoint": which})


def construct_mm_extremal(p: SVPair, which: str) -> Election:
    """Election at (V, S, n) whose MM is the min or max of :func:`mm_range_fixed`."""
    if which not in ("min", "max"):
        raise DomainError(f"which must be 'min' or 'max', not {which!r}")
    return plan_mm_extremal(p, which).compile()


# -- zero ---------------------------------------------------------------


def _zero_layout(V: Fraction, S: Fraction, n: int) -> Optional[list]:
    lost = int((1 - S) * n)
    won = n - lost
    if V == HALF:
        return [_bucket(HALF, lost, False), _bucket(HALF, won, True)]
    if V <= Fraction(3, 4):
        return [_bucket(HALF, lost, False), _bucket(V, n - 2 * lost, True), _bucket(2 * V - HALF, lost, True)]
    if lost == 0:
        return [_bucket(V, n, True)]
    # lost at 1/2, c just below V, z >= 1 at V, lost + c at 1
    c_min = lost * (2 * V - Fraction(3, 2)) / (1 - V)
    c = max(1, c_min.numerator // c_min.denominator + 1)  # delta must be > 0
    z = n - 2 * lost - 2 * c
    if z < 1:
        return None
    delta = ((lost + c) * (1 - V) - lost * (V - HALF)) / c
    return [_bucket(HALF, lost, False), _bucket(V - delta, c, True), _bucket(V, z, True), _bucket(1, lost + c, True)]


def plan_zero(p: SVPair, allow_scale: bool = True) -> ConstructionPlan:
    """Plan with MM = PB = 0 at (V, S).

    Some pairs near the region boundary need more districts than ``p.n``;
    with ``allow_scale`` the district count is multiplied until a layout fits.
    """
    if not zero_region_contains(p.V, p.S):
        raise DomainError(f"(V={p.V}, S={p.S}) admits no election with MM = PB = 0")
    if p.S < HALF or (p.S == HALF and p.V < HALF):
        return plan_zero(p.swapped(), allow_scale).swapped()
    mult = 1
    while True:
        n = p.n * mult
        layout = _zero_layout(p.V, p.S, n)
        if layout is not None:
            q = SVPair.of(p.V, p.S, n)
            return _plan(q, layout, {"districts": n})
        if not allow_scale or mult > 10 ** 6:
            raise DomainError(f"no zero layout at n={p.n}; allow scaling or use more districts")
        mult += 1


def construct_zero(p: SVPair, allow_scale: bool = True) -> Election:
    return plan_zero(p, allow_scale).compile()


def plan_zero_turnout(S, C, V_target, max_districts: int = 10 ** 6) -> ConstructionPlan:
    """Two-level turnout plan with MM = PB = 0, seat share S and weighted vote share V_target."""
    S, C, V = as_fraction(S), as_fraction(C), as_fraction(V_target)
    if S < HALF:
        return plan_zero_turnout(1 - S, C, 1 - V, max_districts).swapped()
    if S == HALF:
        w = 1 / (2 * (C + 1))
        if not w <= V <= 1 - w:
            raise DomainError(f"V={V} outside [{w}, {1 - w}] for S=1/2, C={C}")
        if V > HALF:
            return plan_zero_turnout(S, C, 1 - V, max_districts).swapped()
        if V < Fraction(1, 4):
            # (0, 1/2+) with the empty district at turnout ratio r
            r = 1 / (2 * V) - 1
            buckets = [_bucket(0, 1, False, "high"), _bucket(HALF, 1, True)]
            return _plan(SVPair.of(V, S, 2), buckets, {"ratio": r}, r)
        return plan_zero(SVPair.of(V, S, 2))
    band = zero_region_turnout(S, C)
    if not band.contains(V):
        raise DomainError(f"V={V} outside [{band.v_lo}, {band.v_hi}) for S={S}, C={C}")
    base = S.denominator
    if zero_region_contains(V, S):
        return plan_zero(SVPair.of(V, S, base))
    if V < HALF:
        n = base
        lost = int((1 - S) * n)
        r = (n / (2 * V) - n + lost) / lost
        buckets = [_bucket(0, lost, False, "high"), _bucket(HALF, n - 2 * lost, True), _bucket(1, lost, True)]
        return _plan(SVPair.of(V, S, n), buckets, {"ratio": r}, r)
    n = base
    while n <= max_districts:
        lost = int((1 - S) * n)
        c, z = divmod(n - 2 * lost, 2)
        if z == 0 and c > 0:
            c, z = c - 1, 2
        a = lost + c
        # c winners sit delta below the median so above/below counts balance
        delta = ((Fraction(lost, 2) + a) / (lost + a) - HALF) / n if c else Fraction(0)
        m = (Fraction(lost, 2) + a - c * delta) / (lost + a)
        r = (V * (n - a) + a - n * m) / (a * (1 - V))
        if 1 <= r <= C:
            buckets = [_bucket(HALF, lost, False), _bucket(m - delta, c, True), _bucket(m, z, True),
                       _bucket(1, a, True, "high")]
            return _plan(SVPair.of(V, S, n), buckets, {"ratio": r, "median": m, "delta": delta}, r)
        n += base
    raise DomainError(f"no witness with at most {max_districts} districts; V={V} is too close to {band.v_hi}")


def construct_zero_turnout(S, C, V_target) -> Election:
    return plan_zero_turnout(S, C, V_target).compile()
