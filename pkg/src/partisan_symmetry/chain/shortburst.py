"""Short-burst seat maximization and metric ranges by seats won."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..bounds import mm_range_limit
from ..election import DomainError, HALF, infeasibility_reason
from ..metrics import declination, mean_median, partisan_bias
from .geography import Geography, make_rng
from .partition import Partition, check_partition
from .recom import recom_step, random_plan

METRICS = ("MM", "PB", "EG", "DEC")
BAND_FACTOR = Fraction(16, 100)


@dataclass(frozen=True)
class PlanRecord:
    index: int
    burst: int  # -1 for the seed plan
    seats: int
    MM: Fraction
    PB: Fraction
    EG: Fraction
    DEC: Optional[Fraction]


@dataclass(frozen=True)
class BucketStats:
    count: int
    min: Fraction
    max: Fraction
    mean: Fraction


@dataclass
class BurstRunSummary:
    records: list
    buckets: dict  # seats -> metric -> BucketStats
    band: dict  # metric -> (lo, hi)
    meta: dict = field(default_factory=dict)
    best_so_far: list = field(default_factory=list)  # seats of each burst's seed plan

    def range_of(self, seats: int, metric: str):
        b = self.buckets[seats][metric]
        return b.min, b.max

    def records_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "burst", "seats", *METRICS])
        for r in self.records:
            w.writerow([r.index, r.burst, r.seats, *(_fmt(getattr(r, m)) for m in METRICS)])
        return buf.getvalue()

    def buckets_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["seats", "metric", "count", "min", "max", "mean", "band_lo", "band_hi"])
        for s in sorted(self.buckets):
            for m in METRICS:
                b = self.buckets[s].get(m)
                if b is None:
                    continue
                lo, hi = self.band[m]
                w.writerow([s, m, b.count, _fmt(b.min), _fmt(b.max), _fmt(b.mean), _fmt(lo), _fmt(hi)])
        return buf.getvalue()


def _fmt(x) -> str:
    if x is None:
        return ""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def efficiency_gap_votes(p: Partition) -> Fraction:
    """Efficiency gap from raw vote counts, positive when it favors party A; ties go to B."""
    waste_a = waste_b = 0
    total = 0
    for a, b in zip(p.a, p.b):
        t = a + b
        total += t
        # twice the wasted votes, to stay in integers
        if a > b:
            waste_a += 2 * a - t
            waste_b += 2 * b
        else:
            waste_a += 2 * a
            waste_b += 2 * b - t
    return Fraction(waste_b - waste_a, 2 * total)


def plan_record(p: Partition, index: int, burst: int, party: str) -> PlanRecord:
    e = p.election()
    dec = declination(e)
    return PlanRecord(index, burst, p.seats(party), mean_median(e), partisan_bias(e),
                      efficiency_gap_votes(p), dec.value if dec.defined else None)


def mm_envelope(V, grid: int = 200):
    """Smallest and largest MM over all feasible seat shares at vote share V."""
    lo = hi = None
    for k in range(grid + 1):
        S = Fraction(k, grid)
        if infeasibility_reason(V, S) is not None:
            continue
        iv = mm_range_limit(V, S)
        lo = iv.lo if lo is None else min(lo, iv.lo)
        hi = iv.hi if hi is None else max(hi, iv.hi)
    return lo, hi


def acceptability_band(V) -> dict:
    """[0.16 inf(m), 0.16 sup(m)] for each metric."""
    mlo, mhi = mm_envelope(V)
    extremes = {"MM": (mlo, mhi), "PB": (-HALF, HALF), "EG": (-HALF, HALF), "DEC": (Fraction(-1), Fraction(1))}
    return {m: (BAND_FACTOR * lo, BAND_FACTOR * hi) for m, (lo, hi) in extremes.items()}


def summarize_ranges(records, V=HALF) -> tuple:
    """Per-seat buckets (count, min, max, mean per metric) and the acceptability band at vote share V."""
    records = list(records)
    if not records:
        raise DomainError("no records to summarize")
    groups: dict = {}
    for r in records:
        groups.setdefault(r.seats, []).append(r)
    buckets = {}
    for s, rs in sorted(groups.items()):
        stats = {}
        for m in METRICS:
            vals = [getattr(r, m) for r in rs if getattr(r, m) is not None]
            if vals:
                stats[m] = BucketStats(len(vals), min(vals), max(vals), sum(vals, Fraction(0)) / len(vals))
        buckets[s] = stats
    return buckets, acceptability_band(V)


def short_burst(g: Geography, d: int, party: str = "A", b: int = 10, B: int = 500,
                deviation=Fraction(1, 20), seed: int = 0, check: bool = False) -> BurstRunSummary:
    """Run ``B`` bursts of ``b`` recombination steps, reseeding each burst from its best plan.

    The best plan maximizes ``party``'s seats; among ties the one produced last wins.
    With ``check`` every plan is validated for connectivity, balance and tallies.
    """
    if party not in ("A", "B"):
        raise DomainError("party must be 'A' or 'B'")
    if d < 2 or b < 1 or B < 0:
        raise DomainError("need d >= 2, b >= 1 and B >= 0")
    deviation = Fraction(deviation)
    rng = make_rng(seed)
    adj = g.neighbors()
    current = random_plan(g, d, deviation, rng)
    records = [plan_record(current, 0, -1, party)]
    best_so_far = [records[0].seats]

    def validate(p):
        if check:
            problems = check_partition(g, p, deviation)
            if problems:
                raise AssertionError(f"invalid plan: {'; '.join(problems)}")

    validate(current)
    for burst in range(B):
        best, best_seats = current, current.seats(party)
        p = current
        for _ in range(b):
            p = recom_step(p, g, rng, deviation, adj)
            validate(p)
            rec = plan_record(p, len(records), burst, party)
            records.append(rec)
            if rec.seats >= best_seats:
                best, best_seats = p, rec.seats
        current = best
        best_so_far.append(best_seats)
    buckets, band = summarize_ranges(records, g.vote_share())
    meta = {"seed": seed, "b": b, "B": B, "party": party, "districts": d,
            "deviation": str(deviation), "nodes": g.n, "V": str(g.vote_share()), "rng": "PCG64"}
    return BurstRunSummary(records, buckets, band, meta, best_so_far)
