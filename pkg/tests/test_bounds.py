import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given

from partisan_symmetry.bounds import (
    MetricInterval,
    mm_range_fixed,
    mm_range_limit,
    pb_range_fixed,
    pb_range_limit,
    region_raster,
    zero_region_contains,
    zero_region_turnout,
    zero_region_turnout_contains,
)
from partisan_symmetry.constructors import construct_zero
from partisan_symmetry.election import HALF, DistrictResult, DomainError, Election, SVPair, seat_share
from partisan_symmetry.metrics import mean_median, partisan_bias

from conftest import elections

F = Fraction


def iv(lo, hi, lc=True, hc=True):
    return MetricInterval(F(lo), F(hi), lc, hc)


# -- stated values ---------------------------------------------------------------


def test_pb_limit_examples():
    assert pb_range_limit(HALF, 1).forced_value == 0
    assert pb_range_limit("0.6", "0.9") == iv("-19/40", "2/5", False, True)
    assert pb_range_limit("0.48", "0.9") == iv("2/5", "37/80", True, False)


def test_pb_fixed_examples():
    assert pb_range_fixed(SVPair.of(HALF, "0.9", 10)) == iv(0, "2/5")
    assert pb_range_fixed(SVPair.of("0.6", "0.9", 10)) == iv("-2/5", "2/5")
    for n in (1, 2, 7):
        assert pb_range_fixed(SVPair.of(1, 1, n)).forced_value == 0


def test_mm_limit_examples():
    assert mm_range_limit("0.6", HALF) == iv("-1/4", "3/20", False, True)
    assert mm_range_limit(HALF, "0.6") == iv(0, "2/5", True, False)
    assert mm_range_limit("0.9", "0.95") == iv("-1/15", "1/10", False, True)


def test_mm_fixed_examples():
    assert mm_range_fixed(SVPair.of("0.7", "0.9", 10)) == iv("-1/5", "13/60")
    assert mm_range_fixed(SVPair.of("0.6", "0.9", 10)) == iv("-1/10", "3/20")
    assert mm_range_fixed(SVPair.of(HALF, "0.6", 10)) == iv(0, "1/3")
    assert mm_range_fixed(SVPair.of("3/8", HALF, 4)) == iv("-1/8", "1/8")
    with pytest.raises(DomainError):
        mm_range_fixed(SVPair.of(HALF, HALF, 2))


def test_infeasible_pairs_rejected():
    with pytest.raises(DomainError, match="S <= 2V"):
        pb_range_limit("0.2", "0.9")
    with pytest.raises(DomainError):
        mm_range_fixed(SVPair.of("0.9", "0.5", 10))


def test_interval_flags_and_negation():
    i = iv(-1, 2, False, True)
    assert not i.contains(F(-1)) and i.contains(F(2)) and i.closure_contains(F(-1))
    assert i.negated() == iv(-2, 1, True, False)
    assert str(i) == "(-1, 2]"
    with pytest.raises(ValueError):
        iv(1, 0)


# -- containment against independent brute force ------------------------------------


def brute(n, D):
    """Every election on the 1/D lattice (tuples, both tie flags)."""
    for xs in itertools.combinations_with_replacement(range(D + 1), n):
        ties = [i for i, x in enumerate(xs) if 2 * x == D]
        for flags in itertools.product((False, True), repeat=len(ties)):
            fl = dict(zip(ties, flags))
            yield Election(tuple(DistrictResult(F(x, D), fl.get(i)) for i, x in enumerate(xs)))


@pytest.mark.parametrize("n, D", [(3, 8), (4, 6), (5, 4)])
def test_every_small_election_lies_in_its_intervals(n, D):
    for e in brute(n, D):
        p = seat_share(e)
        mm, pb = mean_median(e), partisan_bias(e)
        assert pb_range_fixed(p).contains(pb), (e, pb)
        assert pb_range_limit(p.V, p.S).contains(pb), (e, pb)
        assert mm_range_fixed(p).contains(mm), (e, mm)
        assert mm_range_limit(p.V, p.S).contains(mm), (e, mm)


@given(elections(min_n=3, max_n=15))
def test_random_elections_lie_in_their_intervals(e):
    p = seat_share(e)
    assert pb_range_fixed(p).contains(partisan_bias(e))
    assert pb_range_limit(p.V, p.S).contains(partisan_bias(e))
    assert mm_range_fixed(p).contains(mean_median(e))
    assert mm_range_limit(p.V, p.S).contains(mean_median(e))


# -- structure ------------------------------------------------------------------------


def feasible_pairs(n, vstep=20):
    for k in range(n + 1):
        S = F(k, n)
        for j in range(vstep + 1):
            V = F(j, vstep)
            if 2 * V - 1 <= S <= 2 * V:
                yield V, S


@pytest.mark.parametrize("n", [3, 4, 7, 10])
def test_duality(n):
    for V, S in feasible_pairs(n):
        p = SVPair.of(V, S, n)
        assert pb_range_fixed(p.swapped()) == pb_range_fixed(p).negated()
        assert mm_range_fixed(p.swapped()) == mm_range_fixed(p).negated()
        assert pb_range_limit(1 - V, 1 - S) == pb_range_limit(V, S).negated()
        assert mm_range_limit(1 - V, 1 - S) == mm_range_limit(V, S).negated()


def test_fixed_converges_to_limit():
    rng = random.Random(11)
    checked = 0
    while checked < 50:
        V, S = F(rng.randint(1, 999), 1000), F(rng.randint(0, 10), 10)
        if not 2 * V - 1 <= S <= 2 * V or V == HALF:
            continue
        checked += 1
        for n in (10, 100, 1000):
            p = SVPair.of(V, S, n)
            for fixed, limit in ((pb_range_fixed(p), pb_range_limit(V, S)),
                                 (mm_range_fixed(p), mm_range_limit(V, S))):
                assert limit.closure_contains(fixed.lo) and limit.closure_contains(fixed.hi)
                assert abs(fixed.lo - limit.lo) <= F(2, n) and abs(fixed.hi - limit.hi) <= F(2, n)


def test_discontinuities():
    eps = F(1, 10 ** 6)
    a, b = pb_range_limit(HALF - eps, "0.9"), pb_range_limit(HALF + eps, "0.9")
    assert max(abs(a.lo - b.lo), abs(a.hi - b.hi)) > F(1, 10)
    c, d = mm_range_limit("0.6", HALF - F(1, 1000)), mm_range_limit("0.6", HALF + F(1, 1000))
    assert max(abs(c.lo - d.lo), abs(c.hi - d.hi)) > F(1, 10)


# -- zero regions -------------------------------------------------------------------


@pytest.mark.parametrize("V, S, inside", [("0.6", "0.9", True), ("0.8", "0.9", True), ("0.4", "0.6", False),
                                          (1, 1, True), ("3/4", HALF, True), ("0.3", HALF, True),
                                          ("0.2", HALF, False), ("0.9", "0.6", False)])
def test_zero_region_points(V, S, inside):
    assert zero_region_contains(F(V), F(S)) is inside


def test_zero_region_open_form():
    assert not zero_region_contains(F("0.3"), HALF, include_degenerate=False)
    assert zero_region_contains(F("0.6"), F("0.9"), include_degenerate=False)


@pytest.mark.parametrize("n", [4, 6, 10])
def test_zero_region_matches_constructor(n):
    for V, S in feasible_pairs(n):
        p = SVPair.of(V, S, n)
        if zero_region_contains(V, S):
            e = construct_zero(p)
            assert mean_median(e) == 0 and partisan_bias(e) == 0
            q = seat_share(e)
            assert (q.V, q.S) == (V, S)
        else:
            assert not pb_range_fixed(p).contains(F(0)) or not mm_range_fixed(p).contains(F(0))


def test_turnout_band_values():
    b = zero_region_turnout(HALF, 3)
    assert (b.v_lo, b.v_hi) == (F(1, 4), F(7, 8))
    for S in (F(1, 2), F(3, 5), F(9, 10), F(1)):
        b = zero_region_turnout(S, 1)
        assert (b.v_lo, b.v_hi) == (HALF, (2 - S) / (3 - 2 * S))
    b = zero_region_turnout(F(3, 4), 10 ** 6)
    assert b.v_lo < F(1, 10 ** 5) and b.v_hi > 1 - F(1, 10 ** 5)
    with pytest.raises(DomainError):
        zero_region_turnout(F(1, 3), 2)


def test_turnout_half_row_is_swap_symmetric():
    for C in (1, 3, 4):
        w = F(1, 2 * (C + 1))
        assert zero_region_turnout_contains(w, HALF, C) and zero_region_turnout_contains(1 - w, HALF, C)
        assert not zero_region_turnout_contains(w - F(1, 1000), HALF, C)


def test_turnout_c1_equals_equal_turnout_region():
    for j in range(101):
        for k in range(51, 101):
            V, S = F(j, 100), F(k, 100)
            if 2 * V - 1 <= S <= 2 * V:
                assert zero_region_turnout_contains(V, S, 1) == zero_region_contains(V, S), (V, S)
    for j in range(101):
        V = F(j, 100)
        assert zero_region_turnout_contains(V, HALF, 1) == zero_region_contains(V, HALF)


# -- rasters --------------------------------------------------------------------------


def test_raster_values():
    r = region_raster("PB", "max", grid=11)
    assert r.value("0.6", "0.9") == F(2, 5)
    assert r.value("0.2", "0.9") is None
    assert region_raster("EG", "zero", grid=5).value("0.75", 1) is True
    assert r.to_csv().splitlines()[0] == "v,s,value,closed_lo,closed_hi"


def test_zero_masks_identical():
    mm = region_raster("MM", "zero", grid=41)
    pb = region_raster("PB", "zero", grid=41)
    assert [c[2] for c in mm.cells] == [c[2] for c in pb.cells]


def test_turnout_masks_grow():
    def mask(C):
        return {(c[0], c[1]) for c in region_raster("MM", "zero", grid=41, C=C).cells if c[2]}

    m1, m4, m100 = mask(1), mask(4), mask(100)
    assert m1 < m4 < m100


def test_dec_raster_is_flagged_approximate():
    r = region_raster("DEC", "zero", grid=21)
    assert r.meta["approximate"] is True
    assert r.meta["dec_n"] == "8" and r.meta["dec_D"] == "40"
    assert r.value(HALF, HALF) is True


def test_raster_rejects_bad_combinations():
    with pytest.raises(Exception):
        region_raster("EG", "max")
    with pytest.raises(DomainError):
        region_raster("XX", "max")
