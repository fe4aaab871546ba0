import json
import math
import statistics
from fractions import Fraction

import pytest
from hypothesis import given

from partisan_symmetry.election import HALF, Election, UnsupportedInputError, seat_share, statewide_vote_share
from partisan_symmetry.metrics import (
    declination,
    efficiency_gap,
    mean_median,
    mm_from_curve,
    partisan_bias,
    pb_from_curve,
    seats_votes_curve,
    sign_consistency,
    wasted_vote_gap,
)

from conftest import FIXTURES, elections

F = Fraction


# -- independent reference implementations ---------------------------------


def ref_mm(shares):
    return statistics.median(shares) - sum(shares, Fraction(0)) / len(shares)


def ref_pb(shares):
    """Shift every share by the same amount until the mean is 1/2 and count seats, ties as half."""
    shift = HALF - sum(shares, Fraction(0)) / len(shares)
    seats = Fraction(0)
    for s in shares:
        t = s + shift
        seats += 1 if t > HALF else HALF if t == HALF else 0
    return seats / len(shares) - HALF


def ref_dec(e):
    won = [float(d.share) for d in e.districts if d.won]
    lost = [float(d.share) for d in e.districts if not d.won]
    n = e.n
    tw = math.atan((sum(won) / len(won) - 0.5) / (len(won) / (2 * n)))
    tl = math.atan((0.5 - sum(lost) / len(lost)) / (len(lost) / (2 * n)))
    return 2 * (tw - tl) / math.pi


# -- worked examples ------------------------------------------------------------


def test_five_district_example():
    e = Election.from_shares(["0.2", "0.3", "0.55", "0.6", "0.65"])
    assert mean_median(e) == Fraction(9, 100)
    assert partisan_bias(e) == Fraction(1, 10)


def test_pb_zero_with_negative_mm_witness():
    e = Election.from_shares(["0.55", "0.6", "0.7", "0.9"])
    assert partisan_bias(e) == 0
    assert mean_median(e) == Fraction(-3, 80)


def test_twenty_district_gap():
    e = Election.from_shares(["0.49"] * 19 + ["0.89"])
    assert mean_median(e) - partisan_bias(e) == Fraction(43, 100)


FIXTURE_NAMES = sorted(p.name[:-5] for p in FIXTURES.glob("*.json") if not p.name.endswith(".expected.json"))


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_expected_values(name):
    e = Election.load(FIXTURES / f"{name}.json")
    expected = json.loads((FIXTURES / f"{name}.expected.json").read_text())
    p = seat_share(e)
    if "V" in expected:
        assert p.V == Fraction(expected["V"])
    if "S" in expected:
        assert p.S == Fraction(expected["S"])
    if "MM" in expected:
        assert mean_median(e) == Fraction(expected["MM"])
    if "PB" in expected:
        assert partisan_bias(e) == Fraction(expected["PB"])
    if "EG" in expected:
        assert efficiency_gap(e) == Fraction(expected["EG"])
    if "MM_approx" in expected:
        tol = Fraction(expected.get("tolerance", "1/200"))
        assert abs(mean_median(e) - Fraction(expected["MM_approx"])) <= tol


# -- properties against the references -------------------------------------------


@given(elections())
def test_mm_matches_reference(e):
    assert mean_median(e) == ref_mm(list(e.shares))


@given(elections())
def test_pb_matches_reference(e):
    assert partisan_bias(e) == ref_pb(list(e.shares))


@given(elections())
def test_swap_negates(e):
    assert mean_median(e.swapped()) == -mean_median(e)
    assert partisan_bias(e.swapped()) == -partisan_bias(e)
    assert efficiency_gap(e.swapped()) == -efficiency_gap(e)


@given(elections())
def test_eg_equals_wasted_votes(e):
    assert efficiency_gap(e) == wasted_vote_gap(e)
    assert efficiency_gap(e) == wasted_vote_gap(e, turnout=1000)


@given(elections())
def test_sign_relationship(e):
    mm, pb = mean_median(e), partisan_bias(e)
    assert not (mm > 0 > pb or mm < 0 < pb)
    at_mean = sum(1 for x in e.shares if x == statewide_vote_share(e))
    if mm == 0 and at_mean <= 1:
        assert pb == 0 and sign_consistency(e)


def test_zero_mm_with_ties_at_mean_can_have_nonzero_pb():
    # mean = median = 12/17, but the two districts sitting on the mean leave 3 above and 2 below
    e = Election.from_shares([0, F(9, 17), F(12, 17), F(12, 17), 1, 1, 1])
    assert mean_median(e) == 0
    assert partisan_bias(e) == F(1, 14)
    assert not sign_consistency(e)


@given(elections())
def test_curve_recovers_definitions(e):
    c = seats_votes_curve(e)
    assert mm_from_curve(c) == mean_median(e)
    assert pb_from_curve(c) == partisan_bias(e)


@given(elections(min_n=2))
def test_curve_is_monotone_and_passes_through_the_election(e):
    c = seats_votes_curve(e)
    grid = [Fraction(k, 97) for k in range(98)]
    values = [c.seats_at(v) for v in grid]
    assert values == sorted(values)
    assert c.left_limit(c.mean) <= seat_share(e).S <= c.right_limit(c.mean)


def test_curve_csv_header():
    c = seats_votes_curve(Election.from_shares(["0.2", "0.3", "0.55", "0.6", "0.65"]))
    lines = c.to_csv().splitlines()
    assert lines[0] == "v,s"
    assert lines[1] == "0,0"


def test_eg_rejects_unequal_turnout():
    e = Election.from_shares(["0.4", "0.7"], weights=["1/3", "2/3"])
    with pytest.raises(UnsupportedInputError):
        efficiency_gap(e)
    with pytest.raises(UnsupportedInputError):
        wasted_vote_gap(e)


def test_eg_closed_form():
    e = Election.from_shares(["0.35", "0.6", "0.6", "0.7"])
    p = seat_share(e)
    assert efficiency_gap(e) == p.S - 2 * p.V + HALF


# -- declination ----------------------------------------------------------------


@given(elections(min_n=2))
def test_declination_matches_float_reference(e):
    d = declination(e)
    won = sum(1 for x in e.districts if x.won)
    if won in (0, e.n):
        assert not d.defined and d.value is None
    else:
        assert d.defined
        assert abs(float(d.value) - ref_dec(e)) < 1e-12


def test_declination_symmetric_is_zero():
    d = declination(Election.from_shares(["0.3", "0.4", "0.6", "0.7"]))
    assert d.defined and d.value == 0


def test_declination_undefined_on_sweep():
    d = declination(Election.from_shares(["0.6", "0.7"]))
    assert not d.defined
    assert math.isnan(float(d))
