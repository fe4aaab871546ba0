import itertools
import math
from fractions import Fraction

import pytest

from partisan_symmetry.bounds import pb_range_fixed
from partisan_symmetry.election import HALF
from partisan_symmetry.metrics import mean_median, partisan_bias
from partisan_symmetry.election import seat_share
from partisan_symmetry.oracle import (
    BudgetExceeded,
    LatticeSpec,
    compare_zero_mask,
    declination_zero_cells,
    enumerate_extremes,
    probe,
    resolve_ambiguities,
    verify_bounds,
    zero_achievability_scan,
)
from partisan_symmetry.oracle import verify as verify_mod
from partisan_symmetry.oracle.backend import get_scan

F = Fraction


def tuple_extremes(n, D):
    """Ordered-tuple enumeration with plain formulas (independent of the kernels)."""
    out = {}
    for xs in itertools.product(range(D + 1), repeat=n):
        s = sorted(xs)
        total = sum(s)
        mid = (s[(n - 1) // 2] + s[n // 2])
        mm = F(mid, 2 * D) - F(total, n * D)
        pb = F(sum(1 for x in s if x * n > total) - sum(1 for x in s if x * n < total), 2 * n)
        gt = sum(1 for x in s if 2 * x > D)
        ties = sum(1 for x in s if 2 * x == D)
        for u in range(ties + 1):
            key = (F(total, n * D), F(gt + u, n))
            cur = out.setdefault(key, [mm, mm, pb, pb])
            cur[0], cur[1] = min(cur[0], mm), max(cur[1], mm)
            cur[2], cur[3] = min(cur[2], pb), max(cur[3], pb)
    return out


def as_dict(table):
    return {k: [c.min_mm, c.max_mm, c.min_pb, c.max_pb] for k, c in table.cells.items()}


def test_multisets_match_tuples():
    assert as_dict(enumerate_extremes(LatticeSpec(3, 6))) == tuple_extremes(3, 6)
    assert as_dict(enumerate_extremes(LatticeSpec(4, 4))) == tuple_extremes(4, 4)


def compiled_available():
    try:
        get_scan("cython")
        return True
    except ImportError:
        return False


@pytest.mark.skipif(not compiled_available(), reason="compiled kernel not built")
def test_backends_agree():
    for n, D in ((3, 9), (4, 8), (5, 6)):
        a = enumerate_extremes(LatticeSpec(n, D), backend="python")
        b = enumerate_extremes(LatticeSpec(n, D), backend="cython")
        assert {k: vars(c) for k, c in a.cells.items()} == {k: vars(c) for k, c in b.cells.items()}
        assert a.visited == b.visited == LatticeSpec(n, D).size


def test_parallel_is_deterministic():
    a = enumerate_extremes(LatticeSpec(4, 10), jobs=1)
    b = enumerate_extremes(LatticeSpec(4, 10), jobs=3)
    assert a.to_csv() == b.to_csv()
    assert a.witnesses_json() == b.witnesses_json()


def test_budget_refusal():
    with pytest.raises(BudgetExceeded) as exc:
        enumerate_extremes(LatticeSpec(10, 100), budget=10 ** 6)
    assert exc.value.required == math.comb(110, 10)


def test_witnesses_realize_recorded_values():
    t = enumerate_extremes(LatticeSpec(4, 8))
    for c in t:
        for kind, value in (("min_mm", c.min_mm), ("max_mm", c.max_mm), ("min_pb", c.min_pb), ("max_pb", c.max_pb)):
            e = c.witnesses[kind]
            p = seat_share(e)
            assert (p.V, p.S) == (c.V, c.S)
            got = mean_median(e) if kind.endswith("mm") else partisan_bias(e)
            assert got == value


def test_csv_layout():
    lines = enumerate_extremes(LatticeSpec(3, 4)).to_csv().splitlines()
    assert lines[0].startswith("v_num,v_den,s_num,s_den,min_mm,max_mm,min_pb,max_pb,count")


@pytest.mark.parametrize("n, D", [(4, 12), (5, 10), (3, 16)])
def test_structured_probe_matches_enumeration(n, D):
    t = enumerate_extremes(LatticeSpec(n, D), witnesses=False)
    for c in t:
        r = probe(c.V, c.S, n, D)
        assert (r.min_mm, r.max_mm, r.min_pb, r.max_pb) == (c.min_mm, c.max_mm, c.min_pb, c.max_pb)
        assert r.mm_zero == c.mm_zero and r.pb_zero == c.pb_zero
        for kind, e in r.witnesses.items():
            got = mean_median(e) if kind.endswith("mm") else partisan_bias(e)
            assert got == getattr(r, kind)


def test_pb_extremes_are_lattice_tight_at_n10():
    r = probe(F(3, 5), F(9, 10), 10, 100, witnesses=False)
    assert (r.min_pb, r.max_pb) == (F(-2, 5), F(2, 5))


# -- verification -------------------------------------------------------------------


def test_verify_small_suite_passes():
    for n, D in ((3, 10), (4, 8)):
        rep = verify_bounds(enumerate_extremes(LatticeSpec(n, D)))
        assert rep.passed, rep.to_text()
        assert rep.violations == 0 and rep.unexplained_gaps == 0


def test_corrupted_bound_is_caught(monkeypatch):
    def shrunk(p):
        iv = pb_range_fixed(p)
        return type(iv)(iv.lo, iv.hi - F(1, 2 * p.n), iv.lo_closed, iv.hi_closed) if iv.hi > iv.lo else iv

    monkeypatch.setattr(verify_mod, "pb_range_fixed", shrunk)
    rep = verify_bounds(enumerate_extremes(LatticeSpec(3, 6)))
    assert not rep.passed and rep.violations > 0
    assert "violation" in rep.to_text()


def test_ambiguities_resolved():
    res = resolve_ambiguities(D_brute=12, D_probe=40)
    for n in (3, 5):
        assert res["odd_upper_bound"][n]["supported"] == ["statement"]
    for n in (4, 6):
        info = res["half_boundary"][n]
        assert info["identical"]
        lo, hi = (F(x) for x in info["lattice"])
        assert F(info["le_rows"][0]) <= lo and hi <= F(info["le_rows"][1])
    assert res["half_boundary"][4]["le_matches"]


# -- zero scans -------------------------------------------------------------------------


def test_zero_scan_equal_turnout():
    mask = zero_achievability_scan(LatticeSpec(6, 12))
    assert mask.both <= mask.mm and mask.both <= mask.pb
    assert not [k for k in mask.both if k[0] < HALF - F(1, 12) and k[1] > HALF]
    # the S = 1/2 row reaches down to V = 1/4 by party symmetry
    assert min(V for V, S in mask.both if S == HALF) == F(1, 4)
    cmp = compare_zero_mask(mask)
    assert cmp == {"outside": [], "missing": []}


def test_constant_elections_are_zero():
    mask = zero_achievability_scan(LatticeSpec(4, 6))
    for k in range(7):
        V = F(k, 6)
        S = F(1) if V > HALF else F(0)
        assert (V, S) in mask.both
    assert (HALF, HALF) in mask.both


@pytest.mark.parametrize("C", [1, 3])
def test_zero_scan_turnout(C):
    mask = zero_achievability_scan(LatticeSpec(4, 8), (C, None))
    assert compare_zero_mask(mask) == {"outside": [], "missing": []}
    row = [V for V, S in mask.both if S == HALF]
    assert min(row) == F(1, 2 * (C + 1))


def test_turnout_scan_budget():
    with pytest.raises(BudgetExceeded):
        zero_achievability_scan(LatticeSpec(8, 40), (2, None), budget=10 ** 6)


def test_declination_cells_match_brute_force():
    n, D, tol = 4, 8, 0.05
    pred = declination_zero_cells(n, D, tol, v_tol=F(1, 10 ** 6))
    hits = set()
    for xs in itertools.combinations_with_replacement(range(D + 1), n):
        ties = sum(1 for x in xs if 2 * x == D)
        gt = sum(1 for x in xs if 2 * x > D)
        for u in range(ties + 1):
            w = gt + u
            if w in (0, n):
                continue
            order = sorted(xs)
            lost, won = order[: n - w], order[n - w:]
            yw, yl = sum(won) / (w * D), sum(lost) / ((n - w) * D)
            dec = 2 / math.pi * (math.atan((yw - 0.5) / (w / (2 * n))) - math.atan((0.5 - yl) / ((n - w) / (2 * n))))
            if abs(dec) <= tol:
                hits.add((sum(xs), w))
    for s in range(n * D + 1):
        for w in range(n + 1):
            assert pred(F(s, n * D), F(w, n)) == ((s, w) in hits), (s, w)


def test_fixed_n_zero_sets_can_differ():
    # with ten districts PB = 0 is reachable here but every election has MM < 0
    V, S = F(17, 200), F(1, 10)
    r = probe(V, S, 10, 2000)
    assert r.pb_zero and not r.mm_zero
    assert partisan_bias(r.witnesses["max_pb"]) == 0
    assert r.max_mm == F(-3, 200)
