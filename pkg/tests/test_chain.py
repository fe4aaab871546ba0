from fractions import Fraction

import pytest

from partisan_symmetry.chain import (
    Geography,
    GeographyError,
    Partition,
    balanced_cut,
    check_partition,
    grid_edges,
    is_connected,
    make_rng,
    max_deviation,
    random_plan,
    recom_step,
    short_burst,
    synth_geography,
)
from partisan_symmetry.chain.shortburst import plan_record
from partisan_symmetry.election import DomainError
from partisan_symmetry.metrics import mean_median, partisan_bias

F = Fraction


def test_uniform_even_lean_is_near_half():
    g = synth_geography("uniform", 10, 10, seed=3)
    assert F(45, 100) <= g.vote_share() <= F(55, 100)


def test_unanimous_lean():
    g = synth_geography("gradient", 6, 6, lean=1, seed=1)
    assert all(b == 0 for b in g.b) and g.vote_share() == 1


def test_clustered_has_a_majority_pocket():
    g = synth_geography("clustered", 10, 10, lean=F(35, 100), seed=0)
    assert g.vote_share() < F(1, 2)
    hot = [i for i in range(g.n) if 2 * g.a[i] > g.pop[i]]
    assert hot
    # flood fill the majority nodes and look for a multi-node pocket
    adj = g.neighbors()
    seen, best = set(), 0
    for s in hot:
        if s in seen:
            continue
        stack, size = [s], 0
        seen.add(s)
        while stack:
            u = stack.pop()
            size += 1
            for v in adj[u]:
                if v not in seen and 2 * g.a[v] > g.pop[v]:
                    seen.add(v)
                    stack.append(v)
        best = max(best, size)
    assert best >= 4


def test_unknown_kind():
    with pytest.raises(DomainError):
        synth_geography("spiral", 4, 4)


def test_json_round_trip(tmp_path):
    g = synth_geography("clustered", 5, 6, seed=2)
    path = tmp_path / "g.json"
    g.save(path)
    assert Geography.load(path) == g


def test_disconnected_geography_names_components():
    with pytest.raises(GeographyError, match="2 components"):
        Geography((10, 10, 10, 10), (5, 5, 5, 5), (5, 5, 5, 5), ((0, 1), (2, 3)))


def test_bad_votes_rejected():
    with pytest.raises(GeographyError):
        Geography((10, 10), (8, 1), (5, 1), ((0, 1),))


def test_path_forces_the_middle_cut():
    # four equal nodes on a path: only the middle edge balances two districts
    g = Geography((10,) * 4, (10, 10, 0, 0), (0, 0, 10, 10), ((0, 1), (1, 2), (2, 3)))
    rng = make_rng(0)
    piece = balanced_cut(list(range(4)), g.neighbors(), g.pop, F(20), 40, F(0), rng)
    assert sorted(piece) in ([0, 1], [2, 3])
    p = random_plan(g, 2, 0, rng)
    assert sorted(p.pop) == [20, 20]
    q = recom_step(p, g, rng, deviation=0)
    assert {frozenset(q.members(k)) for k in range(2)} == {frozenset({0, 1}), frozenset({2, 3})}
    assert q.seats("A") == 1 and q.seats("B") == 1


def test_ties_go_to_b():
    g = Geography((10, 10), (5, 5), (5, 5), ((0, 1),))
    p = Partition.from_assignment(g, (0, 1))
    assert p.seats("A") == 0 and p.seats("B") == 2


def test_reassign_matches_rebuild():
    g = synth_geography("uniform", 6, 6, seed=4)
    rng = make_rng(4)
    p = random_plan(g, 4, F(1, 20), rng)
    for _ in range(20):
        p = recom_step(p, g, rng)
        assert p == Partition.from_assignment(g, p.assignment)


def test_thousand_steps_stay_valid():
    g = synth_geography("clustered", 10, 10, seed=5)
    rng = make_rng(5)
    adj = g.neighbors()
    p = random_plan(g, 5, F(1, 20), rng)
    moved = 0
    for _ in range(1000):
        q = recom_step(p, g, rng, F(1, 20), adj)
        moved += q.assignment != p.assignment
        p = q
        assert max_deviation(g, p) <= F(1, 20)
        assert all(is_connected(g, p.members(k), adj) for k in range(5))
    assert check_partition(g, p, F(1, 20)) == []
    assert moved > 500


def test_random_plan_rejects_too_many_districts():
    g = synth_geography("uniform", 2, 2)
    with pytest.raises(DomainError):
        random_plan(g, 5)


# -- short bursts ----------------------------------------------------------------


@pytest.fixture(scope="module")
def clustered():
    return synth_geography("clustered", 10, 10, seed=7)


def test_zero_bursts_keeps_seed_plan(clustered):
    run = short_burst(clustered, 5, B=0, seed=7)
    assert len(run.records) == 1 and run.records[0].burst == -1
    assert run.best_so_far == [run.records[0].seats]


def test_best_so_far_never_drops(clustered):
    run = short_burst(clustered, 5, b=10, B=40, seed=7, check=True)
    assert len(run.records) == 1 + 400
    assert all(x <= y for x, y in zip(run.best_so_far, run.best_so_far[1:]))
    assert max(r.seats for r in run.records) > run.records[0].seats


def test_runs_are_reproducible(clustered):
    a = short_burst(clustered, 5, B=15, seed=11)
    b = short_burst(clustered, 5, B=15, seed=11)
    c = short_burst(clustered, 5, B=15, seed=12)
    assert a.records_csv() == b.records_csv() and a.buckets_csv() == b.buckets_csv()
    assert a.records_csv() != c.records_csv()


def test_bucket_stats_recompute(clustered):
    run = short_burst(clustered, 5, B=20, seed=3)
    for s, stats in run.buckets.items():
        rows = [r for r in run.records if r.seats == s]
        for m in ("MM", "PB", "EG"):
            vals = [getattr(r, m) for r in rows]
            b = stats[m]
            assert b.count == len(vals)
            assert (b.min, b.max) == (min(vals), max(vals))
            assert b.mean == sum(vals, F(0)) / len(vals)


def test_records_match_plan_metrics(clustered):
    rng = make_rng(9)
    p = random_plan(clustered, 5, F(1, 20), rng)
    e = p.election()
    rec = plan_record(p, 0, -1, "A")
    assert rec.MM == mean_median(e) and rec.PB == partisan_bias(e)
    # efficiency gap from wasted votes, positive when A wastes fewer
    wasted_a = wasted_b = 0
    for x, y in zip(p.a, p.b):
        need = F(x + y, 2)
        if x > y:
            wasted_a += x - need
            wasted_b += y
        else:
            wasted_a += x
            wasted_b += y - need
    assert rec.EG == (wasted_b - wasted_a) / (sum(p.a) + sum(p.b))


def test_party_duality(clustered):
    # the chain only looks at population, so swapping votes replays the same plans
    a = short_burst(clustered, 5, party="A", B=10, seed=2)
    b = short_burst(clustered.swapped(), 5, party="B", B=10, seed=2)
    assert [r.seats for r in a.records] == [r.seats for r in b.records]
    for ra, rb in zip(a.records, b.records):
        assert (ra.MM, ra.PB, ra.EG) == (-rb.MM, -rb.PB, -rb.EG)


def test_bad_party():
    g = synth_geography("uniform", 4, 4)
    with pytest.raises(DomainError):
        short_burst(g, 2, party="C")
