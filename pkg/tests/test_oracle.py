import math
from fractions import Fraction

import pytest

import _brute
from winding.angles import INF, WalkQuery
from winding.oracle import (BudgetExceeded, OriginHit, WindingPos, cluster_stats, count_excursions, count_loops,
                            count_walks, crossing_winding, origin_point_histograms, simulate_winding,
                            square_point_histograms, start_pos, winding_step)


def test_winding_step_examples():
    s = winding_step(start_pos(1, 0), (-1, 1))
    assert (s.x, s.y, s.on_grid, s.oct) == (0, 1, True, 2)
    s = winding_step(start_pos(2, 0), (1, 1))
    assert (s.x, s.y, s.on_grid, s.oct) == (3, 1, False, 0)
    with pytest.raises(OriginHit):
        winding_step(start_pos(1, 1), (-1, -1))


def test_winding_step_full_turn():
    s = start_pos(1, 0)
    for d in ((-1, 1), (-1, -1), (1, -1), (1, 1)):
        s = winding_step(s, d)
    assert (s.x, s.y) == (1, 0) and s.theta_over_pi == 2


def test_count_walks_examples():
    assert count_walks(WalkQuery(3, 3, 4, order=10)).as_list(10)[6::2] == [10, 280, 5661]
    assert count_walks(WalkQuery(1, 1, 2, -2, 2, 5)).as_list(5) == [0, 1, 0, 3, 0, 20]
    assert count_walks(WalkQuery(2, 2, 0, -1, 2, 4)).as_list(4)[0] == 1


@pytest.mark.parametrize("cell", [(1, 1, 0, -INF, INF), (2, 4, 2, -1, 3), (3, 1, -2, -2, 6), (2, 2, 4, 0, INF)])
def test_count_walks_vs_brute(cell):
    l, p, a, bm, bp = cell
    want = [_brute.walks(l, p, a, bm, bp, n) for n in range(9)]
    assert count_walks(WalkQuery(l, p, a, bm, bp, 8)).as_list(8) == want


def test_count_excursions_examples():
    assert count_excursions(0, N=4).as_list(4) == [0, 0, 4, 0, 12]
    assert count_excursions(2, N=4).as_list(4)[4] == 4
    g = count_excursions(0, -1, 2, N=8, fixed_first_step=True).as_list(8)
    assert g[2::2] == [1, 2, 11, 85]


def test_count_excursions_vs_brute():
    for a in (0, 2, -2, 4):
        assert count_excursions(a, N=8).as_list(8)[2::2] == [_brute.excursions(a, n) for n in (2, 4, 6, 8)]
    # length 4: 20 first returns, 12 with winding 0
    assert sum(_brute.excursions(a, 4) for a in range(-8, 9, 2)) == 20


def test_count_loops_examples():
    odd = count_loops(1, "odd", 6)
    assert odd.counts[4] == 4 and odd.biased[4] == 1
    assert count_loops(1, "even", 6).counts[4] == 0
    assert count_loops(-1, "odd", 8).counts == count_loops(1, "odd", 8).counts


def test_count_loops_vs_brute():
    both = count_loops(1, "both", 8)
    assert [both.counts[n] for n in (4, 6, 8)] == [_brute.rooted_loops(1, n) for n in (4, 6, 8)]


def test_budget():
    with pytest.raises(BudgetExceeded):
        count_walks(WalkQuery(1, 1, 0, order=25))
    with pytest.raises(BudgetExceeded):
        count_loops(1, "odd", 22)
    with pytest.raises(BudgetExceeded):
        cluster_stats(5)


def test_crossing_winding_matches_lift():
    # around the unit diamond twice, counter-clockwise
    path = [(1, 0), (0, 1), (-1, 0), (0, -1)] * 2 + [(1, 0)]
    assert crossing_winding(path) == 2
    s = start_pos(1, 0)
    for a, b in zip(path, path[1:]):
        s = winding_step(s, (b[0] - a[0], b[1] - a[1]))
    assert s.h == 16 * crossing_winding(path)


def test_histogram_closure():
    sq = square_point_histograms(6)
    assert [sum(h.values()) for h in sq] == [4 ** (j + 1) for j in range(7)]
    hists, absorbed = origin_point_histograms(6)
    assert [sum(h.values()) + a for h, a in zip(hists, absorbed)] == [4**j for j in range(7)]


def test_cluster_examples():
    assert cluster_stats(1).area.get(1, 0) == 0
    cs = cluster_stats(2)
    assert cs.walks == 36
    assert cs.area[1] == Fraction(1, 9)
    assert cs.area.get(2, 0) == 0
    assert cs.identity_ok


def test_cluster_identity_l3():
    assert cluster_stats(3).identity_ok


def test_simulate_deterministic():
    a = simulate_winding("square", 5000, 42, k=0.5)
    b = simulate_winding("square", 5000, 42, k=0.5)
    assert a.buckets == b.buckets


def test_simulate_half_step():
    d = simulate_winding("square", 2000, 1, j=0)
    assert d.buckets == {0: 1.0}


def test_simulate_bucket_zero_within_4_sigma():
    from winding.distributions import secant_law

    d = simulate_winding("square", 10**6, 2024, k=0.5)
    p = secant_law("square", 0.5, 0)
    assert abs(d.buckets[0] - p) < 4 * math.sqrt(p * (1 - p) / 10**6)
