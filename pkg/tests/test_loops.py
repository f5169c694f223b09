from fractions import Fraction

import pytest

import _brute
from winding.angles import InvalidQuery
from winding.loops import LoopQuery, cluster_asymptotics_diag, cluster_expectation, loop_gf, loop_identity
from winding.oracle import cluster_stats, count_loops


def test_small_loop_counts():
    c = count_loops(1, "odd", 8)
    assert c.counts[4] == 4 and c.counts[6] == 96
    assert c.biased[4] == 1 and c.biased[6] == 16


@pytest.mark.parametrize("n", [1, -1, 2])
@pytest.mark.parametrize("parity", ["odd", "even", "both"])
def test_loop_gf_vs_dp(n, parity):
    order = 12
    ser = loop_gf(LoopQuery(n, parity, order))
    dp = count_loops(n, parity, order)
    assert ser.t_coeffs(order)[1:] == [dp.biased[j] for j in range(1, order + 1)]


def test_loop_counts_vs_brute():
    dp = count_loops(1, "both", 8)
    for j in (4, 6, 8):
        assert dp.counts[j] == _brute.rooted_loops(1, j)
    assert count_loops(-1, "both", 6).counts[6] == _brute.rooted_loops(-1, 6)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_even_odd_identity(n):
    assert loop_identity(n, 20)


def test_loop_query_validation():
    with pytest.raises(InvalidQuery):
        LoopQuery(0)
    with pytest.raises(InvalidQuery):
        LoopQuery(1, "mixed")


@pytest.mark.parametrize("l", [1, 2, 3])
def test_clusters_vs_enumeration(l):
    st = cluster_stats(l)
    assert st.identity_ok
    for n in (1, 2, -1):
        assert cluster_expectation(n, l, "area") == st.area.get(n, Fraction(0))
        assert cluster_expectation(n, l, "boundary") == st.boundary_minus_2.get(n, Fraction(0))


def test_clusters_l4():
    st = cluster_stats(4)
    assert st.identity_ok
    for n in (1, 2):
        assert cluster_expectation(n, 4, "area") == st.area.get(n, Fraction(0))
        assert cluster_expectation(n, 4, "boundary") == st.boundary_minus_2.get(n, Fraction(0))


def test_cluster_values():
    assert cluster_expectation(1, 2, "area") == Fraction(1, 9)
    assert cluster_expectation(1, 2, "boundary") == Fraction(2, 9)
    with pytest.raises(InvalidQuery):
        cluster_expectation(1, 2, "volume")
    with pytest.raises(InvalidQuery):
        cluster_expectation(0, 2, "area")


def test_cluster_diag_runs():
    rows = cluster_asymptotics_diag(1, 60)
    assert [r["l"] for r in rows] == [15, 30, 60]
    assert all(r["area"] > 0 and r["boundary"] > 0 for r in rows)
    with pytest.raises(InvalidQuery):
        cluster_asymptotics_diag(1, 500)
