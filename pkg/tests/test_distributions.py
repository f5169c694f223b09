import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from winding.distributions import (InvalidBucket, charfun, g_alpha_counts, g_alpha_series, geometric_mix_absorbed,
                                   geometric_mix_dp, secant_law, secant_law_sech, secant_table)
from winding.elliptic import DomainError

ks = st.floats(0.05, 0.95)


def test_secant_values():
    assert abs(secant_law("origin", 0.5, 1) - 0.898906) < 1e-6
    assert abs(secant_law("square", 0.5, 0) - 0.8636168) < 1e-7


@given(ks, st.integers(-12, 12))
def test_symmetry_and_range(k, a):
    if a % 2 == 0:
        p = secant_law("square", k, a)
        assert abs(p - secant_law("square", k, -a)) < 1e-15
    else:
        p = secant_law("origin", k, a)
        assert abs(p - secant_law("origin", k, -a)) < 1e-15
    assert -1e-15 <= p <= 1 + 1e-15


@given(ks, st.integers(-10, 10))
def test_secant_matches_sech(k, a):
    point = "square" if a % 2 == 0 else "origin"
    assert abs(secant_law(point, k, a) - secant_law_sech(point, k, a)) < 1e-12


def test_partitions():
    for k in (0.1, 0.5, 0.9):
        for fam in ("even", "odd"):
            d = secant_table("square", k, fam)
            assert abs(sum(d.buckets.values()) - 1) < 1e-12
        for fam in ("plus", "minus"):
            d = secant_table("origin", k, fam)
            assert abs(sum(d.buckets.values()) + d.absorbed - 1) < 1e-12
    d = secant_table("origin", 0.5)
    assert abs(sum(d.buckets.values()) - 0.931808) < 1e-6


def test_origin_absorbed_vs_dp():
    d = secant_table("origin", 0.5)
    v, err = geometric_mix_absorbed(0.5)
    assert abs(v - d.absorbed) < 1e-9 + err
    assert abs(v - 0.068192) < 1e-6


@pytest.mark.parametrize("k", [0.2, 0.5])
@pytest.mark.parametrize("point,alphas", [("square", (0, 2, 4, -6)), ("origin", (1, -1, 3, 5))])
def test_secant_vs_dp_mix(k, point, alphas):
    for a in alphas:
        v, err = geometric_mix_dp(point, k, a)
        assert abs(v - secant_law(point, k, a)) < 1e-9 + err


def test_invalid_buckets():
    with pytest.raises(InvalidBucket):
        secant_law("square", 0.5, 1)
    with pytest.raises(InvalidBucket):
        secant_law("origin", 0.5, 2)
    with pytest.raises(InvalidBucket):
        geometric_mix_dp("origin", 0.5, 0)
    with pytest.raises(InvalidBucket):
        g_alpha_series(1, 2, 6)
    with pytest.raises(DomainError):
        secant_law("square", 1.0, 0)


@pytest.mark.parametrize("p,a", [(1, 1), (1, 3), (1, -1), (2, 1), (2, 5), (3, 3)])
def test_g_series_vs_dp(p, a):
    order = 10
    ser = g_alpha_series(p, a, order)
    counts = g_alpha_counts(p, a, order)
    assert [int(c) for c in ser.t_coeffs(order)] == counts


@pytest.mark.parametrize("k", [0.3, 0.7])
@pytest.mark.parametrize("b", [0.0, 0.4, 1.0, 1.7])
def test_charfun(k, b):
    for v in ("dn", "cn"):
        r = charfun(v, k, b)
        assert abs(r["imag"]) < 1e-12
        assert abs(r["lattice_sum"] - r["jacobi"]) < 1e-10


def test_cn_at_2K():
    r = charfun("cn", 0.5, 2.0)
    assert abs(r["lattice_sum"] + 1) < 1e-10
    assert abs(r["jacobi"] + 1) < 1e-10
