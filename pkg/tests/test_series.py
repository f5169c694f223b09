from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from winding.series import (BadValuation, NonpositiveInnerValuation, NonSquareLeading, OddValuation,
                            SqrtKSeries, ZeroLeadingCoefficient, k_series, t_series_from_ints)

S = SqrtKSeries
ORDER = 12


def s_(e, c=1, order=ORDER):
    return S.monomial(e, c, order)


def geometric(x: S, order: int) -> S:
    # 1 + x + x^2 + ... through order, x of valuation >= 1
    out = S.one(order)
    p = S.one(order)
    for _ in range(order):
        p = (p * x).truncate(order)
        out = out + p
    return out


coeff = st.integers(-5, 5).map(Fraction)
small = st.lists(coeff, min_size=1, max_size=9).map(lambda c: S.from_dense(c, ORDER))


def unit(c):
    # nonzero constant term
    return S.from_dense([Fraction(c[0] or 1)] + c[1:], ORDER)


units = st.lists(coeff, min_size=1, max_size=9).map(unit)


# examples

def test_add_examples():
    assert (S.one(ORDER) + s_(2)) + s_(2) == S.one(ORDER) + s_(2, 2)
    f = S.one(ORDER) + s_(3, Fraction(-2, 3))
    assert S.zero(ORDER) + f == f
    z = s_(-2) + s_(-2, -1)
    assert z.is_zero() and z.order == ORDER


def test_mul_examples():
    one = S.one(ORDER)
    assert (one + s_(1)) * (one - s_(1)) == one - s_(2)
    assert (s_(-1) * s_(1)) == S.one(ORDER - 1)
    assert (geometric(s_(1), ORDER) * (one - s_(1))).agrees(one)


def test_mul_valuation_and_order():
    a = s_(-2) + s_(0, 3)
    b = s_(3) + s_(5)
    c = a * b
    assert c.valuation == 1
    assert c.order == min(a.order + b.valuation, b.order + a.valuation)


def test_invert_examples():
    one = S.one(ORDER)
    k = s_(2)
    assert (one - k).invert().agrees(geometric(k, ORDER))
    assert s_(1).invert() == s_(-1, 1, ORDER - 2)
    inv = (S.one(ORDER).scale(2) + k).invert()
    assert inv.k_coeffs(3) == [Fraction(1, 2), Fraction(-1, 4), Fraction(1, 8), Fraction(-1, 16)]
    with pytest.raises(ZeroLeadingCoefficient):
        S.zero(ORDER).invert()


def test_sqrt_examples():
    one = S.one(ORDER)
    r = (one - s_(4)).sqrt()  # sqrt(1 - k^2)
    assert r.k_coeffs(4) == [1, 0, Fraction(-1, 2), 0, Fraction(-1, 8)]
    assert s_(2).sqrt() == s_(1, 1, ORDER - 1)
    assert one.sqrt() == one
    with pytest.raises(OddValuation):
        s_(1).sqrt()
    with pytest.raises(NonSquareLeading):
        (one.scale(2)).sqrt()


def test_compose_examples():
    N = 10
    z = S.monomial(1, 1, N)
    geo = geometric(z, N)
    assert geo.compose(s_(2, 1, N)).agrees(geometric(s_(2, 1, N), N), N)
    assert S.monomial(2, 1, N).compose(z) == S.monomial(2, 1, N)
    # cos(z) composed with k
    cos = S.from_dense([1, 0, Fraction(-1, 2), 0, Fraction(1, 24), 0, Fraction(-1, 720)], 6)
    got = cos.compose(s_(2, 1, N))
    assert got.k_coeffs(4) == [1, 0, Fraction(-1, 2), 0, Fraction(1, 24)]
    with pytest.raises(NonpositiveInnerValuation):
        geo.compose(S.one(N))


def test_revert_examples():
    N = 10
    z = S.monomial(1, 1, N)
    assert z.revert() == z
    r = (z + S.monomial(2, 1, N)).revert()
    # Catalan numbers with alternating signs
    assert [r[e] for e in range(1, 6)] == [1, -1, 2, -5, 14]
    assert z.scale(2).revert() == z.scale(Fraction(1, 2))
    with pytest.raises(BadValuation):
        S.monomial(2, 1, N).revert()


def test_k_and_t_helpers():
    assert k_series(5) == s_(2, 1, 10)
    t = t_series_from_ints([0, 1, 0, 3], 3)
    assert t.t_coeffs(3) == [0, 1, 0, 3]
    assert t.is_k_series()
    assert not (t + s_(1)).is_k_series()
    assert not s_(-2).is_k_series()


def test_json_shape_and_roundtrip():
    f = s_(-2, Fraction(-7, 3)) + s_(4, 10**30)
    d = f.to_json()
    assert d["var"] == "s" and d["valuation"] == -2 and d["order"] == ORDER
    assert d["coeffs"][0] == ["-7", "3"]
    assert S.from_json(d) == f


def test_order_never_extended():
    f = S.one(4)
    with pytest.raises(Exception):
        f.truncate(5)


# properties

@given(small, small, small)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b).order == min(a.order, b.order)


@given(units)
def test_invert_roundtrip(a):
    assert (a * a.invert()).agrees(S.one(ORDER), ORDER)


@given(st.lists(coeff, min_size=0, max_size=8), st.integers(1, 4))
def test_sqrt_roundtrip(tail, lead):
    a = S.one(ORDER).scale(lead * lead) + S(1, tail, ORDER)
    r = a.sqrt()
    assert (r * r).agrees(a, ORDER)


@given(st.integers(1, 5).map(Fraction) | st.integers(-5, -1).map(Fraction), st.lists(coeff, max_size=8))
def test_revert_roundtrip(lead, tail):
    a = S(1, [lead] + tail, ORDER)
    ident = S.monomial(1, 1, ORDER)
    assert a.compose(a.revert()).agrees(ident, ORDER)
    assert a.revert().compose(a).agrees(ident, ORDER)


def _kser(c):
    return S.from_k(c, ORDER // 2)


kser = st.lists(coeff, min_size=1, max_size=6).map(_kser)


@given(kser, kser)
def test_k_series_closed(a, b):
    assert a.is_k_series() and b.is_k_series()
    assert (a + b).is_k_series()
    assert (a * b).is_k_series()
    if a[0] != 0:
        assert a.invert().is_k_series()
    sq = S.one(ORDER) + a.shift(2).truncate(ORDER)
    assert sq.sqrt().is_k_series()
    inner = S.from_k([0] + [b[2 * i] for i in range(ORDER // 2)], ORDER // 2)
    if not inner.is_zero():
        assert a.compose(inner).is_k_series()


@given(small)
def test_json_roundtrip_property(a):
    assert S.from_json(a.to_json()) == a
