import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

import _brute
from winding.angles import INF, InvalidQuery
from winding.excursions import (ExcursionQuery, IntegerB, F_near_quarter, F_resummed, asymptotics_diagnostic,
                                char_k_coefficients, char_theta_form, char_zeta_form, cone_F, cone_F_fourier,
                                cone_F_ints, digamma, excursion_char_exact, excursion_char_float,
                                excursion_F_alpha, excursion_F_ints, fourier_combination, gessel_check,
                                gessel_residual, hypergeometric_gessel, return_angle_prob, return_angle_tail)
from winding.oracle import count_excursions

# Gessel walks of length 2n, n = 0..9 (quadrant walks with E, W, NE, SW steps)
GESSEL = [1, 2, 11, 85, 782, 8004, 88044, 1020162, 12294260, 152787976]


def gessel_quadrant(n2):
    # independent count: E, W, NE, SW walks in the quarter plane returning to 0
    from functools import lru_cache

    steps = ((1, 0), (-1, 0), (1, 1), (-1, -1))

    @lru_cache(maxsize=None)
    def f(x, y, left):
        if x < 0 or y < 0 or x + y > 2 * left:
            return 0
        if left == 0:
            return int(x == 0 and y == 0)
        return sum(f(x + dx, y + dy, left - 1) for dx, dy in steps)

    return f(0, 0, n2)


def test_gessel_quadrant_reference():
    assert [gessel_quadrant(2 * n) for n in range(8)] == GESSEL[:8]


def test_F_alpha_examples():
    assert excursion_F_ints(0, 4) == [0, 0, 4, 0, 12]
    assert excursion_F_ints(2, 4)[4] == 4
    first_return = [0] * 7
    for a in range(-12, 13, 2):
        for i, c in enumerate(excursion_F_ints(a, 6)):
            first_return[i] += c
    assert first_return[:5] == [0, 0, 4, 0, 20]


@pytest.mark.parametrize("a", [0, 2, -2, 4, 6, 8, -8])
def test_F_routes_agree(a):
    assert excursion_F_alpha(a, 14, "closed").agrees(excursion_F_alpha(a, 14, "alternating"), 28)
    excursion_F_alpha(a, 10, "both")


def test_F_vs_brute():
    for a in (0, 2, 4):
        assert excursion_F_ints(a, 8)[2::2] == [_brute.excursions(a, n) for n in (2, 4, 6, 8)]


def test_char_exact_examples():
    assert [int(c) for c in excursion_char_exact(0, 4).t_coeffs(4)] == [0, 0, 4, 0, 20]
    assert [int(c) for c in excursion_char_exact(1, 4).t_coeffs(4)] == [0, 0, 4, 0, 12]
    assert [int(c) for c in excursion_char_exact(2, 4).t_coeffs(4)] == [0, 0, 4, 0, 4]
    assert excursion_char_exact(3, 10) == excursion_char_exact(1, 10)
    with pytest.raises(InvalidQuery):
        excursion_char_exact(Fraction(1, 2), 4)


def test_fourier_consistency():
    counts = {a: count_excursions(a, N=12).as_list(12) for a in range(-12, 13, 2)}
    for b in (0, 1, 2):
        assert fourier_combination(b, counts, 12) == list(excursion_char_exact(b, 12).t_coeffs(12))


def test_char_float_gessel_point():
    g = cone_F(ExcursionQuery(0, -1, 2, 60))
    assert abs(excursion_char_float(0.1, 4 / 3) - 4 * g.evaluate_k(0.4)) < 1e-9


def test_char_float_forms_and_symmetry():
    assert abs(excursion_char_float(0.05, 2.5) - excursion_char_float(0.05, 1.5)) < 1e-14
    assert excursion_char_float(0.0, 0.5) == 0.0
    assert abs(excursion_char_float(1e-4, 0.5)) < 1e-6
    with pytest.raises(IntegerB):
        excursion_char_float(0.1, 2)


@given(st.floats(0.01, 0.24), st.floats(0.05, 1.95).filter(lambda b: abs(b - 1) > 1e-3))
def test_theta_zeta_forms_agree(t, b):
    x, y = char_theta_form(t, b), char_zeta_form(t, b)
    assert abs(x - y) < 1e-10
    assert abs(excursion_char_float(t, b + 4) - excursion_char_float(t, b)) < 1e-12
    assert abs(excursion_char_float(t, 4 - b) - excursion_char_float(t, b)) < 1e-12


def test_float_coefficients_vs_exact():
    for b in (0, 1, 2):
        exact = excursion_char_exact(b, 20)
        ck = char_k_coefficients(float(b), 20)
        for j in range(0, 21, 2):
            assert abs(ck[j] - float(exact.k_coeff(j))) < 1e-12 * max(1.0, abs(float(exact.k_coeff(j))))


def test_cone_examples():
    assert cone_F_ints(ExcursionQuery(0, -1, 2, 16))[2::2] == GESSEL[:8]
    for a, bm, bp in ((0, -2, 2), (2, 0, 4), (2, -2, 4), (0, -4, 6)):
        q = ExcursionQuery(a, bm, bp, 12)
        assert cone_F_ints(q) == count_excursions(a, bm, bp, N=12, fixed_first_step=True).as_list(12)


def test_cone_huge_interval():
    q = ExcursionQuery(2, -40, 40, 12)
    assert cone_F(q).agrees(excursion_F_alpha(2, 12).scale(Fraction(1, 4)), 24)


def test_cone_degenerate_boundary():
    # theta_0 = 0 on the boundary of (0, pi): nothing is counted
    assert cone_F(ExcursionQuery(2, 0, 4, 10)).is_zero()


def test_cone_fourier_float():
    for a, bm, bp in ((0, -1, 2), (0, -2, 2), (2, -1, 3)):
        q = ExcursionQuery(a, bm, bp, 12)
        ser = cone_F(ExcursionQuery(a, bm, bp, 80)).evaluate_k(0.6)
        assert abs(cone_F_fourier(0.15, q) - ser) < 1e-9


def test_cone_validation():
    with pytest.raises(InvalidQuery):
        ExcursionQuery(1)
    with pytest.raises(InvalidQuery):
        ExcursionQuery(0, 1, 4)
    with pytest.raises(InvalidQuery):
        ExcursionQuery(6, -2, 2)
    with pytest.raises(InvalidQuery):
        cone_F_fourier(0.1, ExcursionQuery(0, -2, INF))


def test_cone_counts_nonnegative():
    assert all(c >= 0 for c in cone_F_ints(ExcursionQuery(0, -1, 2, 20)))


def test_gessel_check():
    r = gessel_check(20, 40)
    assert r.ok and r.first_mismatch is None and r.residual_zero
    assert r.coefficients[2::2] == GESSEL[:10]
    assert [hypergeometric_gessel(n) for n in range(10)] == GESSEL
    assert hypergeometric_gessel(2) == 11


def test_gessel_residual_detects_error():
    g = cone_F(ExcursionQuery(0, -1, 2, 20))
    y = g.scale(2) + g.one(g.order)
    bumped = y + y.monomial(12, 1, y.order)
    assert gessel_residual(y).is_zero()
    assert not gessel_residual(bumped).is_zero()


def test_digamma_vs_mpmath():
    for x in (0.25, 0.5, 0.75, 1.0, 3.3, 17.0):
        assert abs(digamma(x) - float(mpmath.digamma(x))) < 1e-12


def test_return_angle_values():
    assert abs(return_angle_prob(0) - 2 * math.log(2) / math.pi) < 1e-12
    assert abs(return_angle_prob(1) - (1 - 4 * math.log(2) / math.pi)) < 1e-12
    assert return_angle_prob(-1) == return_angle_prob(1)
    assert abs(return_angle_prob(2) - 0.050574056180747166) < 1e-14


def test_return_angle_tail_exact():
    body = sum(return_angle_prob(m) for m in range(-200, 201))
    assert abs(body + return_angle_tail(200) - 1) < 1e-12
    brute = 2 * sum(return_angle_prob(m) for m in range(201, 200001))
    assert abs(return_angle_tail(200) - brute) < 1e-5


def test_resummed_vs_series():
    for m in (0, 1, 2):
        s = excursion_F_alpha(2 * m, 60)
        assert abs(F_resummed(m, 0.3) - s.evaluate_k(0.3)) < 1e-12


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_near_quarter_extrapolation(m):
    assert abs(F_near_quarter(m) - return_angle_prob(m)) < 1e-5


def test_asymptotics_diagnostic_runs():
    rows = asymptotics_diagnostic(1.0, 200)
    assert [r["l"] for r in rows] == [25, 50, 100, 200]
    assert abs(rows[-1]["ratio"] - 1) < 0.05
    with pytest.raises(InvalidQuery):
        asymptotics_diagnostic(1.0, 401)
