"""Excursions from the origin, by winding angle.

F^(a) counts excursions (no intermediate return) of winding a pi/4, a
even; F(t,b) = sum_a F^(a) e^{i b a pi/4}.  cone_F restricts the whole
winding sequence to an interval and fixes the first step.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .angles import INF, Angle, InvalidQuery, WalkQuery, is_finite
from .blocks import assemble_W_ints
from .elliptic import agm_eval, ellipe, ellipk, jacobi_sn_cn_dn, jacobi_zeta, theta1, theta1_dz
from .series import SqrtKSeries, t_series_from_ints
from .spectral import _pack


class IntegerB(ValueError):
    """Integer b: use the exact special values."""


class FormDisagreement(ArithmeticError):
    pass


# F^(alpha), closed form: (2 pi/K) sum (1-q^n)^2/(1-q^4n) q^{n(2|alpha|/pi + 1)}

@lru_cache(maxsize=None)
def _F_closed(a: int, order: int) -> SqrtKSeries:
    target = 2 * order
    pack = _pack(target + 8)
    one = SqrtKSeries.one(pack.order)
    acc = SqrtKSeries.zero(target)
    n = 1
    while n * (2 * a + 4) <= target:
        x = pack.q_power(4 * n)
        num = (one - x) * (one - x)
        den = (one - x ** 4).invert()
        acc = acc + (num * den * pack.q_power(n * (2 * a + 4))).truncate(target)
        n += 1
    # 2 pi / K = 4 / (2K/pi)
    return (acc * pack.twoK_over_pi.invert()).scale(4).truncate(target)


@lru_cache(maxsize=None)
def _F_alternating(a: int, order: int) -> tuple:
    # 4 sum_{l,p,m >= 1} (-1)^{l+p+m+1} m W^{(|a| + 2m)}_{2l,2p}
    acc = [0] * (order + 1)
    for l in range(1, order // 2 + 1):
        for p in range(1, order // 2 + 1):
            m = 1
            while (a + 2 * m) // 2 <= order:
                c = assemble_W_ints(WalkQuery(2 * l, 2 * p, a + 2 * m, order=order))
                sign = (-1) ** (l + p + m + 1) * 4 * m
                for i, x in enumerate(c):
                    if x:
                        acc[i] += sign * x
                m += 1
    return tuple(acc)


def excursion_F_alpha(alpha: int, order: int, route: str = "closed") -> SqrtKSeries:
    """F^(alpha) through t^order.  route: closed, alternating or both (checked)."""
    if alpha % 2:
        raise InvalidQuery("excursions end at multiples of pi/2 (even alpha)")
    a = abs(alpha)
    if route == "closed":
        return _F_closed(a, order)
    if route == "alternating":
        return t_series_from_ints(list(_F_alternating(a, order)), order)
    if route == "both":
        x, y = _F_closed(a, order), excursion_F_alpha(alpha, order, "alternating")
        if not x.agrees(y, 2 * order):
            raise FormDisagreement(f"F^({alpha}) routes disagree")
        return x
    raise InvalidQuery(f"unknown route {route!r}")


def excursion_F_ints(alpha: int, order: int) -> list[int]:
    return [int(c) for c in excursion_F_alpha(alpha, order).t_coeffs(order)]


# exact special values of F(t, b)

def excursion_char_exact(b: int, order: int) -> SqrtKSeries:
    """F(t,b) for integer b (period 4, even), through t^order."""
    if int(b) != b:
        raise InvalidQuery("exact characteristic function needs integer b")
    r = int(b) % 4
    r = min(r, 4 - r)
    pack = _pack(2 * order + 8)
    one = SqrtKSeries.one(pack.order)
    K, E = pack.twoK_over_pi, pack.twoE_over_pi
    if r == 0:
        out = one - K.invert()
    elif r == 1:
        out = one - E
    else:
        k2 = SqrtKSeries.monomial(4, 1, pack.order)
        out = E.scale(2) - one - (one - k2) * K
    return out.truncate(2 * order)


def fourier_combination(b: int, counts: dict, order: int) -> list:
    """sum_alpha F^(alpha) cos(b alpha) for integer b from per-alpha integer
    coefficient lists (e.g. DP counts); exact since cos(b m pi/2) is 0, +-1."""
    out = [0] * (order + 1)
    for a, c in counts.items():
        w = round(math.cos(b * a * math.pi / 4))
        for i in range(order + 1):
            out[i] += w * c[i]
    return out


# float evaluation for real b

def _check_t(t: float) -> float:
    k = 4.0 * t
    if not (0.0 < k < 1.0):
        raise InvalidQuery("need 0 < 4t < 1")
    return k


def char_theta_form(t: float, b: float) -> float:
    k = _check_t(t)
    ev = agm_eval(k)
    z = math.pi * b / 4.0
    sq = math.sqrt(ev.q)
    ratio = theta1_dz(z, sq) / theta1(z, sq)
    return (1.0 - math.pi * math.tan(z) / (2.0 * ev.K) * ratio) / math.cos(math.pi * b / 2.0)


def char_zeta_form(t: float, b: float) -> float:
    k = _check_t(t)
    K = ellipk(k)
    u = K * b / 2.0
    sn, cn, dn = jacobi_sn_cn_dn(u, k)
    z = math.pi * b / 4.0
    return (1.0 - math.tan(z) * (2.0 * jacobi_zeta(u, k) + cn * dn / sn)) / math.cos(math.pi * b / 2.0)


def char_special_float(t: float, b: int) -> float:
    k = _check_t(t)
    r = int(b) % 4
    r = min(r, 4 - r)
    K, E = ellipk(k), ellipe(k)
    if r == 0:
        return 1.0 - math.pi / (2.0 * K)
    if r == 1:
        return 1.0 - 2.0 * E / math.pi
    return -1.0 + 4.0 * E / math.pi - (1.0 - k * k) * 2.0 * K / math.pi


def _fold_b(b: float) -> float:
    # F(t,b) = F(t,b+4) = F(t,-b): fold to [0, 2]
    r = math.fmod(b, 4.0)
    if r < 0:
        r += 4.0
    return 4.0 - r if r > 2.0 else r


def excursion_char_float(t: float, b: float, tol: float = 1e-10) -> float:
    """F(t,b) for non-integer b; theta and Zeta forms must agree to tol."""
    if float(b).is_integer():
        raise IntegerB(f"b={b} is an integer; use excursion_char_exact")
    bf = _fold_b(b)
    if t == 0:
        return 0.0
    x, y = char_theta_form(t, bf), char_zeta_form(t, bf)
    if not abs(x - y) <= tol * max(1.0, abs(x)):
        raise FormDisagreement(f"theta form {x!r} vs Zeta form {y!r} at t={t}, b={b}")
    return 0.5 * (x + y)


def excursion_char_value(t: float, b: float) -> float:
    if float(b).is_integer():
        return char_special_float(t, int(b))
    return excursion_char_float(t, b)


# cone-restricted excursions

@dataclass(frozen=True)
class ExcursionQuery:
    alpha: int
    beta_minus: Angle = -INF
    beta_plus: Angle = INF
    order: int = 12
    fixed_first_step: bool = True

    def __post_init__(self) -> None:
        if self.alpha % 2:
            raise InvalidQuery("alpha must be even (pi/2 multiple)")
        # 0 on the boundary is accepted: theta_0 = 0 then leaves I and the series vanishes
        if not self.beta_minus <= 0 <= self.beta_plus:
            raise InvalidQuery("interval must contain 0")
        if not self.beta_minus < self.alpha < self.beta_plus:
            raise InvalidQuery("alpha must lie inside the interval")
        if self.order < 0:
            raise InvalidQuery("order must be non-negative")


def cone_F(q: ExcursionQuery) -> SqrtKSeries:
    """(1/4) sum_n (F^(a + n d) - F^(2 bp - a + n d)), d = 2 (bp - bm).
    With fixed_first_step False the four first steps are all counted."""
    N = q.order
    a, bm, bp = q.alpha, q.beta_minus, q.beta_plus
    acc = SqrtKSeries.zero(2 * N)

    def F(x):
        # F^(x) vanishes through t^N once |x| + 2 > N
        return excursion_F_alpha(x, N) if abs(x) + 2 <= N else SqrtKSeries.zero(2 * N)

    if not is_finite(bm) and not is_finite(bp):
        acc = F(a)
    elif not is_finite(bm):
        acc = F(a) - F(2 * bp - a)
    elif not is_finite(bp):
        acc = F(a) - F(2 * bm - a)
    else:
        d = 2 * (bp - bm)
        nmax = (N + abs(a) + abs(2 * bp - a)) // d + 2
        for n in range(-nmax, nmax + 1):
            acc = acc + F(a + n * d) - F(2 * bp - a + n * d)
    out = acc if not q.fixed_first_step else acc.scale(Fraction(1, 4))
    return out.truncate(2 * N)


def cone_F_ints(q: ExcursionQuery) -> list:
    out = []
    for c in cone_F(q).t_coeffs(q.order):
        if c.denominator != 1:
            raise AssertionError("non-integer excursion count")
        out.append(int(c))
    return out


def cone_F_fourier(t: float, q: ExcursionQuery) -> float:
    """Finite discrete-Fourier form over sigma in (0, delta) n pi/2 Z (floats)."""
    bm, bp, a = q.beta_minus, q.beta_plus, q.alpha
    if not (is_finite(bm) and is_finite(bp)):
        raise InvalidQuery("finite interval needed for the Fourier form")
    dg = 2 * (bp - bm)  # delta in pi/4 units
    total = 0.0
    j = 1
    while 2 * j < dg:
        b = Fraction(8 * j, dg)
        w = math.cos(math.pi * 2 * j * a / dg) - math.cos(math.pi * 2 * j * (2 * bp - a) / dg)
        if abs(w) > 1e-15:
            bb = float(b) if b.denominator != 1 else int(b)
            total += w * excursion_char_value(t, bb)
        j += 1
    val = total / (2.0 * dg)
    return val if q.fixed_first_step else 4.0 * val


# Gessel

def hypergeometric_gessel(n: int) -> Fraction:
    """16^n (5/6)_n (1/2)_n / ((2)_n (5/3)_n)."""
    r = Fraction(1)
    for i in range(n):
        r *= 16 * (Fraction(5, 6) + i) * (Fraction(1, 2) + i) / ((2 + i) * (Fraction(5, 3) + i))
    return r


GESSEL_POLY = {
    # power of y -> {power of t: coefficient}
    8: {0: 27},
    4: {4: -4608, 2: -4032, 0: -18},
    2: {6: -32768, 4: 67584, 2: 4224, 0: -8},
    0: {8: -65536, 6: -114688, 4: -50688, 2: -448, 0: -1},
}


@dataclass
class GesselReport:
    order: int
    coefficients: list
    hypergeometric_ok: bool
    first_mismatch: int | None
    residual_zero: bool
    residual_valuation: int | None
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.hypergeometric_ok and self.residual_zero


def gessel_residual(y: SqrtKSeries) -> SqrtKSeries:
    o = y.order
    t = SqrtKSeries.monomial(2, Fraction(1, 4), o)
    total = SqrtKSeries.zero(o)
    ypow = {0: SqrtKSeries.one(o), 2: y * y}
    ypow[4] = ypow[2] * ypow[2]
    ypow[8] = ypow[4] * ypow[4]
    for e, poly in GESSEL_POLY.items():
        c = SqrtKSeries.zero(o)
        for d, v in poly.items():
            c = c + (t**d).scale(v) if d else c + SqrtKSeries.one(o).scale(v)
        total = total + c * ypow[e]
    return total


def gessel_check(order: int = 16, residual_order: int = 40) -> GesselReport:
    """Gessel excursions (alpha=0, I=(-pi/4,pi/2)) against the hypergeometric
    closed form, and the degree-8 relation for y = 2 cone_F + 1."""
    if order < 8:
        raise InvalidQuery("order must be at least 8")
    top = max(order, residual_order)
    g = cone_F(ExcursionQuery(0, -1, 2, top))
    coeffs = [c for c in g.t_coeffs(top)]
    mismatch = None
    for n in range(0, order // 2):
        if coeffs[2 * n + 2] != hypergeometric_gessel(n):
            mismatch = 2 * n + 2
            break
    for i in range(1, order + 1, 2):
        if coeffs[i] != 0:
            mismatch = i if mismatch is None else min(mismatch, i)
    y = g.scale(2) + SqrtKSeries.one(g.order)
    res = gessel_residual(y.truncate(2 * residual_order)).truncate(2 * residual_order)
    return GesselReport(order, [int(c) if c.denominator == 1 else c for c in coeffs[: order + 1]],
                        mismatch is None, mismatch, res.is_zero(),
                        None if res.is_zero() else res.valuation)


# return angle at the first return

_BERN = [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30), Fraction(5, 66),
         Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510)]


def digamma(x: float) -> float:
    """psi(x) for x > 0 by upward recurrence and the asymptotic series."""
    if not x > 0:
        raise ValueError("digamma implemented for x > 0")
    acc = 0.0
    while x < 12.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    s = 0.0
    p = inv2
    for j, B in enumerate(_BERN, start=1):
        s += float(B) / (2 * j) * p
        p *= inv2
    return acc + math.log(x) - 0.5 / x - s


def return_angle_prob(m: int) -> float:
    """P[winding = m pi/2 at the first return to the origin]."""
    a = abs(int(m))
    return (-digamma((a + 1) / 4) + 2 * digamma((a + 2) / 4) - digamma((a + 3) / 4)) / math.pi


def return_angle_tail(M: int) -> float:
    """Exact mass of |m| > M: the second differences telescope to
    2 (psi((M+3)/4) - psi((M+2)/4)) / pi."""
    return 2.0 * (digamma((M + 3) / 4) - digamma((M + 2) / 4)) / math.pi


def _resummed_sum(m: int, q: float) -> float:
    # sum_n (1-q^n)^2 q^{n(|m|+1)} / (1-q^{4n}), regrouped over p
    a = abs(m)
    total, p = 0.0, 0
    while True:
        e = a + 4 * p
        term = 1.0 / (1.0 - q ** (e + 1)) - 2.0 / (1.0 - q ** (e + 2)) + 1.0 / (1.0 - q ** (e + 3))
        total += term
        if abs(term) < 1e-18 and p > 4:
            return total
        p += 1


def F_resummed(m: int, k: float) -> float:
    """F^(m pi/2) at t = k/4 in floats."""
    ev = agm_eval(k)
    return 2.0 * math.pi / ev.K * _resummed_sum(m, ev.q)


def F_near_quarter(m: int, ks=(1 - 1e-6, 1 - 1e-7, 1 - 1e-8, 1 - 1e-9, 1 - 1e-10)) -> float:
    """Limit of F^(m pi/2)(t) as t -> 1/4.

    With q = e^{-eps}, F = 2 eps S(eps)/K' and eps S(eps) is a Riemann sum of a
    function analytic at 0, so it has an expansion in eps^2 (Euler-Maclaurin);
    extrapolate eps S to eps = 0 by Neville in eps^2, then use K'(1) = pi/2."""
    xs, ys = [], []
    for k in ks:
        ev = agm_eval(k)
        eps = -math.log(ev.q)
        xs.append(eps * eps)
        ys.append(eps * _resummed_sum(m, ev.q))
    P = list(ys)
    n = len(xs)
    for lev in range(1, n):
        for i in range(n - lev):
            j = i + lev
            P[i] = (xs[j] * P[i] - xs[i] * P[i + 1]) / (xs[j] - xs[i])
    return 4.0 / math.pi * P[0]


# asymptotics, floats

def _float_q_series(order_k: int) -> tuple[np.ndarray, np.ndarray]:
    pack = _pack(2 * order_k + 8)
    q = np.array([float(c) for c in pack.q_of_k.k_coeffs(order_k)])
    K = np.array([float(c) for c in pack.twoK_over_pi.k_coeffs(order_k)])
    return q, K


def _fmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.convolve(a, b)[: len(a)]


def _finv(a: np.ndarray) -> np.ndarray:
    out = np.zeros_like(a)
    out[0] = 1.0 / a[0]
    for n in range(1, len(a)):
        out[n] = -np.dot(a[1 : n + 1], out[n - 1 :: -1][:n]) / a[0]
    return out


def char_k_coefficients(b: float, order_k: int) -> np.ndarray:
    """[k^j] F(k/4, b) for j <= order_k, in floats.

    F = (2 pi/K) sum_n r(q^n), r(x) = x (1-x)^2 / ((1+x^2)(1 - 2 cos(pi b/2) x + x^2)),
    a Lambert series in q, composed with q(k)."""
    c = math.cos(math.pi * b / 2.0)
    nq = order_k // 2 + 1  # q has k-valuation 2
    # r_j: power series of r in x
    num = np.zeros(nq + 1)
    num[1], num[2], num[3] = 1.0, -2.0, 1.0
    den = np.zeros(nq + 1)
    d1 = np.zeros(nq + 1); d1[0], d1[2] = 1.0, 1.0
    d2 = np.zeros(nq + 1); d2[0], d2[1], d2[2] = 1.0, -2.0 * c, 1.0
    den = _fmul(d1, d2)
    r = _fmul(num, _finv(den))
    lam = np.zeros(nq + 1)
    for j in range(1, nq + 1):
        lam[j::j] += r[j]
    q, K = _float_q_series(order_k)
    # Horner in q
    acc = np.zeros(order_k + 1)
    for N in range(nq, 0, -1):
        acc = _fmul(acc, q)
        acc[0] += lam[N]
    acc = _fmul(acc, q)
    return 4.0 * _fmul(acc, _finv(K))


def asymptotics_diagnostic(b: float, L: int = 200) -> list[dict]:
    """Ratio of [t^{2l}] F(t,b) to its predicted asymptotics for a few l up to L."""
    if not 0 <= b <= 2:
        raise InvalidQuery("b must lie in [0, 2]")
    if L > 400:
        raise InvalidQuery("L must be <= 400")
    ck = char_k_coefficients(b, 2 * L)
    rows = []
    for l in sorted({max(2, L // 8), max(2, L // 4), max(2, L // 2), L}):
        coeff = ck[2 * l]  # = 4^{-2l} [t^{2l}]
        if b == 0:
            pred = math.pi / (l * math.log(l) ** 2)
        elif b == 2:
            pred = 1.0 / (4 * math.pi * l**3)
        else:
            pred = math.sin(math.pi * b / 4) ** 2 * math.gamma(1 + b) / math.pi * 16.0 ** (1 - b) / l ** (b + 1)
        rows.append({"l": l, "coefficient_over_16^l": coeff, "predicted": pred, "ratio": coeff / pred})
    return rows
