"""Winding-angle laws of the unconstrained walk at geometric times.

Angles are ints in pi/4 units.  Square point buckets are windows
(alpha - pi/2, alpha + pi/2) for even alpha, origin point buckets the
same windows for odd alpha.  Neighbouring windows overlap, so only the
sub-families alpha in pi Z (or pi Z + pi/2, resp. pi Z +- pi/4) are
partitions.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .angles import InvalidQuery
from .elliptic import DomainError, agm_eval, jacobi_sn_cn_dn
from .oracle import Distribution, g_walk_histograms, origin_point_histograms, square_point_histograms
from .series import SqrtKSeries
from .spectral import ModeBoundUnstable, _basis_table, _pack


class InvalidBucket(InvalidQuery):
    pass


def _check_k(k: float) -> None:
    if not (0.0 < k < 1.0):
        raise DomainError(f"k={k} outside (0,1)")


# exact G-series

def g_alpha_series(p: int, alpha: int, order: int) -> SqrtKSeries:
    """Walks from (p,0), no visit to the origin before the last step, with the
    last-step midpoint winding in (alpha - pi/4, alpha + pi/4); alpha odd.
    Series in s; t-coefficients count walks.  order is the top power of t."""
    if p < 1:
        raise InvalidQuery("p must be >= 1")
    if alpha % 2 == 0:
        raise InvalidBucket("bucket centres are odd multiples of pi/4")
    a = abs(alpha)
    target = 2 * order
    inner = target - 2  # the prefactor k/(1-k) has valuation 2
    # term valuation >= m(a+1) - 2p
    M = (inner + 2 * p) // (a + 1) + 3
    work = inner + 2 * p
    tab = _basis_table(p, M, work)
    pack = _pack(work + 4 * M)
    one = SqrtKSeries.one(pack.order)
    total = SqrtKSeries.zero(inner)
    last = 0
    for m in range(1, M + 1):
        c = tab.coeff.get((p, m))
        if c is None or c.is_zero():
            continue
        x = pack.q_power(m * a) * pack.q_power(m) * (one + pack.q_power(2 * m)).invert()
        term = (x * c).scale(Fraction((-1) ** m, m)).truncate(inner)
        if term.order < inner:
            raise ModeBoundUnstable(f"precision loss at mode {m}")
        if not term.is_zero():
            last = m
        total = total + term
    if last > M - 2:
        raise ModeBoundUnstable("G-series modes not exhausted")
    k = SqrtKSeries.monomial(2, 1, target)
    pref = k * (SqrtKSeries.one(target) - k).invert()
    out = (pref * total).truncate(target)
    if not out.is_k_series():
        raise AssertionError("G-series is not a power series in k")
    return out


def g_alpha_counts(p: int, alpha: int, order: int) -> list[int]:
    """The same class counted by the DP oracle; index n = length."""
    if alpha % 2 == 0:
        raise InvalidBucket("bucket centres are odd multiples of pi/4")
    hists = g_walk_histograms(p, order)
    lo, hi = 2 * alpha - 2, 2 * alpha + 2
    return [sum(v for h, v in d.items() if lo < h < hi) for d in hists]


# closed forms

def secant_law(point: str, k: float, alpha: int) -> float:
    """P[theta_{zeta+1/2} in (alpha - pi/2, alpha + pi/2)], zeta ~ Geom(k)."""
    _check_k(k)
    ev = agm_eval(k)
    q = ev.q
    if point == "square":
        if alpha % 2:
            raise InvalidBucket("square buckets sit at even alpha")
        if alpha == 0:
            return 1.0 - 1.0 / k + math.pi / (2.0 * k * ev.K)
        x = abs(alpha) / 4.0
        return math.pi / (k * ev.K) / (q**x + q**-x)
    if point == "origin":
        if alpha % 2 == 0:
            raise InvalidBucket("origin buckets sit at odd alpha")
        u = alpha / 2.0  # 2 alpha / pi
        return math.pi / ev.K * (1.0 / (1.0 + q ** (0.5 + u)) - 1.0 / (1.0 + q ** (u - 0.5)))
    raise InvalidQuery(f"unknown point {point!r}")


def secant_law_sech(point: str, k: float, alpha: int) -> float:
    """Same probabilities written with sech and T = K'/(4K)."""
    _check_k(k)
    ev = agm_eval(k)
    T = ev.K_prime / (4.0 * ev.K)
    a = alpha * math.pi / 4.0
    if point == "square":
        c = math.pi / (2.0 * k * ev.K)
        return c / math.cosh(4 * T * a) + ((k - 1.0) / k if alpha == 0 else 0.0)
    C = math.pi * math.sinh(2 * T * math.pi) / (2.0 * ev.K)
    return C / (math.cosh(4 * T * (a - math.pi / 4)) * math.cosh(4 * T * (a + math.pi / 4)))


def _bucket_range(k: float, eps: float = 1e-18) -> int:
    # q^(|alpha|/4) < eps
    q = agm_eval(k).q
    return int(4 * math.log(eps) / math.log(q)) + 4


def secant_table(point: str, k: float, family: str | None = None) -> Distribution:
    """All buckets of one partition; tail_bound covers the dropped buckets.

    square: family "even" (alpha in pi Z, default) or "odd" (pi Z + pi/2);
    origin: family "plus" (pi Z + pi/4, default) or "minus" (pi Z - pi/4).
    """
    _check_k(k)
    A = _bucket_range(k)
    if point == "square":
        start = 0 if family in (None, "even") else 2
        alphas = [a + start for a in range(-4 * (A // 4 + 1), 4 * (A // 4 + 1) + 1, 4)]
    elif point == "origin":
        start = 1 if family in (None, "plus") else -1
        alphas = [a + start for a in range(-4 * (A // 4 + 1), 4 * (A // 4 + 1) + 1, 4)]
    else:
        raise InvalidQuery(f"unknown point {point!r}")
    buckets = {a: secant_law(point, k, a) for a in alphas}
    q = agm_eval(k).q
    amax = max(abs(a) for a in alphas)
    tail = 8.0 * q ** (amax / 4.0) / (1.0 - q) / k
    total = sum(buckets.values())
    meta = {"point": point, "k": k, "family": family or ("even" if point == "square" else "plus")}
    if point == "square":
        return Distribution(buckets, tail, abs(total - 1.0), meta=meta)
    absorbed = 1.0 - total  # walks that hit the origin: theta = infinity
    return Distribution(buckets, tail, 0.0, absorbed=absorbed, meta=meta)


# geometric-time mixing over exact DP histograms

def _horizon(k: float, tail: float) -> int:
    J = 0
    while k ** (J + 1) > tail:
        J += 1
    return J


@lru_cache(maxsize=8)
def _square_hists(J: int):
    return square_point_histograms(J)


@lru_cache(maxsize=8)
def _origin_hists(J: int):
    return origin_point_histograms(J)


def _hist_window(hist: dict, alpha: int) -> int:
    lo, hi = 2 * alpha - 4, 2 * alpha + 4
    return sum(v for h, v in hist.items() if lo < h < hi)


def geometric_mix_dp(point: str, k: float, bucket: int, tail: float = 1e-10) -> tuple[float, float]:
    """sum_{j<=J} k^j (1-k) P_j(bucket) with exact P_j; returns (value, dropped mass bound)."""
    _check_k(k)
    if not tail > 0:
        raise InvalidQuery("tail must be positive")
    J = _horizon(k, tail)
    if point == "square":
        if bucket % 2:
            raise InvalidBucket("square buckets sit at even alpha")
        hists = _square_hists(J)
        denom = lambda j: 4 ** (j + 1)
    elif point == "origin":
        if bucket % 2 == 0:
            raise InvalidBucket("origin buckets sit at odd alpha")
        hists = _origin_hists(J)[0]
        denom = lambda j: 4**j
    else:
        raise InvalidQuery(f"unknown point {point!r}")
    total = 0.0
    for j in range(J + 1):
        pj = Fraction(_hist_window(hists[j], bucket), denom(j))
        total += k**j * (1.0 - k) * float(pj)
    return total, k ** (J + 1)


def geometric_mix_absorbed(k: float, tail: float = 1e-10) -> tuple[float, float]:
    """Mass with theta = infinity for the origin point."""
    J = _horizon(k, tail)
    _, absorbed = _origin_hists(J)
    total = sum(k**j * (1.0 - k) * absorbed[j] / 4**j for j in range(J + 1))
    return total, k ** (J + 1)


# characteristic functions

def charfun(variant: str, k: float, b: float) -> dict:
    """Lattice sum of the rounded winding law against e^{i b alpha}, next to
    the Jacobi function it should equal.

    dn: theta at zeta - 1/2 rounded to pi Z  (theta_{-1/2} = 0)
    cn: theta at zeta + 1/2 rounded to pi Z + pi/2
    """
    _check_k(k)
    ev = agm_eval(k)
    A = _bucket_range(k)
    re = im = 0.0
    if variant == "dn":
        re = 1.0 - k  # zeta = 0
        for n in range(-(A // 4) - 1, A // 4 + 2):
            a = 4 * n
            w = k * secant_law("square", k, a)
            re += w * math.cos(b * a * math.pi / 4)
            im += w * math.sin(b * a * math.pi / 4)
        ref = jacobi_sn_cn_dn(ev.K * b, k)[2] if b != 0 else 1.0
    elif variant == "cn":
        for n in range(-(A // 4) - 1, A // 4 + 2):
            a = 4 * n + 2
            w = secant_law("square", k, a)
            re += w * math.cos(b * a * math.pi / 4)
            im += w * math.sin(b * a * math.pi / 4)
        ref = jacobi_sn_cn_dn(ev.K * b, k)[1] if b != 0 else 1.0
    else:
        raise InvalidQuery("variant must be 'dn' or 'cn'")
    return {"variant": variant, "k": k, "b": b, "lattice_sum": re, "imag": im, "jacobi": ref}
