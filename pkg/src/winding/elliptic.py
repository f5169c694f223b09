"""Elliptic objects as exact k-series and as double-precision numbers.

Exact side: the nome q(k), 2K/pi, 2E/pi, k', k1 = (1-k')/(1+k') and
sqrt(k1), all as SqrtKSeries. The nome comes from reverting the
theta-constant expression of k in powers of q^(1/2).

Float side: AGM for K, K', E; theta functions by q-series; Jacobi
sn/cn/dn by descending Landen; Jacobi zeta as a theta log-derivative.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .series import SqrtKSeries


class DomainError(ValueError):
    pass


# exact series


@dataclass(frozen=True)
class EllipticSeriesPack:
    q_of_k: SqrtKSeries
    q_half: SqrtKSeries      # q^(1/2), a k-series
    q_quarter: SqrtKSeries   # q^(1/4) = sqrt(k)/2 (1 + ...), odd s-valuation
    twoK_over_pi: SqrtKSeries
    twoE_over_pi: SqrtKSeries
    k_prime: SqrtKSeries
    k1: SqrtKSeries
    sqrt_k1: SqrtKSeries
    order: int  # in s

    def q_power(self, quarters: int) -> SqrtKSeries:
        """q^(quarters/4) as a Laurent series in s."""
        return _q_power(self, quarters)


def theta3_q(order_q: int) -> SqrtKSeries:
    """theta_3 = 1 + 2 sum q^(n^2) as a series in its own variable."""
    c = [0] * (order_q + 1)
    c[0] = 1
    n = 1
    while n * n <= order_q:
        c[n * n] = 2
        n += 1
    return SqrtKSeries.from_dense(c, order_q)


def _k_of_rho(order: int) -> SqrtKSeries:
    """k = theta_2^2/theta_3^2 written in rho = q^(1/2): 4 rho (sum rho^(2n(n+1)))^2 / theta_3(rho^2)^2."""
    c = [0] * (order + 1)
    n = 0
    while 2 * n * (n + 1) <= order:
        c[2 * n * (n + 1)] = 1
        n += 1
    psi = SqrtKSeries.from_dense(c, order)
    th3 = theta3_q(order // 2).spread(2).truncate(order)
    return (psi * psi * (th3 * th3).invert()).shift(1).scale(4)


@lru_cache(maxsize=16)
def build_series_pack(order: int) -> EllipticSeriesPack:
    """All series known through s^order (k^(order/2))."""
    if order < 4:
        raise ValueError("order must be at least 4")
    final = order
    order = order + 8  # working order; relative precision is lost in (1-k') and sqrt
    ok = order // 2  # order in k
    rho_of_k = _k_of_rho(ok + 1).revert()  # rho as a series in k, through k^(ok+1)
    q_half = rho_of_k.spread(2).truncate(order + 2)
    q = (q_half * q_half).truncate(order)
    q_quarter = q_half.sqrt()
    th3 = theta3_q(ok // 2 + 1)
    qk = q.truncate(min(q.order, order))
    th = th3.compose(qk) if qk.valuation >= 1 else th3
    twoK = (th * th).truncate(order)

    k = SqrtKSeries.monomial(2, 1, order)
    e_coeffs = []
    a = Fraction(1)
    for n in range(ok + 1):
        e_coeffs.append(a if n % 2 == 0 else 0)
        # next hypergeometric term for 2F1(-1/2, 1/2; 1; k^2) in powers of k
        if n % 2 == 0:
            m = n // 2
            a = a * Fraction(2 * m - 1, 2) * Fraction(2 * m + 1, 2) / Fraction((m + 1) ** 2)
    twoE = SqrtKSeries.from_k(e_coeffs, ok)

    one = SqrtKSeries.one(order)
    kp = (one - k * k).sqrt()
    k1 = (one - kp) * (one + kp).invert()
    sqrt_k1 = k1.sqrt()
    parts = dict(q_of_k=q, q_half=q_half, q_quarter=q_quarter, twoK_over_pi=twoK,
                 twoE_over_pi=twoE, k_prime=kp, k1=k1, sqrt_k1=sqrt_k1)
    return EllipticSeriesPack(order=final, **{n: v.truncate(final) for n, v in parts.items()})


def _q_power(pack: EllipticSeriesPack, quarters: int) -> SqrtKSeries:
    key = (id(pack), quarters)
    hit = _QPOW.get(key)
    if hit is not None and hit[0] is pack:
        return hit[1]
    if quarters == 0:
        val = SqrtKSeries.one(pack.order)
    elif quarters % 2 == 0:
        val = pack.q_half ** (quarters // 2) if quarters > 0 else pack.q_half.invert() ** (-quarters // 2)
    else:
        base = pack.q_quarter if quarters > 0 else pack.q_quarter.invert()
        val = base ** abs(quarters)
    if len(_QPOW) > 4096:
        _QPOW.clear()
    _QPOW[key] = (pack, val)
    return val


_QPOW: dict = {}


def twoK_over_pi_hypergeometric(order_k: int) -> SqrtKSeries:
    """sum (C(2n,n)/4^n)^2 k^(2n); independent of the theta route."""
    c = []
    for j in range(order_k + 1):
        if j % 2:
            c.append(0)
        else:
            n = j // 2
            c.append(Fraction(math.comb(2 * n, n), 4**n) ** 2)
    return SqrtKSeries.from_k(c, order_k)


# floats


@dataclass(frozen=True)
class FloatEval:
    k: float
    K: float
    K_prime: float
    E: float
    q: float


def _check_k(k: float) -> None:
    if not (0.0 < k < 1.0):
        raise DomainError(f"modulus k={k} outside (0,1)")


def agm(a: float, b: float) -> float:
    for _ in range(64):
        if abs(a - b) <= 1e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def ellipk(k: float) -> float:
    """K(k) with modulus k."""
    return math.pi / (2.0 * agm(1.0, math.sqrt((1.0 - k) * (1.0 + k))))


def ellipe(k: float) -> float:
    a, b, c = 1.0, math.sqrt((1.0 - k) * (1.0 + k)), k
    total, p = 0.5 * c * c, 0.5
    for _ in range(64):
        if abs(c) < 1e-17:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        p *= 2.0
        total += p * c * c
    return (1.0 - total) * math.pi / (2.0 * a)


def agm_eval(k: float) -> FloatEval:
    _check_k(k)
    K = ellipk(k)
    Kp = math.pi / (2.0 * agm(1.0, k))
    return FloatEval(k=k, K=K, K_prime=Kp, E=ellipe(k), q=math.exp(-math.pi * Kp / K))


Q_MAX = 0.999999


def _check_q(q: float) -> None:
    if not (0.0 < q < 1.0):
        raise DomainError(f"nome q={q} outside (0,1)")
    if q >= Q_MAX:
        raise DomainError(f"nome q={q} too close to 1 for q-series evaluation")


def theta1(z: float, q: float) -> float:
    _check_q(q)
    total, n = 0.0, 0
    while True:
        term = q ** ((n + 0.5) ** 2) * math.sin((2 * n + 1) * z)
        total += term if n % 2 == 0 else -term
        if q ** ((n + 0.5) ** 2) < 1e-17 * max(abs(total), 1e-300) or n > 10000:
            break
        n += 1
    return 2.0 * total


def theta1_dz(z: float, q: float) -> float:
    _check_q(q)
    total, n = 0.0, 0
    while True:
        w = q ** ((n + 0.5) ** 2) * (2 * n + 1)
        term = w * math.cos((2 * n + 1) * z)
        total += term if n % 2 == 0 else -term
        if w < 1e-17 * max(abs(total), 1e-300) or n > 10000:
            break
        n += 1
    return 2.0 * total


def theta4(z: float, q: float) -> float:
    _check_q(q)
    total, n = 1.0, 1
    while True:
        w = q ** (n * n)
        total += 2.0 * w * math.cos(2 * n * z) * (-1) ** n
        if w < 1e-17 or n > 10000:
            break
        n += 1
    return total


def theta4_dz(z: float, q: float) -> float:
    _check_q(q)
    total, n = 0.0, 1
    while True:
        w = q ** (n * n) * 2 * n
        total -= 2.0 * w * math.sin(2 * n * z) * (-1) ** n
        if q ** (n * n) < 1e-17 or n > 10000:
            break
        n += 1
    return total


def theta3(q: float) -> float:
    _check_q(q)
    total, n = 1.0, 1
    while q ** (n * n) > 1e-18:
        total += 2.0 * q ** (n * n)
        n += 1
    return total


def jacobi_sn_cn_dn(u: float, k: float) -> tuple[float, float, float]:
    """Descending Landen / AGM scheme."""
    _check_k(k)
    a = [1.0]
    c = [k]
    b = math.sqrt((1.0 - k) * (1.0 + k))
    while abs(c[-1]) > 1e-16 and len(a) < 40:
        an, bn, cn = 0.5 * (a[-1] + b), math.sqrt(a[-1] * b), 0.5 * (a[-1] - b)
        a.append(an)
        c.append(cn)
        b = bn
    n = len(a) - 1
    phi = (2**n) * a[n] * u
    for j in range(n, 0, -1):
        phi = 0.5 * (phi + math.asin(c[j] / a[j] * math.sin(phi)))
    sn, cn = math.sin(phi), math.cos(phi)
    dn = math.sqrt(max(0.0, 1.0 - k * k * sn * sn))
    return sn, cn, dn


def jacobi_zeta(u: float, k: float) -> float:
    """Z(u,k) = (pi/2K) theta4'(v)/theta4(v), v = pi u/(2K)."""
    ev = agm_eval(k)
    v = math.pi * u / (2.0 * ev.K)
    return math.pi / (2.0 * ev.K) * theta4_dz(v, ev.q) / theta4(v, ev.q)
