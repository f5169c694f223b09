"""Combinatorial pipeline: binomial blocks J, B, A and their assembly.

Series here are plain lists of Python ints, coefficient n of t^n, with a
fixed length order+1; the public functions wrap them in SqrtKSeries.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .angles import INF, Case, InvalidQuery, WalkQuery, canonical
from .series import SqrtKSeries, t_series_from_ints

IntSeries = list  # list[int], t^0 .. t^order


def _zero(order: int) -> IntSeries:
    return [0] * (order + 1)


def _mul(a: IntSeries, b: IntSeries, order: int) -> IntSeries:
    out = [0] * (order + 1)
    nzb = [(j, y) for j, y in enumerate(b[: order + 1]) if y]
    for i, x in enumerate(a[: order + 1]):
        if not x:
            continue
        for j, y in nzb:
            if i + j > order:
                break
            out[i + j] += x * y
    return out


def _addto(acc: IntSeries, a: IntSeries, sign: int = 1) -> None:
    for i, x in enumerate(a):
        if x:
            acc[i] += sign * x


def _wrap(c: IntSeries, order: int) -> SqrtKSeries:
    return t_series_from_ints(c, order)


# blocks

@lru_cache(maxsize=None)
def _j_ints(l: int, p: int, order: int) -> tuple:
    c = _zero(order)
    if (l + p) % 2 == 0:
        for n in range(max(l, p), order + 1, 2):
            c[n] = p * comb(n, (n + p) // 2) // n * comb(n, (n + l) // 2)
    return tuple(c)


def _b_m(m: int, n: int) -> int:
    # coefficient of t^(2n) in B_m, m even
    h = n + m // 2
    if h < 0 or h > 2 * n:
        return 0
    return comb(2 * n, n) * comb(2 * n, h)


@lru_cache(maxsize=None)
def _b_ints(l: int, p: int, order: int) -> tuple:
    c = _zero(order)
    if (l + p) % 2 == 0:
        for n in range(0, order // 2 + 1):
            c[2 * n] = _b_m(l - p, n) - _b_m(-l - p, n)
    return tuple(c)


@lru_cache(maxsize=None)
def _a_ints(l: int, p: int, order: int) -> tuple:
    # quadrant walks (p,0) -> (0,l), both coordinates first-passage
    c = _zero(order)
    if (l + p) % 2 == 0:
        for n in range(max(l, p), order + 1, 2):
            c[n] = (p * comb(n, (n + p) // 2) // n) * (l * comb(n, (n + l) // 2) // n)
    return tuple(c)


def j_series(l: int, p: int, N: int) -> SqrtKSeries:
    if l < 1 or p < 1:
        raise InvalidQuery("l, p must be >= 1")
    return _wrap(list(_j_ints(l, p, N)), N)


def b_series(l: int, p: int, N: int) -> SqrtKSeries:
    if l < 1 or p < 1:
        raise InvalidQuery("l, p must be >= 1")
    return _wrap(list(_b_ints(l, p, N)), N)


def a_series(l: int, p: int, N: int) -> SqrtKSeries:
    if l < 1 or p < 1:
        raise InvalidQuery("l, p must be >= 1")
    return _wrap(list(_a_ints(l, p, N)), N)


def axis_walk_count(alpha: int, N: int) -> int:
    """Walks of length N on (pi/2)Z from 0 to alpha (grid units, even)."""
    if alpha % 2:
        raise InvalidQuery("alpha must be even in pi/4 units")
    d = abs(alpha) // 2
    if N < d or (N - d) % 2:
        return 0
    return comb(N, (N - d) // 2)


def psi_power_coeff(n: int, p: int, order: int | None = None) -> SqrtKSeries:
    """[x^n] psi_k(x)^p as a monomial in s (k = s^2); exact, so any order."""
    if n < 1 or p < 1:
        raise InvalidQuery("n, p must be >= 1")
    order = 2 * n if order is None else order
    if (n + p) % 2 or p > n:
        return SqrtKSeries.zero(order)
    return SqrtKSeries.monomial(n, Fraction(p * comb(n, (n + p) // 2), n * 2**n), order)


# unconstrained walks: W^(a)_{l,p} = sum_N a_N <e_l, B J^N e_p>

@lru_cache(maxsize=64)
def _u_vectors(p: int, order: int) -> tuple:
    """u_N[l] = (B J^N e_p)_l for N = 0..order, l = 1..order+p."""
    L = order + p
    v = {p: [1] + [0] * order}
    out = []
    for N in range(order + 1):
        u = {}
        for l in range(1, L + 1):
            acc = _zero(order)
            for j, vj in v.items():
                if (l + j) % 2 == 0 and abs(l - j) <= order:
                    _addto(acc, _mul(_b_ints(l, j, order), vj, order))
            if any(acc):
                u[l] = acc
        out.append(u)
        if N == order:
            break
        nv = {}
        for i in range(1, L + 1):
            acc = _zero(order)
            for j, vj in v.items():
                if (i + j) % 2 == 0:
                    _addto(acc, _mul(_j_ints(i, j, order), vj, order))
            if any(acc):
                nv[i] = acc
        v = nv
    return tuple(out)


@lru_cache(maxsize=None)
def _y_tuple(l: int, p: int, a: int, order: int) -> tuple:
    acc = _zero(order)
    if (l + p) % 2:
        return tuple(acc)
    us = _u_vectors(p, order)
    for N, u in enumerate(us):
        c = axis_walk_count(a, N)
        if c and l in u:
            _addto(acc, u[l], c)
    return tuple(acc)


def _y_ints(l: int, p: int, a: int, order: int) -> IntSeries:
    return list(_y_tuple(l, p, abs(a), order))


def _reflect_ints(l: int, p: int, a: int, bm, bp, order: int) -> IntSeries:
    acc = _zero(order)
    if bm == -INF and bp == INF:
        return _y_ints(l, p, a, order)
    if bm == -INF:
        _addto(acc, _y_ints(l, p, a, order))
        _addto(acc, _y_ints(l, p, 2 * bp - a, order), -1)
        return acc
    if bp == INF:
        _addto(acc, _y_ints(l, p, a, order))
        _addto(acc, _y_ints(l, p, 2 * bm - a, order), -1)
        return acc
    delta = 2 * (bp - bm)
    # a walk of winding a' has length >= |a'|/2
    nmax = (2 * order + abs(a) + abs(2 * bp - a)) // delta + 2
    for n in range(-nmax, nmax + 1):
        a1, a2 = a + n * delta, 2 * bp - a + n * delta
        if abs(a1) <= 2 * order:
            _addto(acc, _y_ints(l, p, a1, order))
        if abs(a2) <= 2 * order:
            _addto(acc, _y_ints(l, p, a2, order), -1)
    return acc


def _case_ints(c: Case, order: int) -> IntSeries:
    l, p = c.l, c.p
    if c.kind == "Y":
        return _y_ints(l, p, c.alpha, order)
    if c.kind == "B":
        return _reflect_ints(l, p, c.alpha, c.bm, c.bp, order)
    if c.kind == "J":
        # last quarter turn from alpha-pi/2 to alpha inside the quadrant
        acc = _zero(order)
        for l1 in range(1 + (p + 1) % 2, order + p + 1, 2):
            a = _a_ints(l, l1, order)
            if not any(a):
                continue
            inner = _reflect_ints(l1, p, c.alpha - 2, c.bm, c.alpha, order)
            _addto(acc, _mul(a, inner, order))
        return acc
    if c.kind == "A":
        if c.alpha == 2:
            return list(_a_ints(l, p, order))
        acc = _zero(order)
        for l1 in range(1 + (p + 1) % 2, order + p + 1, 2):
            a1 = _a_ints(l1, p, order)
            if not any(a1):
                continue
            for l2 in range(1 + (p + 1) % 2, order + p + 1, 2):
                a2 = _a_ints(l, l2, order)
                if not any(a2):
                    continue
                mid = _reflect_ints(l2, l1, c.alpha - 4, -2, c.alpha - 2, order)
                _addto(acc, _mul(a2, _mul(mid, a1, order), order))
        return acc
    raise InvalidQuery(f"unknown case {c.kind}")


def assemble_W_ints(q: WalkQuery) -> IntSeries:
    if (q.l + q.p) % 2:
        return _zero(q.order)
    c = canonical(q.l, q.p, q.alpha, q.beta_minus, q.beta_plus)
    return _case_ints(c, q.order)


def assemble_W(q: WalkQuery) -> SqrtKSeries:
    if not q.unconstrained:
        raise InvalidQuery("assemble_W takes I = R; use assemble_W_interval")
    return _wrap(assemble_W_ints(q), q.order)


def assemble_W_interval(q: WalkQuery) -> SqrtKSeries:
    return _wrap(assemble_W_ints(q), q.order)


def gram_check(l: int, p: int, order: int) -> bool:
    """l J_{l,p} = sum_n n [x^n]psi^l [x^n]psi^p, coefficientwise in s."""
    lhs = j_series(l, p, order).scale(l)
    rhs = SqrtKSeries.zero(2 * order)
    for n in range(max(l, p), order + 1):
        rhs = rhs + (psi_power_coeff(n, l, 2 * order) * psi_power_coeff(n, p, 2 * order)).scale(n)
    return lhs.agrees(rhs)
