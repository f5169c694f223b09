"""Rooted loops around the origin, by index, and cluster expectations.

L_n^odd  = q^{2|n|} / (|n| (1 - q^{4|n|}))   loops on x+y odd
L_n^even = q^{4|n|} / (|n| (1 - q^{4|n|}))   loops on x+y even
Both are inverse-size biased: sum over rooted loops of t^|w| / |w|.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .angles import InvalidQuery
from .series import SqrtKSeries
from .spectral import _pack


@dataclass(frozen=True)
class LoopQuery:
    n_index: int
    parity: str = "both"
    order: int = 12  # top power of t

    def __post_init__(self) -> None:
        if self.n_index == 0:
            raise InvalidQuery("loop index must be nonzero")
        if self.parity not in ("even", "odd", "both"):
            raise InvalidQuery("parity must be even, odd or both")
        if self.order < 0:
            raise InvalidQuery("order must be non-negative")


def loop_gf(q: LoopQuery) -> SqrtKSeries:
    n = abs(q.n_index)
    target = 2 * q.order
    pack = _pack(target + 8)
    one = SqrtKSeries.one(pack.order)
    q2 = pack.q_power(8 * n)  # q^{2n}
    if q.parity == "both":
        out = q2 * (one - q2).invert()
    else:
        q4 = q2 * q2
        num = q2 if q.parity == "odd" else q4
        out = num * (one - q4).invert()
    return out.scale(Fraction(1, n)).truncate(target)


def loop_identity(n: int, order: int) -> bool:
    """even + odd = both, exactly through t^order."""
    e = loop_gf(LoopQuery(n, "even", order))
    o = loop_gf(LoopQuery(n, "odd", order))
    b = loop_gf(LoopQuery(n, "both", order))
    return (e + o).agrees(b, 2 * order)


def _k_coeff(series: SqrtKSeries, j: int) -> Fraction:
    return series[2 * j]


def cluster_expectation(n: int, l: int, kind: str) -> Fraction:
    """E[sum over index-n clusters of area] or of (boundary - 2), for a
    rectilinear walk of length 2l conditioned to return to its start."""
    if n == 0:
        raise InvalidQuery("index must be nonzero")
    if l < 1:
        raise InvalidQuery("l must be >= 1")
    n = abs(n)
    pack = _pack(4 * l + 8)
    one = SqrtKSeries.one(pack.order)
    q2 = pack.q_power(8 * n)
    if kind == "area":
        s = q2 * (one - q2 * q2).invert()
        w = Fraction(2 * l, n)
    elif kind == "boundary":
        s = q2 * (one + q2).invert()
        w = Fraction(4 * l, n)
    else:
        raise InvalidQuery("kind must be 'area' or 'boundary'")
    return Fraction(4 ** (2 * l), comb(2 * l, l) ** 2) * w * _k_coeff(s, 2 * l)


def cluster_asymptotics_diag(n: int, L: int = 100) -> list[dict]:
    """Exact expectations against l/(2 pi n^2) (area) and 2 pi^3 l / log^2 l
    (boundary) at a few l <= L.  Trend only."""
    if L > 400:
        raise InvalidQuery("L must be <= 400")
    n = abs(n)
    pack = _pack(4 * L + 8)
    one = SqrtKSeries.one(pack.order)
    q2 = pack.q_power(8 * n)
    area = q2 * (one - q2 * q2).invert()
    bd = q2 * (one + q2).invert()
    rows = []
    for l in sorted({max(2, L // 4), max(2, L // 2), L}):
        f = Fraction(4 ** (2 * l), comb(2 * l, l) ** 2)
        ea = float(f * Fraction(2 * l, n) * _k_coeff(area, 2 * l))
        eb = float(f * Fraction(4 * l, n) * _k_coeff(bd, 2 * l))
        pa = l / (2 * math.pi * n * n)
        pb = 2 * math.pi**3 * l / math.log(l) ** 2
        rows.append({"l": l, "area": ea, "area_ratio": ea / pa, "boundary": eb, "boundary_ratio": eb / pb})
    return rows
