"""Angles on the pi/4 grid and walk queries.

An angle is an int a meaning a*pi/4.  Unbounded interval ends are the
floats INF / -INF.  Every routine downstream compares these exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

INF = math.inf
Angle = Union[int, float]  # int grid units, or +-INF for open ends


class InvalidQuery(ValueError):
    pass


class Unsupported(InvalidQuery):
    """Inputs outside the cases with a known formula."""


def parse_angle(text: str, allow_inf: bool = True) -> Angle:
    s = str(text).strip().lower()
    if s in ("inf", "+inf", "infinity"):
        if not allow_inf:
            raise InvalidQuery(f"angle {text!r} must be finite")
        return INF
    if s in ("-inf", "-infinity"):
        if not allow_inf:
            raise InvalidQuery(f"angle {text!r} must be finite")
        return -INF
    try:
        return int(s)
    except ValueError:
        raise InvalidQuery(f"malformed angle {text!r}; expected an integer in pi/4 units or inf/-inf") from None


def format_angle(a: Angle) -> str:
    if a == INF:
        return "inf"
    if a == -INF:
        return "-inf"
    return str(int(a))


def is_finite(a: Angle) -> bool:
    return not math.isinf(a)


def neg(a: Angle) -> Angle:
    return -a if is_finite(a) else (-INF if a > 0 else INF)


@dataclass(frozen=True)
class WalkQuery:
    l: int
    p: int
    alpha: int  # grid units, even
    beta_minus: Angle = -INF
    beta_plus: Angle = INF
    order: int = 10  # max power of t

    def __post_init__(self) -> None:
        if not (isinstance(self.l, int) and isinstance(self.p, int)) or self.l < 1 or self.p < 1:
            raise InvalidQuery("l and p must be positive integers")
        if self.alpha % 2:
            raise InvalidQuery("endpoint winding must be a multiple of pi/2 (even grid units)")
        if self.order < 0:
            raise InvalidQuery("order must be non-negative")
        bm, bp = self.beta_minus, self.beta_plus
        if bm == INF or bp == -INF:
            raise InvalidQuery("interval ends are reversed")
        if not bm < bp:
            raise InvalidQuery("empty interval")
        for b in (bm, bp):
            if is_finite(b) and b % 2 and (self.l % 2 or self.p % 2):
                raise InvalidQuery("pi/4-grid interval ends need l and p both even")

    @property
    def unconstrained(self) -> bool:
        return self.beta_minus == -INF and self.beta_plus == INF

    def with_interval(self, bm: Angle, bp: Angle) -> "WalkQuery":
        return WalkQuery(self.l, self.p, self.alpha, bm, bp, self.order)


# Reduction of (alpha, I) to a canonical case.  Both exact pipelines
# evaluate the same canonical cases, but by different means.

@dataclass(frozen=True)
class Case:
    kind: str       # "Y", "B", "J", "A"
    l: int
    p: int
    alpha: int
    bm: Angle = -INF
    bp: Angle = INF


def canonical(l: int, p: int, alpha: int, bm: Angle, bp: Angle, nonneg_alpha: bool = False) -> Case:
    """Map to one of
      Y: I = R
      B: bm < alpha < bp, bm < 0 < bp         (reflection)
      J: alpha = bp > 0, bm < 0               (last quarter turn fixed)
      A: alpha = bp > 0, bm = 0
    using the mirror (a, bm, bp) -> (-a, -bp, -bm) and the time reversal
    (a, bm, bp) -> (a, a-bp, a-bm), which also swaps l and p.
    With nonneg_alpha the B case is mirrored to alpha >= 0.
    """
    if bm == -INF and bp == INF:
        return Case("Y", l, p, alpha)
    if not (bm <= 0 <= bp):
        raise Unsupported("interval must contain 0 in its closure")
    if not (bm <= alpha <= bp):
        raise Unsupported("endpoint winding outside the closed interval")
    if alpha == 0 and (bm == 0 or bp == 0):
        raise Unsupported("alpha = 0 on the interval boundary")
    if bm < alpha < bp:
        if bm < 0 < bp:
            if nonneg_alpha and alpha < 0:
                return Case("B", l, p, -alpha, neg(bp), neg(bm))
            return Case("B", l, p, alpha, bm, bp)
        # 0 sits on the boundary: reverse time, alpha lands on a boundary
        return canonical(p, l, alpha, alpha - bp, alpha - bm, nonneg_alpha)
    if alpha == bm:
        return canonical(l, p, -alpha, neg(bp), neg(bm), nonneg_alpha)
    # alpha == bp > 0
    if bm == 0:
        return Case("A", l, p, alpha, 0, alpha)
    return Case("J", l, p, alpha, bm, alpha)
