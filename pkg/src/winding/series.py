"""Truncated Laurent series in s = sqrt(k) with exact rational coefficients.

A series is stored as integer numerators over one common positive
denominator, together with its valuation and its truncation order.
Exponents above ``order`` are unknown.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction


class SeriesError(ValueError):
    pass


class ZeroLeadingCoefficient(SeriesError):
    pass


class OddValuation(SeriesError):
    pass


class NonSquareLeading(SeriesError):
    pass


class NonpositiveInnerValuation(SeriesError):
    pass


class BadValuation(SeriesError):
    pass


def _conv(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First n terms of the Cauchy product of two integer lists."""
    if not a or not b or n <= 0:
        return [0] * max(n, 0)
    la, lb = min(len(a), n), min(len(b), n)
    if la < lb:
        a, b, la, lb = b, a, lb, la
    out = [0] * n
    for j in range(lb):
        bj = b[j]
        if bj == 0:
            continue
        top = min(la, n - j)
        for i in range(top):
            out[i + j] += a[i] * bj
    return out


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class SqrtKSeries:
    """f(s) = sum_{e=valuation}^{order} c_e s^e + O(s^(order+1))."""

    __slots__ = ("valuation", "order", "_nums", "_den")

    def __init__(self, valuation: int, coeffs: Iterable, order: int):
        fr = [_as_fraction(c) for c in coeffs]
        if len(fr) > order - valuation + 1:
            fr = fr[: max(order - valuation + 1, 0)]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        nums = [c.numerator * (den // c.denominator) for c in fr]
        self._set(valuation, nums, den, order)

    @classmethod
    def _raw(cls, valuation: int, nums: list[int], den: int, order: int) -> "SqrtKSeries":
        obj = cls.__new__(cls)
        obj._set(valuation, nums, den, order)
        return obj

    def _set(self, valuation: int, nums: list[int], den: int, order: int) -> None:
        n = order - valuation + 1
        if n < len(nums):
            nums = nums[: max(n, 0)]
        i = 0
        while i < len(nums) and nums[i] == 0:
            i += 1
        nums = nums[i:]
        valuation += i
        while nums and nums[-1] == 0:
            nums.pop()
        if not nums:
            self.valuation, self.order = order + 1, order
            self._nums, self._den = (), 1
            return
        g = math.gcd(den, *nums)
        if g > 1:
            nums = [x // g for x in nums]
            den //= g
        self.valuation, self.order = valuation, order
        self._nums, self._den = tuple(nums), den

    # constructors

    @classmethod
    def zero(cls, order: int) -> "SqrtKSeries":
        return cls._raw(order + 1, [], 1, order)

    @classmethod
    def one(cls, order: int) -> "SqrtKSeries":
        return cls.monomial(0, 1, order)

    @classmethod
    def monomial(cls, exponent: int, coeff, order: int) -> "SqrtKSeries":
        c = _as_fraction(coeff)
        return cls._raw(exponent, [c.numerator], c.denominator, order)

    @classmethod
    def from_k(cls, coeffs: Sequence, order_k: int, valuation_k: int = 0) -> "SqrtKSeries":
        """Build from coefficients of k^valuation_k, k^(valuation_k+1), ...; known through k^order_k."""
        out: list = []
        for c in coeffs:
            out.append(c)
            out.append(0)
        return cls(2 * valuation_k, out, 2 * order_k)

    @classmethod
    def from_dense(cls, coeffs: Sequence, order: int) -> "SqrtKSeries":
        """Coefficients of s^0, s^1, ... ."""
        return cls(0, coeffs, order)

    # access

    @property
    def coeffs(self) -> list[Fraction]:
        """Coefficients for exponents valuation..order (trailing zeros included)."""
        n = self.order - self.valuation + 1
        out = [Fraction(x, self._den) for x in self._nums]
        out.extend([Fraction(0)] * (n - len(out)))
        return out

    def __getitem__(self, e: int) -> Fraction:
        if e > self.order:
            raise IndexError(f"s^{e} is beyond the known order {self.order}")
        i = e - self.valuation
        if i < 0 or i >= len(self._nums):
            return Fraction(0)
        return Fraction(self._nums[i], self._den)

    def k_coeff(self, j: int) -> Fraction:
        return self[2 * j]

    def k_coeffs(self, upto: int | None = None) -> list[Fraction]:
        """Coefficients of k^0..k^upto (requires a k-series)."""
        if upto is None:
            upto = self.order // 2
        return [self[2 * j] for j in range(upto + 1)]

    def t_coeffs(self, upto: int | None = None) -> list[Fraction]:
        """Coefficients of t^0..t^upto where k = 4t."""
        return [c * 4**j for j, c in enumerate(self.k_coeffs(upto))]

    def is_zero(self) -> bool:
        return not self._nums

    def is_k_series(self) -> bool:
        if self.is_zero():
            return True
        if self.valuation < 0:
            return False
        return all(x == 0 for i, x in enumerate(self._nums) if (self.valuation + i) % 2)

    def leading(self) -> Fraction:
        if not self._nums:
            raise ZeroLeadingCoefficient("series vanishes to its order")
        return Fraction(self._nums[0], self._den)

    def _dense_from(self, start: int, n: int) -> list[Fraction]:
        return [self[start + i] if start + i <= self.order else Fraction(0) for i in range(n)]

    # arithmetic

    def _lift(self, other) -> "SqrtKSeries":
        if isinstance(other, SqrtKSeries):
            return other
        c = _as_fraction(other)
        return SqrtKSeries._raw(0, [c.numerator], c.denominator, max(self.order, 0) + 10**9)

    def __add__(self, other) -> "SqrtKSeries":
        b = self._lift(other)
        order = min(self.order, b.order)
        if self.is_zero():
            return b.truncate(order)
        if b.is_zero():
            return self.truncate(order)
        v = min(self.valuation, b.valuation)
        n = order - v + 1
        if n <= 0:
            return SqrtKSeries.zero(order)
        den = self._den * b._den // math.gcd(self._den, b._den)
        fa, fb = den // self._den, den // b._den
        out = [0] * n
        for i, x in enumerate(self._nums):
            j = self.valuation - v + i
            if j < n:
                out[j] += x * fa
        for i, x in enumerate(b._nums):
            j = b.valuation - v + i
            if j < n:
                out[j] += x * fb
        return SqrtKSeries._raw(v, out, den, order)

    __radd__ = __add__

    def __neg__(self) -> "SqrtKSeries":
        return SqrtKSeries._raw(self.valuation, [-x for x in self._nums], self._den, self.order)

    def __sub__(self, other) -> "SqrtKSeries":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "SqrtKSeries":
        return (-self) + other

    def scale(self, c) -> "SqrtKSeries":
        c = _as_fraction(c)
        if c == 0:
            return SqrtKSeries.zero(self.order)
        return SqrtKSeries._raw(self.valuation, [x * c.numerator for x in self._nums],
                                self._den * c.denominator, self.order)

    def __mul__(self, other) -> "SqrtKSeries":
        if not isinstance(other, SqrtKSeries):
            return self.scale(other)
        a, b = self, other
        if a.is_zero() or b.is_zero():
            order = min(a.order + (b.valuation if not b.is_zero() else b.order + 1),
                        b.order + (a.valuation if not a.is_zero() else a.order + 1))
            return SqrtKSeries.zero(order)
        order = min(a.order + b.valuation, b.order + a.valuation)
        v = a.valuation + b.valuation
        n = order - v + 1
        return SqrtKSeries._raw(v, _conv(a._nums, b._nums, n), a._den * b._den, order)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SqrtKSeries":
        if isinstance(other, SqrtKSeries):
            return self * other.invert()
        return self.scale(1 / _as_fraction(other))

    def __rtruediv__(self, other) -> "SqrtKSeries":
        return self.invert().scale(other)

    def __pow__(self, n: int) -> "SqrtKSeries":
        if n < 0:
            return self.invert() ** (-n)
        result = SqrtKSeries.one(self.order - self.valuation) if n == 0 else None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, j: int) -> "SqrtKSeries":
        """Multiply by s^j."""
        return SqrtKSeries._raw(self.valuation + j, list(self._nums), self._den, self.order + j)

    def truncate(self, order: int) -> "SqrtKSeries":
        if order > self.order:
            raise SeriesError(f"cannot extend order {self.order} to {order}")
        return SqrtKSeries._raw(self.valuation, list(self._nums), self._den, order)

    def spread(self, m: int) -> "SqrtKSeries":
        """Substitute s -> s^m (used to read a series in k as a series in s)."""
        nums: list[int] = []
        for x in self._nums:
            nums.append(x)
            nums.extend([0] * (m - 1))
        return SqrtKSeries._raw(self.valuation * m, nums, self._den, self.order * m + (m - 1))

    def invert(self) -> "SqrtKSeries":
        if self.is_zero():
            raise ZeroLeadingCoefficient("cannot invert a series that vanishes to its order")
        v = self.valuation
        r = self.order - v  # relative precision
        a = list(self._nums) + [0] * max(0, r + 1 - len(self._nums))
        den = self._den
        a0 = a[0]
        if a0 < 0:
            a = [-x for x in a]
            den = -den
            a0 = -a0
        # 1/(a(x)/den) = sum C_n x^n / a0^(n+1), C_n integers
        pw = [1]
        for _ in range(r + 1):
            pw.append(pw[-1] * a0)
        C = [den]
        for n in range(1, r + 1):
            acc = 0
            for i in range(1, n + 1):
                if a[i]:
                    acc += a[i] * C[n - i] * pw[i - 1]
            C.append(-acc)
        nums = [C[n] * pw[r - n] for n in range(r + 1)]
        return SqrtKSeries._raw(-v, nums, pw[r + 1], -v + r)

    def sqrt(self) -> "SqrtKSeries":
        if self.is_zero():
            return SqrtKSeries.zero(self.order // 2)
        v = self.valuation
        if v % 2:
            raise OddValuation("sqrt needs an even valuation")
        c0 = self.leading()
        rn, rd = math.isqrt(c0.numerator) if c0.numerator >= 0 else -1, math.isqrt(c0.denominator)
        if c0.numerator < 0 or rn * rn != c0.numerator or rd * rd != c0.denominator:
            raise NonSquareLeading(f"leading coefficient {c0} is not a rational square")
        r = self.order - v
        a = [self[v + i] / c0 for i in range(r + 1)]
        # b^2 = a with b_0 = 1
        b = [Fraction(1)]
        for n in range(1, r + 1):
            acc = a[n]
            for i in range(1, n):
                acc -= b[i] * b[n - i]
            b.append(acc / 2)
        root = Fraction(rn, rd)
        return SqrtKSeries(v // 2, [x * root for x in b], v // 2 + r)

    def compose(self, inner: "SqrtKSeries") -> "SqrtKSeries":
        """self(inner) treating self as a series in its own variable."""
        if inner.is_zero():
            vg = inner.order + 1
        else:
            vg = inner.valuation
        if vg < 1:
            raise NonpositiveInnerValuation("inner series must have valuation >= 1")
        f = self
        if f.is_zero():
            return SqrtKSeries.zero(vg * (f.order + 1) - 1)
        if f.valuation < 0:
            base = inner.invert() ** (-f.valuation)
            return f.shift(-f.valuation).compose(inner) * base
        target = vg * (f.order + 1) - 1
        jmin = max(1, f.valuation)
        if f.order >= jmin:
            target = min(target, inner.order + (jmin - 1) * vg)
        result = SqrtKSeries.zero(target)
        c0 = f[0] if f.valuation <= 0 else 0
        if c0:
            result = result + c0
        power = SqrtKSeries.one(target)
        for j in range(1, f.order + 1):
            if j * vg > target:
                break
            power = power * inner
            if power.order > target:
                power = power.truncate(target)
            c = f[j]
            if c:
                result = result + power.scale(c)
        return result.truncate(min(target, result.order))

    def revert(self) -> "SqrtKSeries":
        """Compositional inverse g with self(g) = s, by Lagrange inversion."""
        if self.is_zero() or self.valuation != 1:
            raise BadValuation("reversion needs valuation exactly 1")
        N = self.order
        w = self.shift(-1).invert()  # s / f(s), valuation 0, order N-1
        coeffs = [Fraction(0)]
        p = SqrtKSeries.one(w.order)
        for n in range(1, N + 1):
            p = p * w
            coeffs.append(p[n - 1] / n)
        return SqrtKSeries(0, coeffs, N)

    def derivative(self) -> "SqrtKSeries":
        nums = [x * (self.valuation + i) for i, x in enumerate(self._nums)]
        return SqrtKSeries._raw(self.valuation - 1, nums, self._den, self.order - 1)

    def evaluate(self, s: float) -> float:
        total = 0.0
        for i, x in enumerate(self._nums):
            total += (x / self._den) * s ** (self.valuation + i)
        return total

    def evaluate_k(self, k: float) -> float:
        return self.evaluate(math.sqrt(k))

    # comparison/serialization

    def __eq__(self, other) -> bool:
        if not isinstance(other, SqrtKSeries):
            return NotImplemented
        return (self.order == other.order and self._nums == other._nums
                and self._den == other._den and (self.is_zero() or self.valuation == other.valuation))

    def __hash__(self) -> int:
        return hash((self.valuation, self.order, self._nums, self._den))

    def agrees(self, other: "SqrtKSeries", upto: int | None = None) -> bool:
        """Equal coefficientwise through s^upto (default: common known order)."""
        top = min(self.order, other.order) if upto is None else upto
        if top > self.order or top > other.order:
            return False
        lo = min(self.valuation, other.valuation, 0)
        return all(self[e] == other[e] for e in range(lo, top + 1))

    def to_json(self) -> dict:
        return {
            "var": "s",
            "valuation": self.valuation,
            "order": self.order,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SqrtKSeries":
        if data.get("var") != "s":
            raise SeriesError("unknown series variable")
        coeffs = [Fraction(int(n), int(d)) for n, d in data["coeffs"]]
        return cls(int(data["valuation"]), coeffs, int(data["order"]))

    def __repr__(self) -> str:
        terms = []
        for i, x in enumerate(self._nums):
            if x:
                terms.append(f"{Fraction(x, self._den)}*s^{self.valuation + i}")
        body = " + ".join(terms) if terms else "0"
        return f"SqrtKSeries({body} + O(s^{self.order + 1}))"


def k_series(order_k: int) -> SqrtKSeries:
    """The series k itself, known through k^order_k."""
    return SqrtKSeries.monomial(2, 1, 2 * order_k)


def t_series_from_ints(coeffs: Sequence[int], order_t: int) -> SqrtKSeries:
    """Series in t = k/4 given by integer coefficients of t^0, t^1, ..."""
    return SqrtKSeries.from_k([Fraction(c, 4**j) for j, c in enumerate(coeffs)], order_t)
