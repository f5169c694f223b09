"""Closed-form pipeline: eigen-sums over the basis f_m.

f_m(z) = cos(2 pi m (v(z) + 1/4)) - cos(pi m/2) with v the normalized
elliptic integral at modulus k1.  Writing g = 2 pi v, the constant pi
cancels against the 1/K(k1) inside v, so g and every f_m have rational
series coefficients.  Powers g^j are computed once; f_m only changes
the scalar weights m^j/j!.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .angles import INF, Case, InvalidQuery, WalkQuery, canonical
from .blocks import b_series, j_series, psi_power_coeff
from .elliptic import EllipticSeriesPack, build_series_pack
from .series import SqrtKSeries

FORMAT_VERSION = 1


class ModeBoundUnstable(RuntimeError):
    pass


class InvalidParams(ValueError):
    pass


def _central(i: int) -> Fraction:
    return Fraction(comb(2 * i, i), 4**i)


def _pack(order: int) -> EllipticSeriesPack:
    # orders are rounded up so that nearby requests share one pack
    return build_series_pack(max(16, -(-order // 8) * 8))


def _moduli(pack: EllipticSeriesPack, modulus: str):
    """(kk, sqrt(kk), 2K(kk)/pi) as series in s."""
    if modulus == "k":
        o = pack.order
        return SqrtKSeries.monomial(2, 1, o), SqrtKSeries.monomial(1, 1, o), pack.twoK_over_pi
    if modulus == "k1":
        return pack.k1, pack.sqrt_k1, pack.twoK_over_pi.compose(pack.sqrt_k1)
    raise InvalidParams("modulus must be 'k' or 'k1'")


def _v_from(kk: SqrtKSeries, sq: SqrtKSeries, twoK: SqrtKSeries, z_degree: int) -> list:
    """pi * v as z-coefficients [z^1..z^z_degree]; index 0 is z^1."""
    pre = (twoK * sq).scale(2).invert()
    inv = kk.invert()
    out = []
    for d in range(1, z_degree + 1):
        if d % 2 == 0:
            out.append(SqrtKSeries.zero(pre.order))
            continue
        n = (d - 1) // 2
        acc = None
        for i in range(n + 1):
            j = n - i
            e = j - i
            term = (kk ** e if e >= 0 else inv ** (-e)).scale(_central(i) * _central(j))
            acc = term if acc is None else acc + term
        out.append((acc * pre).scale(Fraction(1, d)))
    return out


def v_series(modulus: str, z_degree: int, order: int) -> list:
    """Coefficients of pi*v_modulus(z) at z^1..z^z_degree, each known through s^order.

    v = (1/4K) int_0^z dx / sqrt((k - x^2)(1 - k x^2)); multiplying by pi keeps
    everything rational.
    """
    if z_degree < 1:
        raise InvalidParams("z_degree must be >= 1")
    pack = _pack(order + 4 * z_degree + 8)
    kk, sq, twoK = _moduli(pack, modulus)
    return [c.truncate(order) for c in _v_from(kk, sq, twoK, z_degree)]


def landen_conjugation_check(order: int, z_degree: int, perturb: bool = False) -> bool:
    """v_{k1}(psi_k(x)) == v_k(x) coefficientwise through s^order."""
    pack = _pack(order + 4 * z_degree + 8)
    kk, sq, twoK = _moduli(pack, "k1")
    if perturb:
        kk = kk + SqrtKSeries.monomial(8, 1, kk.order)
    v1 = _v_from(kk, sq, twoK, z_degree)
    v0 = _v_from(*_moduli(pack, "k"), z_degree)
    for n in range(1, z_degree + 1):
        acc = SqrtKSeries.zero(order)
        for j in range(1, n + 1):
            acc = acc + v1[j - 1] * psi_power_coeff(n, j, order + 2 * z_degree + 4)
        if not acc.truncate(order).agrees(v0[n - 1].truncate(order), order):
            return False
    return True


# basis table

@dataclass
class BasisCoeffTable:
    order: int
    max_l: int
    max_m: int
    coeff: dict      # (l, m) -> SqrtKSeries, = l [z^l] f_m
    norm_sq: dict    # m -> SqrtKSeries, m (q^-m - q^m)/4
    inv_norm: dict   # m -> SqrtKSeries

    def to_json(self) -> dict:
        return {
            "format": FORMAT_VERSION,
            "order": self.order, "max_l": self.max_l, "max_m": self.max_m,
            "coeff": {f"{l},{m}": c.to_json() for (l, m), c in sorted(self.coeff.items())},
            "norm_sq": {str(m): c.to_json() for m, c in sorted(self.norm_sq.items())},
            "inv_norm": {str(m): c.to_json() for m, c in sorted(self.inv_norm.items())},
        }

    @classmethod
    def from_json(cls, d: dict) -> "BasisCoeffTable":
        if d.get("format") != FORMAT_VERSION:
            raise ValueError("basis table format version mismatch")
        coeff = {}
        for key, v in d["coeff"].items():
            l, m = (int(x) for x in key.split(","))
            coeff[(l, m)] = SqrtKSeries.from_json(v)
        return cls(d["order"], d["max_l"], d["max_m"], coeff,
                   {int(m): SqrtKSeries.from_json(v) for m, v in d["norm_sq"].items()},
                   {int(m): SqrtKSeries.from_json(v) for m, v in d["inv_norm"].items()})


@lru_cache(maxsize=8)
def _g_powers(max_l: int, order: int) -> tuple:
    """G[j][l] = [z^l] g^j with g = 2 pi v_{k1}; coefficients through s^order."""
    pack = _pack(order + 2 * max_l + 8)
    kk, sq, twoK = _moduli(pack, "k1")
    g = [c.scale(2) for c in _v_from(kk, sq, twoK, max_l)]  # g[d-1] is z^d
    one_row = [None] * (max_l + 1)
    G = [one_row]
    cur = {d: g[d - 1] for d in range(1, max_l + 1) if not g[d - 1].is_zero()}
    G.append(cur)
    for j in range(2, max_l + 1):
        nxt = {}
        for d1, a in cur.items():
            for d2, b in G[1].items():
                if d1 + d2 > max_l:
                    continue
                t = a * b
                nxt[d1 + d2] = t if d1 + d2 not in nxt else nxt[d1 + d2] + t
        G.append(nxt)
        cur = nxt
    return tuple(G)


def basis_table(max_l: int, max_m: int, order: int) -> BasisCoeffTable:
    return _basis_table(max_l, max_m, order)


_PRELOADED: dict = {}


def install_table(tab: BasisCoeffTable) -> None:
    """Make a (cached) table visible to the eigen-sums."""
    _PRELOADED[(tab.max_l, tab.max_m, tab.order)] = tab


def table_request(q: WalkQuery, max_l: int | None = None) -> tuple[int, int, int]:
    """(max_l, max_m, order) of the table spectral_W(q) will ask for."""
    L = max(q.l, q.p) if max_l is None else max_l
    return L, _table_modes(q.order, L), 2 * q.order + 2 * L


def _basis_table(max_l: int, max_m: int, order: int) -> BasisCoeffTable:
    tab = _PRELOADED.get((max_l, max_m, order))
    return tab if tab is not None else _build_table(max_l, max_m, order)


@lru_cache(maxsize=8)
def _build_table(max_l: int, max_m: int, order: int) -> BasisCoeffTable:
    G = _g_powers(max_l, order)
    coeff = {}
    for m in range(1, max_m + 1):
        for l in range(1, max_l + 1):
            if (l - m) % 2:
                continue
            acc = None
            for j in range(1, l + 1):
                if (j - m) % 2 or l not in G[j]:
                    continue
                if m % 2 == 0:
                    if j < 2:
                        continue
                    w = Fraction((-1) ** (m // 2 + j // 2) * m**j, factorial(j))
                else:
                    w = Fraction(-((-1) ** ((m - 1) // 2 + (j - 1) // 2)) * m**j, factorial(j))
                term = G[j][l].scale(w)
                acc = term if acc is None else acc + term
            if acc is not None:
                coeff[(l, m)] = acc.scale(l)
    pack = _pack(order + 4 * max_m + 8)
    norm_sq, inv_norm = {}, {}
    for m in range(1, max_m + 1):
        qm = pack.q_power(4 * m)
        qmi = pack.q_power(-4 * m)
        ns = (qmi - qm).scale(Fraction(m, 4))
        inv = (qm * (SqrtKSeries.one(pack.order) - qm * qm).invert()).scale(Fraction(4, m))
        prod = ns * inv
        if not prod.agrees(SqrtKSeries.one(prod.order), prod.order):
            raise AssertionError("norm closed form and its reciprocal disagree")
        norm_sq[m], inv_norm[m] = ns.truncate(order), inv.truncate(order + 4 * m)
    return BasisCoeffTable(order, max_l, max_m, coeff, norm_sq, inv_norm)


def table_invariants(tab: BasisCoeffTable) -> bool:
    """Parity of coefficients and norm identity."""
    for (l, m) in tab.coeff:
        if (l - m) % 2:
            return False
    pack = _pack(tab.order + 4 * tab.max_m + 8)
    for m, ns in tab.norm_sq.items():
        ref = (pack.q_power(-4 * m) - pack.q_power(4 * m)).scale(Fraction(m, 4))
        if not ns.agrees(ref.truncate(ns.order), ns.order):
            return False
    return True


# eigenvalues

def _qpow(pack: EllipticSeriesPack, quarters: int) -> SqrtKSeries:
    return pack.q_power(quarters)


def eigenvalue(kind: str, params: tuple, m: int, order: int) -> SqrtKSeries:
    """Eigenvalue on f_m; angles in pi/4 units, +-INF allowed where the limit exists.

    kinds: "Y" (alpha), "A" (alpha > 0), "J" (alpha > 0, beta_minus < 0),
    "B" (alpha >= 0, beta_minus < 0, beta_plus > alpha), and the base
    operators "Jk", "Bk", "Ak".
    """
    if m < 1:
        raise InvalidParams("m must be >= 1")
    return _eigenvalue(kind, tuple(params), m, order)


@lru_cache(maxsize=None)
def _eigenvalue(kind: str, params: tuple, m: int, order: int) -> SqrtKSeries:
    pack = _pack(order + 8)
    one = SqrtKSeries.one(pack.order)
    twoK = pack.twoK_over_pi
    # q^{m a / pi} for an angle a pi/4  ->  q^{m a/4}  ->  quarters = m a
    if kind == "Y":
        (a,) = params
        return (twoK * _qpow(pack, m * abs(a))).scale(Fraction(1, m)).truncate(order)
    if kind == "Jk":
        return eigenvalue("J", (2, -2), m, order)
    if kind == "Bk":
        return eigenvalue("B", (0, -2, 2), m, order)
    if kind == "Ak":
        return eigenvalue("A", (2,), m, order)
    if kind == "A":
        (a,) = params
        if not a > 0:
            raise InvalidParams("A needs alpha > 0")
        x = _qpow(pack, m * a)
        val = (x * (one - x * x).invert()) * twoK.invert()
        return val.scale(m).truncate(order)
    if kind == "J":
        a, bm = params
        if not (a > 0 and bm < 0):
            raise InvalidParams("J needs alpha > 0 > beta_minus")
        x = _qpow(pack, m * a)
        if bm == -INF:
            return x.truncate(order)
        e = _qpow(pack, -2 * m * int(bm))  # q^{-2 m beta_-/pi}
        val = (one - e) * x * (one - e * x * x).invert()
        return val.truncate(order)
    if kind == "B":
        a, bm, bp = params
        if not (a >= 0 and bm < 0 and bp > a):
            raise InvalidParams("B needs beta_minus < 0 <= alpha < beta_plus")
        x = _qpow(pack, m * a)
        lead = twoK.scale(Fraction(1, m))
        if bm == -INF and bp == INF:
            return (lead * x).truncate(order)
        if bm == -INF:
            return (lead * (x - _qpow(pack, m * (2 * int(bp) - a)))).truncate(order)
        e = _qpow(pack, -2 * m * int(bm))
        if bp == INF:
            return (lead * (one - e) * x).truncate(order)
        r = _qpow(pack, m * (2 * int(bp) - a))
        val = lead * (one - e) * (x - r) * (one - e * _qpow(pack, 2 * m * int(bp))).invert()
        return val.truncate(order)
    raise InvalidParams(f"unknown eigenvalue family {kind!r}")


# eigen-sums

def _case_params(c: Case) -> tuple[str, tuple, Fraction]:
    if c.kind == "Y":
        return "Y", (c.alpha,), Fraction(1)
    if c.kind == "B":
        return "B", (c.alpha, c.bm, c.bp), Fraction(1)
    if c.kind == "J":
        return "J", (c.alpha, c.bm), Fraction(1, c.l)
    if c.kind == "A":
        return "A", (c.alpha,), Fraction(1, c.l * c.p)
    raise InvalidQuery(c.kind)


def _eig_valuation(kind: str, params: tuple, m: int) -> int:
    a = abs(params[0])
    return m * a


@lru_cache(maxsize=None)
def _products(l: int, p: int, m: int, N: int, max_l: int):
    """c_l c_p / |f_m|^2 through s^(2N), or None if it vanishes by parity."""
    if (l - m) % 2 or (p - m) % 2:
        return None
    work = 2 * N + 2 * max_l
    tab = _basis_table(max_l, _table_modes(N, max_l), work)
    if m > tab.max_m:
        raise ModeBoundUnstable("mode beyond the basis table")
    prod = tab.coeff[(l, m)] * tab.coeff[(p, m)] * tab.inv_norm[m]
    return prod


def _table_modes(N: int, max_l: int) -> int:
    # term valuation >= 4m - 2(l+p); modes beyond (2N + 4 max_l)/4 + 2 never reach s^(2N)
    return (2 * N + 4 * max_l) // 4 + 3


def spectral_W(q: WalkQuery, max_l: int | None = None) -> SqrtKSeries:
    N = q.order
    if (q.l + q.p) % 2:
        return SqrtKSeries.zero(2 * N)
    c = canonical(q.l, q.p, q.alpha, q.beta_minus, q.beta_plus, nonneg_alpha=True)
    kind, params, pref = _case_params(c)
    L = max(q.l, q.p) if max_l is None else max_l
    if max(c.l, c.p) > L:
        raise InvalidQuery("l, p beyond the basis table")
    target = 2 * N
    M = _table_modes(N, L)
    total = SqrtKSeries.zero(target)
    last_nonzero = 0
    for m in range(1, M + 1):
        P = _products(c.l, c.p, m, N, L)
        if P is None or P.is_zero():
            continue
        eig = _eigenvalue(kind, params, m, target - P.valuation + 2)
        term = (eig * P).truncate(target)
        if term.order < target:
            raise ModeBoundUnstable(f"precision loss at mode {m}: order {term.order} < {target}")
        if not term.is_zero():
            last_nonzero = m
        total = total + term
    if last_nonzero > M - 2:
        raise ModeBoundUnstable(f"modes up to {M} still contribute")
    out = total.scale(pref)
    if out.valuation < 0 or not out.is_k_series():
        raise AssertionError("spectral sum is not a power series in k")
    return out


def spectral_W_ints(q: WalkQuery, max_l: int | None = None) -> list[int]:
    s = spectral_W(q, max_l)
    out = []
    for c in s.t_coeffs(q.order):
        if c.denominator != 1:
            raise AssertionError("non-integer walk count")
        out.append(int(c))
    return out


# diagnostics

def factorization_check(l: int, p: int, order: int) -> bool:
    """J_{l,p} = sum_m A_{l,m} B_{m,p} with A taken from the eigen-sum
    (quadrant case, alpha = pi/2) and B, J from the binomial blocks."""
    N = order
    J = j_series(l, p, N)
    acc = SqrtKSeries.zero(2 * N)
    # a quadrant walk from (m,0) to (0,l) needs at least max(l,m) steps
    for m in range(1, N + 1):
        if (m + p) % 2:
            continue
        A = spectral_W(WalkQuery(l, m, 2, 0, 2, N))
        acc = acc + A * b_series(m, p, N)
    return acc.agrees(J, 2 * N)


def _exact_at(c: SqrtKSeries, s: Fraction) -> Fraction:
    return sum((v * s ** (c.valuation + i) for i, v in enumerate(c.coeffs)), Fraction(0))


def orthogonality_shadow(s: Fraction, max_l: int, max_m: int, order: int) -> float:
    """Evaluate the truncated table at k = s^2 and return the largest entry of
    |G - I|, G the normalized Gram matrix sum_{l<=max_l} c_l(m) c_l(m')/l.
    Diagnostic only: the truncated series are not the true coefficients."""
    tab = _basis_table(max_l, max_m, order)
    vals = {key: _exact_at(c, s) for key, c in tab.coeff.items()}
    norms = [float(_exact_at(tab.norm_sq[m], s)) for m in range(1, max_m + 1)]
    worst = 0.0
    for m in range(1, max_m + 1):
        for m2 in range(m, max_m + 1):
            g = sum((vals[(l, m)] * vals[(l, m2)] / l for l in range(1, max_l + 1)
                     if (l, m) in vals and (l, m2) in vals), Fraction(0))
            ref = 1.0 if m == m2 else 0.0
            worst = max(worst, abs(float(g) / (norms[m - 1] * norms[m2 - 1]) ** 0.5 - ref))
    return worst


def norm_shadow(s: Fraction, max_l: int, m: int, order: int) -> tuple[float, float]:
    """(sum_l c_l(m)^2 / l, closed-form |f_m|^2) at k = s^2."""
    tab = _basis_table(max_l, m, order)
    direct = sum((_exact_at(tab.coeff[(l, m)], s) ** 2 / l for l in range(1, max_l + 1)
                  if (l, m) in tab.coeff), Fraction(0))
    return float(direct), float(_exact_at(tab.norm_sq[m], s))
