"""Check suites behind `winding verify`.

Each suite returns a list of Check rows; a suite passes iff every row does.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .angles import INF, InvalidQuery, WalkQuery
from .blocks import assemble_W_ints, gram_check
from .series import SqrtKSeries


@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0


# the pipeline grid

GRID_ALPHAS = (0, 2, -2, 4, -4, 6, -6, 8)
GRID_INTERVALS = ((-INF, INF), (-2, 2), (0, INF), (-2, INF))
GRID_HALF_INTERVALS = ((-1, 2), (-1, 3))  # pi/4 ends, even l and p only


def pipeline_cells(max_lp: int = 6, order: int = 14) -> tuple[list[WalkQuery], list[tuple]]:
    """(cells, excluded).  A cell is excluded when alpha lies outside the
    closure of I (the series is 0 by support) or alpha = 0 sits on an end."""
    cells, excluded = [], []
    for l in range(1, max_lp + 1):
        for p in range(1, max_lp + 1):
            ivs = GRID_INTERVALS + (GRID_HALF_INTERVALS if l % 2 == 0 and p % 2 == 0 else ())
            for a in GRID_ALPHAS:
                for bm, bp in ivs:
                    if not bm <= a <= bp or (a == 0 and 0 in (bm, bp)):
                        excluded.append((l, p, a, bm, bp))
                        continue
                    cells.append(WalkQuery(l, p, a, bm, bp, order))
    return cells, excluded


def triple_pipeline(cells: list[WalkQuery], dp: bool = True) -> list[tuple]:
    """Mismatching cells as (query, spectral, operator, dp)."""
    from .oracle import count_walks
    from .spectral import spectral_W_ints

    bad = []
    for q in cells:
        s = spectral_W_ints(q)
        o = assemble_W_ints(q)
        d = count_walks(q).as_list(q.order) if dp else o
        if not s == o == d:
            bad.append((q, s, o, d))
    return bad


# suites

def _timed(suite: str, name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    t = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as e:  # a crash is a failed check, reported by name
        ok, detail = False, f"{type(e).__name__}: {e}"
    return Check(suite, name, bool(ok), detail, time.perf_counter() - t)


def _rand_series(rng: random.Random, order: int) -> SqrtKSeries:
    return SqrtKSeries.from_dense([Fraction(rng.randint(-5, 5)) for _ in range(9)], order)


def suite_series() -> list[Check]:
    from .elliptic import agm_eval, build_series_pack, jacobi_sn_cn_dn, jacobi_zeta

    S = "series"
    out = []

    def ring():
        rng = random.Random(7)
        for _ in range(20):
            a, b, c = (_rand_series(rng, 12) for _ in range(3))
            if not ((a + b) == (b + a) and a * b == b * a and (a * b) * c == a * (b * c)
                    and a * (b + c) == a * b + a * c):
                return False, "ring law failed"
        return True, "20 random triples"

    def roundtrips():
        rng = random.Random(11)
        one = SqrtKSeries.one(16)
        for _ in range(20):
            a = _rand_series(rng, 16)
            a = a + one.scale(6)  # nonzero constant term
            if not (a * a.invert()).agrees(one, 16):
                return False, "invert"
            sq = one + a.shift(2).truncate(16)
            if not (sq.sqrt() * sq.sqrt()).agrees(sq, 16):
                return False, "sqrt"
            r = SqrtKSeries.monomial(1, 1, 16) + a.shift(2).truncate(16)
            if not r.compose(r.revert()).agrees(SqrtKSeries.monomial(1, 1, 16), 16):
                return False, "revert"
        return True, "invert, sqrt, revert"

    def pack_values():
        p = build_series_pack(12)
        q = p.q_of_k.k_coeffs(3)
        K = p.twoK_over_pi.k_coeffs(3)
        want_q = [0, 0, Fraction(1, 16), 0]
        want_K = [1, 0, Fraction(1, 4), 0]
        return q == want_q and K == want_K, f"q {' '.join(map(str, q))}; 2K/pi {' '.join(map(str, K))}"

    def landen_q():
        p = build_series_pack(40)
        lhs = p.q_of_k.compose(p.sqrt_k1)  # s -> sqrt(k1)
        return lhs.agrees(p.q_of_k * p.q_of_k, 40), "q(k1) = q^2 through k^20"

    def agm_K():
        K = agm_eval(0.5).K
        return abs(K - 1.685750354812596) < 1e-12, f"K(1/2) = {K!r}"

    def zeta_add():
        worst = 0.0
        k = 0.5
        for u in (0.1, 0.3, 0.5, 0.7, 0.9):
            for v in (0.2, 0.4, 0.6, 0.8, 1.0):
                su, sv, suv = (jacobi_sn_cn_dn(x, k)[0] for x in (u, v, u + v))
                r = jacobi_zeta(u + v, k) - jacobi_zeta(u, k) - jacobi_zeta(v, k) + k * k * su * sv * suv
                worst = max(worst, abs(r))
        return worst < 1e-11, f"max residual {worst:.2e}"

    for name, fn in (("ring-laws", ring), ("roundtrips", roundtrips), ("pack-values", pack_values),
                     ("landen-q", landen_q), ("agm-K", agm_K), ("zeta-addition", zeta_add)):
        out.append(_timed(S, name, fn))
    return out


def suite_spectral(perturb: bool = False) -> list[Check]:
    from .oracle import count_walks
    from .spectral import (basis_table, factorization_check, landen_conjugation_check,
                           orthogonality_shadow, spectral_W_ints, table_invariants)

    S = "spectral"
    out = [
        _timed(S, "landen-conjugation", lambda: (landen_conjugation_check(12, 5), "z^5, s^12")),
        _timed(S, "table-invariants", lambda: (table_invariants(basis_table(6, 6, 24)), "l, m <= 6")),
    ]
    if perturb:
        out.append(_timed(S, "landen-conjugation-perturbed",
                          lambda: (landen_conjugation_check(12, 5, perturb=True), "k1 + s^8")))

    def flagship():
        q = WalkQuery(3, 3, 4, order=10)
        want = [0] * 6 + [10, 0, 280, 0, 5661]
        s, o, d = spectral_W_ints(q), assemble_W_ints(q), count_walks(q).as_list(10)
        return s == o == d == want, f"{s[6::2]}"

    def grid():
        cells, excluded = pipeline_cells()
        bad = triple_pipeline(cells)
        return not bad, f"{len(cells)} cells, {len(bad)} mismatches, {len(excluded)} excluded"

    def gram():
        ok = all(gram_check(l, p, 12) for l in range(1, 7) for p in range(1, 7))
        return ok, "l, p <= 6"

    def factor():
        ok = all(factorization_check(l, p, 12) for l in range(1, 5) for p in range(1, 5) if (l + p) % 2 == 0)
        return ok, "J = A B, l, p <= 4"

    def ortho():
        w = orthogonality_shadow(Fraction(1, 2), 16, 4, 60)
        return w < 1e-12, f"max |G - I| = {w:.1e} at k = 1/4"

    for name, fn in (("flagship-W33", flagship), ("triple-pipeline", grid), ("gram", gram),
                     ("factorization", factor), ("orthogonality-shadow", ortho)):
        out.append(_timed(S, name, fn))
    return out


def suite_excursions() -> list[Check]:
    from .excursions import (ExcursionQuery, cone_F_ints, excursion_char_exact, excursion_F_alpha,
                             fourier_combination, gessel_check, return_angle_prob, F_near_quarter)
    from .oracle import count_excursions

    S = "excursions"

    def routes():
        for a in range(0, 9, 2):
            c = excursion_F_alpha(a, 14, "closed")
            if not c.agrees(excursion_F_alpha(a, 14, "alternating"), 28):
                return False, f"alpha={a}"
            d = count_excursions(a, N=14).as_list(14)
            if [int(x) for x in c.t_coeffs(14)] != d:
                return False, f"dp alpha={a}"
        return True, "0 <= alpha <= 2 pi, order 14"

    def specials():
        got = [[int(c) for c in excursion_char_exact(b, 12).t_coeffs(4)] for b in (0, 1, 2)]
        want = [[0, 0, 4, 0, 20], [0, 0, 4, 0, 12], [0, 0, 4, 0, 4]]
        counts = {a: count_excursions(a, N=12).as_list(12) for a in range(-12, 13, 2)}
        four = all(fourier_combination(b, counts, 12) == list(excursion_char_exact(b, 12).t_coeffs(12))
                   for b in (0, 1, 2))
        return got == want and four, f"{got}"

    def gessel():
        r = gessel_check(16, 40)
        return r.ok, f"{r.coefficients[2::2]}"

    def cones():
        for a, bm, bp in ((0, -2, 2), (0, -2, 6), (2, -1, 3)):
            q = ExcursionQuery(a, bm, bp, 12)
            if cone_F_ints(q) != count_excursions(a, bm, bp, N=12, fixed_first_step=True).as_list(12):
                return False, f"{(a, bm, bp)}"
        return True, "3 cones"

    def ret():
        worst = max(abs(F_near_quarter(m) - return_angle_prob(m)) for m in (0, 1, 2))
        return worst < 1e-2, f"max gap {worst:.1e}"

    return [_timed(S, n, f) for n, f in (("routes", routes), ("specials", specials), ("gessel", gessel),
                                         ("cones", cones), ("return-angle", ret))]


def suite_distributions() -> list[Check]:
    from .distributions import charfun, geometric_mix_dp, secant_law, secant_table

    S = "distributions"

    def mix():
        worst = 0.0
        for k in (0.3, 0.5):
            for pt, aa in (("square", (0, 2, -4, 8)), ("origin", (1, -1, 3, -5))):
                for a in aa:
                    v, _ = geometric_mix_dp(pt, k, a, 1e-10)
                    worst = max(worst, abs(v - secant_law(pt, k, a)))
        return worst < 1e-8, f"max gap {worst:.1e}"

    def norm():
        worst = max(abs(sum(secant_table("square", k, f).buckets.values()) - 1.0)
                    for k in (0.3, 0.5, 0.7) for f in ("even", "odd"))
        return worst < 1e-10, f"max defect {worst:.1e}"

    def cf():
        worst = 0.0
        for k in (0.3, 0.5, 0.7):
            for b in (0.3, 0.7, 1.1):
                for v in ("dn", "cn"):
                    r = charfun(v, k, b)
                    worst = max(worst, abs(r["lattice_sum"] - r["jacobi"]))
        return worst < 1e-8, f"max gap {worst:.1e}"

    return [_timed(S, n, f) for n, f in (("secant-vs-dp", mix), ("normalization", norm), ("charfun", cf))]


def suite_loops() -> list[Check]:
    from .loops import LoopQuery, cluster_expectation, loop_gf, loop_identity
    from .oracle import cluster_stats, count_loops

    S = "loops"

    def counts():
        for par, N in (("odd", 10), ("even", 12)):
            ct = count_loops(1, par, N)
            s = loop_gf(LoopQuery(1, par, N)).t_coeffs(N)
            if any(ct.biased.get(n, 0) != s[n] for n in range(1, N + 1)):
                return False, par
        return True, "odd <= 10, even <= 12"

    def ident():
        return all(loop_identity(n, 20) for n in (1, 2, 3)), "n = 1, 2, 3 to order 20"

    def clusters():
        for l in (1, 2, 3):
            cs = cluster_stats(l)
            for n in range(1, l + 2):
                if cs.area.get(n, 0) != cluster_expectation(n, l, "area"):
                    return False, f"area l={l} n={n}"
                if cs.boundary_minus_2.get(n, 0) != cluster_expectation(n, l, "boundary"):
                    return False, f"boundary l={l} n={n}"
        return True, "l <= 3"

    return [_timed(S, n, f) for n, f in (("loop-counts", counts), ("even-odd", ident), ("clusters", clusters))]


SUITES = {
    "series": suite_series,
    "spectral": suite_spectral,
    "excursions": suite_excursions,
    "distributions": suite_distributions,
    "loops": suite_loops,
}


def run_suite(name: str, perturb: bool = False) -> list[Check]:
    if name == "all":
        out = []
        for n in SUITES:
            out += run_suite(n, perturb)
        return out
    if name not in SUITES:
        raise InvalidQuery(f"unknown suite {name!r}")
    if name == "spectral":
        return suite_spectral(perturb)
    return SUITES[name]()
