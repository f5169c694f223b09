"""winding: command-line front end.

Angles are integers in pi/4 units ("inf"/"-inf" for open ends).  Exit
codes: 0 ok, 1 verification failure, 2 usage error, 3 cross-check failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Sequence

from .angles import InvalidQuery, WalkQuery, parse_angle
from .elliptic import DomainError
from .excursions import FormDisagreement
from .oracle import BudgetExceeded
from .series import SeriesError
from .spectral import InvalidParams, ModeBoundUnstable

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CROSS = 0, 1, 2, 3


class CrossCheckFailed(RuntimeError):
    pass


class UsageError(ValueError):
    pass


# output

def _cell_csv(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return repr(v)
    return "" if v is None else str(v)


def _cell_json(v):
    if isinstance(v, Fraction):
        return {"num": str(v.numerator), "den": str(v.denominator)}
    return v


def write_table(out, fmt: str, header: Sequence[str], rows: list, extra: dict | None = None) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_cell_csv(v) for v in r])
        out.write(buf.getvalue())
        return
    doc = {"columns": list(header), "rows": [{h: _cell_json(v) for h, v in zip(header, r)} for r in rows]}
    if extra:
        doc.update({k: _cell_json(v) for k, v in extra.items()})
    out.write(json.dumps(doc, indent=2) + "\n")


def parse_rational(text: str) -> Fraction:
    """Inverse of the CSV cell format."""
    if "/" in text:
        n, d = text.split("/")
        if int(d) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(n), int(d))
    return Fraction(int(text))


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _angle(text: str, allow_inf: bool = True):
    return parse_angle(text, allow_inf)


# commands

def _exact(series, order: int) -> list[Fraction]:
    return [Fraction(c) for c in series.t_coeffs(order)]


def cmd_coeffs(a, out) -> int:
    from .blocks import assemble_W_ints
    from .oracle import count_walks
    from .spectral import install_table, spectral_W_ints, table_request

    q = WalkQuery(a.l, a.p, _angle(a.alpha, False), _angle(a.beta_min), _angle(a.beta_max), a.order)
    methods = ["spectral", "operator", "dp"] if a.method == "all" else [a.method]
    if "spectral" in methods and a.cache_dir:
        from .cache import Cache, cached_basis_table
        install_table(cached_basis_table(*table_request(q), cache=Cache(a.cache_dir)))
    runs = {}
    for m in methods:
        if m == "spectral":
            runs[m] = spectral_W_ints(q)
        elif m == "operator":
            runs[m] = assemble_W_ints(q)
        else:
            runs[m] = count_walks(q).as_list(q.order)
    rows = []
    agree_all = True
    for n in range(q.order + 1):
        vals = [Fraction(runs[m][n]) for m in methods]
        row = [n] + vals
        if a.method == "all":
            ok = len(set(vals)) == 1
            agree_all &= ok
            row.append(ok)
        rows.append(row)
    header = ["n"] + (methods + ["agreement"] if a.method == "all" else ["coefficient"])
    write_table(out, a.format, header, rows)
    if not agree_all:
        _note("pipelines disagree")
        return EXIT_CROSS
    return EXIT_OK


def cmd_excursions(a, out) -> int:
    from .excursions import ExcursionQuery, cone_F, excursion_char_exact, excursion_F_alpha
    from .oracle import count_excursions

    N = a.order
    if a.b is not None:
        s = excursion_char_exact(a.b, N)
        write_table(out, a.format, ["n", "coefficient"], [[n, c] for n, c in enumerate(_exact(s, N))])
        return EXIT_OK
    alpha = _angle(a.alpha, False)
    bm, bp = _angle(a.beta_min), _angle(a.beta_max)
    if bm == -float("inf") and bp == float("inf"):
        s = excursion_F_alpha(alpha, N, a.route)
        if a.first_step:
            s = s.scale(Fraction(1, 4))
    else:
        s = cone_F(ExcursionQuery(alpha, bm, bp, N, fixed_first_step=a.first_step))
    vals = _exact(s, N)
    rows = [[n, c] for n, c in enumerate(vals)]
    header = ["n", "coefficient"]
    bad = False
    if a.check:
        dp = count_excursions(alpha, bm, bp, N, fixed_first_step=a.first_step).as_list(N)
        for r, d in zip(rows, dp):
            r += [Fraction(d), r[1] == d]
            bad |= r[1] != d
        header += ["dp", "agreement"]
    write_table(out, a.format, header, rows)
    return EXIT_CROSS if bad else EXIT_OK


def cmd_gessel(a, out) -> int:
    from .excursions import gessel_check, hypergeometric_gessel

    r = gessel_check(a.order, a.residual_order)
    rows = []
    for n in range(0, a.order + 1, 2):
        c = Fraction(r.coefficients[n])
        h = hypergeometric_gessel(n // 2 - 1) if n >= 2 else Fraction(0)
        rows.append([n, c, h, c == h])
    report = {"hypergeometric_ok": r.hypergeometric_ok, "residual_zero": r.residual_zero,
              "residual_order": a.residual_order}
    write_table(out, a.format, ["n", "coefficient", "hypergeometric", "agreement"], rows, report)
    _note(f"residual={'0' if r.residual_zero else 'nonzero'} through t^{a.residual_order}; "
          f"hypergeometric {'ok' if r.hypergeometric_ok else 'MISMATCH'}")
    return EXIT_OK if r.ok else EXIT_CROSS


def cmd_dist(a, out) -> int:
    from .distributions import geometric_mix_dp, secant_table

    d = secant_table(a.point, a.k, a.family)
    take = [al for al, p in sorted(d.buckets.items()) if p > a.min_prob]
    rows = []
    bad = False
    for al in take:
        row = [al, d.buckets[al]]
        if a.mix:
            v, _ = geometric_mix_dp(a.point, a.k, al, a.tail)
            diff = abs(v - d.buckets[al])
            bad |= diff > 1e-8
            row += [v, diff]
        rows.append(row)
    header = ["alpha", "probability"] + (["dp_mix", "diff"] if a.mix else [])
    total = sum(d.buckets.values())
    extra = {"total": total, "tail_bound": d.tail_bound, "absorbed": d.absorbed, "family": d.meta["family"]}
    write_table(out, a.format, header, rows, extra)
    _note(f"total={total!r} absorbed={d.absorbed!r} tail_bound={d.tail_bound:.1e}")
    return EXIT_CROSS if bad else EXIT_OK


def cmd_charfun(a, out) -> int:
    from .distributions import charfun

    variants = ["dn", "cn"] if a.variant == "both" else [a.variant]
    rows = []
    bad = False
    for v in variants:
        r = charfun(v, a.k, a.b)
        diff = abs(r["lattice_sum"] - r["jacobi"])
        bad |= diff > a.tol
        rows.append([v, a.k, a.b, r["lattice_sum"], r["jacobi"], diff])
    write_table(out, a.format, ["variant", "k", "b", "lattice_sum", "jacobi", "diff"], rows)
    return EXIT_CROSS if bad else EXIT_OK


def cmd_loops(a, out) -> int:
    from .loops import LoopQuery, loop_gf
    from .oracle import count_loops

    s = loop_gf(LoopQuery(a.n, a.parity, a.order))
    rows = [[n, c] for n, c in enumerate(_exact(s, a.order))]
    header = ["n", "coefficient"]
    bad = False
    if a.check:
        ct = count_loops(a.n, a.parity, a.order)
        for r in rows:
            d = ct.biased.get(r[0], Fraction(0))
            r += [d, r[1] == d]
            bad |= r[1] != d
        header += ["enumerated", "agreement"]
    write_table(out, a.format, header, rows)
    return EXIT_CROSS if bad else EXIT_OK


def cmd_clusters(a, out) -> int:
    from .loops import cluster_expectation
    from .oracle import cluster_stats

    kinds = ["area", "boundary"] if a.kind == "both" else [a.kind]
    cs = cluster_stats(a.l) if a.check else None
    rows = []
    bad = False
    for kind in kinds:
        e = cluster_expectation(a.n, a.l, kind)
        row = [a.l, a.n, kind, e]
        if cs is not None:
            d = (cs.area if kind == "area" else cs.boundary_minus_2).get(abs(a.n), Fraction(0))
            row += [d, e == d]
            bad |= e != d
        rows.append(row)
    header = ["l", "n", "kind", "expectation"] + (["enumerated", "agreement"] if cs else [])
    write_table(out, a.format, header, rows)
    return EXIT_CROSS if bad else EXIT_OK


def cmd_simulate(a, out) -> int:
    from .distributions import secant_law
    from .oracle import simulate_winding

    if (a.j is None) == (a.k is None):
        raise UsageError("give exactly one of --j or --k")
    d = simulate_winding(a.mode, a.samples, a.seed, j=a.j, k=a.k)
    rows = []
    for al, p in sorted(d.buckets.items()):
        row = [al, p, d.stderr.get(al, 0.0)]
        if a.k is not None:
            row.append(secant_law(a.mode, a.k, al))
        rows.append(row)
    header = ["alpha", "frequency", "stderr"] + (["exact"] if a.k is not None else [])
    write_table(out, a.format, header, rows, {"absorbed": d.absorbed, "seed": a.seed, "samples": a.samples})
    return EXIT_OK


def cmd_verify(a, out) -> int:
    from .verify import run_suite

    checks = run_suite(a.suite, perturb=a.perturb)
    rows = [[c.suite, c.name, "PASS" if c.ok else "FAIL", round(c.seconds, 3), c.detail] for c in checks]
    write_table(out, a.format, ["suite", "check", "status", "seconds", "detail"], rows)
    failed = [c for c in checks if not c.ok]
    for c in failed:
        _note(f"FAILED {c.suite}/{c.name}: {c.detail}")
    return EXIT_VERIFY if failed else EXIT_OK


# parser

def build_parser() -> argparse.ArgumentParser:
    P = argparse.ArgumentParser(prog="winding", description="Walks on Z^2 counted by winding angle.")
    P.add_argument("--cache-dir", default=None, help="cache directory (default: $WINDING_CACHE_DIR)")
    sub = P.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.set_defaults(fn=fn)
        return sp

    c = add("coeffs", cmd_coeffs, "walk generating function coefficients")
    c.add_argument("--l", type=int, required=True)
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--alpha", required=True)
    c.add_argument("--beta-min", default="-inf")
    c.add_argument("--beta-max", default="inf")
    c.add_argument("--order", type=int, default=10)
    c.add_argument("--method", choices=("spectral", "operator", "dp", "all"), default="spectral")

    c = add("excursions", cmd_excursions, "excursion generating functions")
    c.add_argument("--alpha", default="0")
    c.add_argument("--beta-min", default="-inf")
    c.add_argument("--beta-max", default="inf")
    c.add_argument("--order", type=int, default=12)
    c.add_argument("--route", choices=("closed", "alternating", "both"), default="closed")
    c.add_argument("--first-step", action="store_true", help="fix the first step (divide by 4)")
    c.add_argument("--b", type=int, default=None, help="exact F(t,b) for integer b instead")
    c.add_argument("--check", action="store_true", help="compare with the DP oracle")

    c = add("gessel", cmd_gessel, "Gessel walk counts and the algebraic relation")
    c.add_argument("--order", type=int, default=16)
    c.add_argument("--residual-order", type=int, default=40)

    c = add("dist", cmd_dist, "winding law at geometric time")
    c.add_argument("--k", type=float, required=True)
    c.add_argument("--point", choices=("square", "origin"), default="square")
    c.add_argument("--family", default=None, help="square: even|odd, origin: plus|minus")
    c.add_argument("--mix", action="store_true", help="also mix exact DP laws over the time")
    c.add_argument("--tail", type=float, default=1e-10)
    c.add_argument("--min-prob", type=float, default=0.0, help="hide buckets at or below this")

    c = add("charfun", cmd_charfun, "characteristic functions against cn/dn")
    c.add_argument("--k", type=float, required=True)
    c.add_argument("--b", type=float, required=True)
    c.add_argument("--variant", choices=("dn", "cn", "both"), default="both")
    c.add_argument("--tol", type=float, default=1e-8)

    c = add("loops", cmd_loops, "loop generating functions by index")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--parity", choices=("even", "odd", "both"), default="both")
    c.add_argument("--order", type=int, default=12)
    c.add_argument("--check", action="store_true", help="compare with exhaustive enumeration")

    c = add("clusters", cmd_clusters, "expected cluster area / boundary")
    c.add_argument("--l", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--kind", choices=("area", "boundary", "both"), default="both")
    c.add_argument("--check", action="store_true", help="compare with exhaustive enumeration (l <= 4)")

    c = add("simulate", cmd_simulate, "Monte Carlo winding law")
    c.add_argument("--mode", choices=("square", "origin"), default="square")
    c.add_argument("--samples", type=int, default=100000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--j", type=int, default=None, help="fixed time j")
    c.add_argument("--k", type=float, default=None, help="geometric time with parameter k")

    c = add("verify", cmd_verify, "run check suites")
    c.add_argument("--suite", choices=("series", "spectral", "excursions", "distributions", "loops", "all"),
                   default="all")
    c.add_argument("--perturb", action="store_true", help="include a deliberately perturbed check (must fail)")
    return P


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    P = build_parser()
    try:
        a = P.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return a.fn(a, out)
    except (InvalidQuery, DomainError, BudgetExceeded, UsageError, SeriesError, InvalidParams) as e:
        _note(f"error: {e}")
        return EXIT_USAGE
    except (ModeBoundUnstable, FormDisagreement, CrossCheckFailed) as e:
        _note(f"cross-check failed: {e}")
        return EXIT_CROSS


if __name__ == "__main__":
    sys.exit(main())
