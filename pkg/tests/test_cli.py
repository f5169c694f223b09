import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from winding.cli import EXIT_CROSS, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main, parse_rational


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_coeffs_flagship_all_methods():
    code, text = run("coeffs", "--l", "3", "--p", "3", "--alpha", "4", "--order", "10", "--method", "all")
    assert code == EXIT_OK
    r = rows(text)
    coeff = {int(x["n"]): x for x in r}
    assert parse_rational(coeff[6]["spectral"]) == 10
    assert parse_rational(coeff[8]["spectral"]) == 280
    assert parse_rational(coeff[10]["spectral"]) == 5661
    assert all(x["agreement"] == "true" for x in r)


def test_coeffs_parity_zero():
    code, text = run("coeffs", "--l", "1", "--p", "2", "--alpha", "0", "--order", "6")
    assert code == EXIT_OK
    assert all(parse_rational(x["coefficient"]) == 0 for x in rows(text))


def test_csv_json_roundtrip():
    _, c = run("coeffs", "--l", "2", "--p", "2", "--alpha", "2", "--beta-min", "-1", "--beta-max", "3", "--order", "8")
    _, j = run("coeffs", "--l", "2", "--p", "2", "--alpha", "2", "--beta-min", "-1", "--beta-max", "3",
               "--order", "8", "--format", "json")
    doc = json.loads(j)
    from_csv = [parse_rational(x["coefficient"]) for x in rows(c)]
    from_json = [Fraction(int(x["coefficient"]["num"]), int(x["coefficient"]["den"])) for x in doc["rows"]]
    assert from_csv == from_json
    assert from_csv[2::2] == [1, 10, 105, 1176]
    assert "\r" not in c and c.endswith("\n")


def test_parse_rational():
    assert parse_rational("10/1") == 10
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational("7") == 7
    for bad in ("2x", "1/0", ""):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_usage_errors():
    assert run("coeffs", "--l", "2", "--p", "2", "--alpha", "2x")[0] == EXIT_USAGE
    assert run("coeffs", "--l", "3", "--p", "3", "--alpha", "2", "--beta-min", "-1", "--beta-max", "3")[0] == EXIT_USAGE
    assert run("nosuch")[0] == EXIT_USAGE
    assert run("dist", "--k", "1.5")[0] == EXIT_USAGE
    assert run("loops", "--n", "0")[0] == EXIT_USAGE


def test_excursions_and_gessel():
    code, text = run("excursions", "--alpha", "0", "--order", "6", "--check")
    assert code == EXIT_OK
    assert [parse_rational(x["coefficient"]) for x in rows(text)][:5] == [0, 0, 4, 0, 12]
    code, text = run("gessel", "--order", "10", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(text)
    assert doc["residual_zero"] is True


def test_dist_sums_to_one():
    code, text = run("dist", "--k", "0.5", "--point", "square")
    assert code == EXIT_OK
    assert abs(sum(float(x["probability"]) for x in rows(text)) - 1) < 1e-12


def test_charfun_cn():
    code, text = run("charfun", "--k", "0.5", "--b", "2", "--variant", "cn")
    assert code == EXIT_OK
    assert abs(float(rows(text)[0]["lattice_sum"]) + 1) < 1e-10


def test_loops_and_clusters():
    code, text = run("loops", "--n", "1", "--parity", "odd", "--order", "8", "--check")
    assert code == EXIT_OK
    code, text = run("clusters", "--l", "2", "--n", "1", "--check")
    assert code == EXIT_OK
    vals = {x["kind"]: parse_rational(x["expectation"]) for x in rows(text)}
    assert vals == {"area": Fraction(1, 9), "boundary": Fraction(2, 9)}


def test_simulate_deterministic():
    a = run("simulate", "--samples", "20000", "--seed", "5", "--k", "0.5")
    b = run("simulate", "--samples", "20000", "--seed", "5", "--k", "0.5")
    assert a == b and a[0] == EXIT_OK
    c = run("simulate", "--samples", "20000", "--seed", "6", "--k", "0.5")
    assert c[1] != a[1]


def test_verify_exit_codes():
    assert run("verify", "--suite", "series")[0] == EXIT_OK
    assert run("verify", "--suite", "spectral", "--perturb")[0] == EXIT_VERIFY


def test_cache_dir_option(tmp_path):
    code, text = run("--cache-dir", str(tmp_path), "coeffs", "--l", "2", "--p", "2", "--alpha", "0", "--order", "6")
    assert code == EXIT_OK
    assert list(tmp_path.glob("*.json"))
    assert run("--cache-dir", str(tmp_path), "coeffs", "--l", "2", "--p", "2", "--alpha", "0", "--order", "6") == (code, text)


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "winding", "gessel", "--order", "8"], capture_output=True, text=True)
    assert p.returncode == EXIT_OK
    assert p.stdout.splitlines()[0].startswith("n,")


def test_cross_code_is_distinct():
    assert len({EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CROSS}) == 4
