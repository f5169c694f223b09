import json

from winding import cache as cache_mod
from winding.cache import Cache, cached_basis_table, canonical_json, params_hash
from winding.spectral import basis_table


def test_roundtrip_bitwise(tmp_path):
    c = Cache(tmp_path)
    fresh = basis_table(3, 5, 10).to_json()
    t1 = cached_basis_table(3, 5, 10, c)
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1
    t2 = cached_basis_table(3, 5, 10, c)  # hit
    assert canonical_json(t1.to_json()) == canonical_json(fresh) == canonical_json(t2.to_json())


def test_fetch_reports_hits(tmp_path):
    c = Cache(tmp_path)
    calls = []
    compute = lambda: calls.append(1) or {"x": [1, 2]}
    assert c.fetch("demo", {"a": 1}, compute) == ({"x": [1, 2]}, False)
    assert c.fetch("demo", {"a": 1}, compute) == ({"x": [1, 2]}, True)
    assert c.fetch("demo", {"a": 2}, compute)[1] is False
    assert len(calls) == 2


def test_version_mismatch_is_miss(tmp_path):
    c = Cache(tmp_path)
    c.put("demo", {"a": 1}, {"x": 1})
    p = c.path("demo", {"a": 1})
    entry = json.loads(p.read_text())
    entry["version"] = -1
    p.write_text(json.dumps(entry))
    assert c.get("demo", {"a": 1}) is None


def test_corrupt_file_is_miss(tmp_path):
    c = Cache(tmp_path)
    c.put("demo", {"a": 1}, {"x": 1})
    c.path("demo", {"a": 1}).write_text("{not json")
    assert c.get("demo", {"a": 1}) is None


def test_params_mismatch_is_miss(tmp_path):
    c = Cache(tmp_path)
    c.put("demo", {"a": 1}, {"x": 1})
    p = c.path("demo", {"a": 1})
    entry = json.loads(p.read_text())
    entry["params"] = {"a": 2}
    p.write_text(json.dumps(entry))
    assert c.get("demo", {"a": 1}) is None


def test_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv(cache_mod.ENV_VAR, str(tmp_path / "c"))
    c = Cache()
    assert c.enabled
    c.put("demo", {"a": 1}, {"x": 1})
    assert (tmp_path / "c").is_dir()
    monkeypatch.delenv(cache_mod.ENV_VAR)
    assert not Cache().enabled
    assert Cache().get("demo", {"a": 1}) is None


def test_params_hash_order_independent():
    assert params_hash({"a": 1, "b": 2}) == params_hash({"b": 2, "a": 1})
    assert params_hash({"a": 1}) != params_hash({"a": 2})
