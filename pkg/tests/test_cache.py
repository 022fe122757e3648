import json

from qsl2.cache import OperatorCache
from qsl2.derham import DeRhamComplex


def test_hit_miss_and_checksum(tmp_path):
    cx = DeRhamComplex(3)
    cache = OperatorCache(tmp_path, 3, "test")
    d1 = cache.get("d1", lambda: cx.d_matrix(1))
    assert (cache.hits, cache.misses) == (0, 1)
    again = OperatorCache(tmp_path, 3, "test")
    assert again.get("d1", lambda: None) == d1
    assert again.hits == 1
    # corrupt the file: the checksum no longer matches and the entry is rebuilt
    path = tmp_path / "r3-vtest" / "d1.json"
    obj = json.loads(path.read_text())
    obj["entries"] = obj["entries"][1:]
    path.write_text(json.dumps(obj))
    third = OperatorCache(tmp_path, 3, "test")
    assert third.get("d1", lambda: cx.d_matrix(1)) == d1
    assert third.misses == 1


def test_versions_do_not_share_entries(tmp_path):
    cx = DeRhamComplex(3)
    OperatorCache(tmp_path, 3, "1").get("d0", lambda: cx.d_matrix(0))
    other = OperatorCache(tmp_path, 3, "2")
    other.get("d0", lambda: cx.d_matrix(0))
    assert other.misses == 1


def test_preload(tmp_path):
    cx = DeRhamComplex(3)
    OperatorCache(tmp_path, 3, "x").preload_complex(cx)
    fresh = DeRhamComplex(3)
    OperatorCache(tmp_path, 3, "x").preload_complex(fresh)
    assert fresh.report() == cx.report()
