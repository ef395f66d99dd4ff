import threading

from utils import cache_manager
from utils.cache_manager import cached, clear_cache, delete_cache_key, get_all_keys, get_cache, has_cache, set_cache


def setup_function():
    clear_cache()


def test_set_and_get_cache():
    set_cache("graph:2:0.3.1.3", {"data": 123})
    assert get_cache("graph:2:0.3.1.3") == {"data": 123}
    assert has_cache("graph:2:0.3.1.3")
    assert get_cache("no_existe") is None


def test_delete_and_clear_by_prefix():
    set_cache("graph:a", 1)
    set_cache("graph:b", 2)
    set_cache("omega:3", 3)
    delete_cache_key("graph:a")
    assert not has_cache("graph:a")
    clear_cache("graph:")
    assert get_all_keys() == ["omega:3"]
    clear_cache()
    assert get_all_keys() == []


def test_cached_computes_once():
    calls = []

    def compute():
        calls.append(1)
        return "valor"

    assert cached("clave", compute) == "valor"
    assert cached("clave", compute) == "valor"
    assert len(calls) == 1


def test_cache_concurrent_access():
    def worker(i):
        for j in range(100):
            set_cache(f"k{i}:{j}", j)
            assert cached(f"k{i}:{j}", lambda: -1) == j

    threads = [threading.Thread(target=worker, args=(i,)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(cache_manager.get_all_keys()) == 400
