import threading
from typing import Any, Callable, Dict, Optional

# ------------------------------------------------------------------------------------
# Módulo de gestión de caché (cache_manager.py)
# ------------------------------------------------------------------------------------
# Caché en memoria protegida por un lock. La orquestación la usa para no reconstruir
# grafos de transición ni repetir análisis sobre la misma tabla; las claves llevan un
# prefijo por tipo de resultado ("graph:", "fixed:", ...) seguido de la huella de la tabla.
# ------------------------------------------------------------------------------------

_cache: Dict[str, Any] = {}

_lock = threading.Lock()


def get_cache(key: str) -> Optional[Any]:
    """Valor almacenado para `key`, o None."""
    with _lock:
        return _cache.get(key)


def set_cache(key: str, value: Any) -> None:
    with _lock:
        _cache[key] = value


def has_cache(key: str) -> bool:
    with _lock:
        return key in _cache


def delete_cache_key(key: str) -> None:
    with _lock:
        _cache.pop(key, None)


def get_all_keys() -> list:
    with _lock:
        return list(_cache.keys())


def clear_cache(prefix: Optional[str] = None) -> None:
    """
    Elimina todas las entradas, o solo las que empiezan por `prefix`.

    Args:
        prefix (str, opcional): p. ej. "graph:" para descartar solo los grafos.
    """
    with _lock:
        if prefix is None:
            _cache.clear()
            return
        for key in [k for k in _cache if k.startswith(prefix)]:
            del _cache[key]


def cached(key: str, compute: Callable[[], Any]) -> Any:
    """
    Devuelve el valor de `key`, calculándolo con `compute()` la primera vez. El cálculo
    se hace fuera del lock; si dos hilos coinciden, prevalece el primero en guardar.
    """
    with _lock:
        if key in _cache:
            return _cache[key]
    value = compute()
    with _lock:
        return _cache.setdefault(key, value)
