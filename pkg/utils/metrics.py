"""
metrics.py – Contadores y tiempos de ejecución en memoria

Características principales:
  - Contadores con nombre (p. ej. "conjugacy.candidates", "conjugacy.pruned").
  - Histogramas de tiempos por buckets (límite superior inclusivo, más un bucket de desborde).
  - Decorador measure_performance para las búsquedas y los análisis del pipeline.
  - Un RLock compartido: las búsquedas paralelas incrementan desde varios hilos y los
    decoradores pueden anidarse.

Uso:
  - inc("conjugacy.candidates", 120)
  - @measure_performance("conjugacy.find_equivalence")
  - get_all_metrics() para exportar una copia del estado actual.
"""

import functools
import threading
import time
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List

from utils.logger import logger

DEFAULT_BUCKETS = [0.01, 0.1, 0.5, 1.0, 5.0]


@dataclass
class Histogram:
    buckets: List[float]
    counts: List[int] = field(init=False)
    sum: float = 0.0
    total_count: int = 0

    def __post_init__(self):
        self.buckets = sorted(self.buckets)
        self.counts = [0] * (len(self.buckets) + 1)

    def observe(self, value: float) -> None:
        self.counts[bisect_left(self.buckets, value)] += 1
        self.sum += value
        self.total_count += 1

    def snapshot(self) -> Dict[str, Any]:
        return {
            "buckets": list(self.buckets),
            "counts": list(self.counts),
            "sum": self.sum,
            "total_count": self.total_count,
        }


_LOCK = threading.RLock()
_COUNTERS: Counter = Counter()
_HISTOGRAMS: Dict[str, Histogram] = {}


def init_metrics_system() -> None:
    """Reinicia contadores e histogramas (usado en las pruebas)."""
    with _LOCK:
        _COUNTERS.clear()
        _HISTOGRAMS.clear()
    logger.debug("Sistema de métricas reiniciado.")


def register_counter(name: str) -> None:
    with _LOCK:
        _COUNTERS.setdefault(name, 0)


def inc(name: str, amount: int = 1) -> None:
    with _LOCK:
        _COUNTERS[name] += amount


def get_counter(name: str) -> int:
    with _LOCK:
        return _COUNTERS.get(name, 0)


def register_histogram(name: str, buckets: List[float]) -> None:
    """Crea el histograma `name`; si ya existe no cambia sus buckets."""
    with _LOCK:
        _HISTOGRAMS.setdefault(name, Histogram(list(buckets)))


def add_histogram_value(name: str, value: float) -> None:
    with _LOCK:
        histogram = _HISTOGRAMS.get(name)
        if histogram is None:
            logger.error(f"Histograma '{name}' no registrado; se descarta el valor {value}")
            return
        histogram.observe(value)


def record_time(metric_name: str, elapsed: float) -> None:
    """Añade un tiempo en segundos, creando el histograma con DEFAULT_BUCKETS si hace falta."""
    with _LOCK:
        register_histogram(metric_name, DEFAULT_BUCKETS)
        add_histogram_value(metric_name, elapsed)
    logger.debug(f"Métrica '{metric_name}' => {elapsed:.6f} seg")


def measure_performance(metric_name: str):
    """Decorador: registra la duración de cada llamada en `metric_name`, también si lanza."""
    def decorator(func: Callable):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                record_time(metric_name, time.perf_counter() - start)
        return wrapper
    return decorator


def get_all_metrics() -> Dict[str, Any]:
    with _LOCK:
        return {
            "counters": dict(_COUNTERS),
            "histograms": {name: h.snapshot() for name, h in _HISTOGRAMS.items()},
        }
