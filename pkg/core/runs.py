"""
runs.py – Corridas discretas y continuas de un sistema asíncrono

Este módulo:
  - Modela secuencias de máscaras en forma de lazo (prefijo finito + ciclo repetido) y
    funciones progresivas ρ con tiempos racionales exactos (fractions.Fraction).
  - Calcula la corrida discreta Φ̂^α(k, μ) y la señal continua Φ^ρ(·, μ), detectando el
    instante a partir del cual la señal es constante o periódica.
  - Expone el periodo mínimo, el valor final, la surjección canónica y la comprobación
    cruzada entre ambos cálculos de corrida.
  - Genera corpus deterministas de funciones progresivas para verificación y pruebas.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from core.boolean import State, TruthTable, UpdateMask, iterate, step_bits
from core.errors import UsageError

Time = Fraction
TimeLike = Union[Fraction, int, str]


def as_time(value: TimeLike) -> Fraction:
    """Convierte a racional exacto. Los float se rechazan."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise UsageError(f"Tiempo no válido: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise UsageError(f"Tiempo no válido: '{value}'") from e
    raise UsageError(f"Los tiempos deben ser racionales exactos, no {type(value).__name__}")


@dataclass(frozen=True, slots=True)
class LassoMaskSequence:
    """α = prefix · cycle^ω. El ciclo nunca está vacío."""

    prefix: tuple[UpdateMask, ...]
    cycle: tuple[UpdateMask, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise UsageError("El ciclo de la secuencia de máscaras no puede estar vacío")
        width = self.cycle[0].width
        for nu in self.prefix + self.cycle:
            if not isinstance(nu, UpdateMask):
                raise UsageError(f"Se esperaba una máscara, recibido {nu!r}")
            if nu.width != width:
                raise UsageError("Máscaras de anchuras distintas en la misma secuencia")

    @property
    def width(self) -> int:
        return self.cycle[0].width

    def cycle_union(self) -> int:
        union = 0
        for nu in self.cycle:
            union |= nu.bits
        return union

    def is_progressive(self) -> bool:
        return self.cycle_union() == (1 << self.width) - 1

    def mask_at(self, k: int) -> UpdateMask:
        if k < 0:
            raise UsageError(f"Índice de máscara negativo: {k}")
        p = len(self.prefix)
        if k < p:
            return self.prefix[k]
        return self.cycle[(k - p) % len(self.cycle)]

    def head(self, count: int) -> tuple[UpdateMask, ...]:
        return tuple(self.mask_at(k) for k in range(count))


@dataclass(frozen=True, slots=True)
class ProgressiveFunction:
    """
    ρ = Σ ν^k · χ_{t_k}. `times` lista t_0 < … < t_{p+c−1}; para k ≥ p,
    t_{k+c} = t_k + period.
    """

    times: tuple[Fraction, ...]
    masks: LassoMaskSequence
    period: Fraction

    def __post_init__(self):
        times = tuple(as_time(t) for t in self.times)
        period = as_time(self.period)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "period", period)
        p, c = len(self.masks.prefix), len(self.masks.cycle)
        if len(times) != p + c:
            raise UsageError(f"Se esperaban {p + c} tiempos, recibidos {len(times)}")
        for a, b in zip(times, times[1:]):
            if not a < b:
                raise UsageError(f"Tiempos no estrictamente crecientes: {a} ≥ {b}")
        if period <= 0:
            raise UsageError(f"El periodo debe ser positivo (recibido {period})")
        if not times[p] + period > times[-1]:
            raise UsageError("El periodo no separa dos vueltas consecutivas del ciclo")
        if not self.masks.is_progressive():
            raise UsageError("La unión de las máscaras del ciclo no cubre todas las coordenadas")

    @classmethod
    def from_masks(cls, masks: LassoMaskSequence, start: TimeLike = 0, step: TimeLike = 1) -> "ProgressiveFunction":
        """Instantes equiespaciados start, start+step, … ."""
        start, step = as_time(start), as_time(step)
        count = len(masks.prefix) + len(masks.cycle)
        return cls(tuple(start + k * step for k in range(count)), masks, step * len(masks.cycle))

    @property
    def width(self) -> int:
        return self.masks.width

    def time_at(self, k: int) -> Fraction:
        if k < 0:
            raise UsageError(f"Índice de instante negativo: {k}")
        p, c = len(self.masks.prefix), len(self.masks.cycle)
        if k < p:
            return self.times[k]
        m, j = divmod(k - p, c)
        return self.times[p + j] + m * self.period

    def mask_at(self, k: int) -> UpdateMask:
        return self.masks.mask_at(k)

    def first_index_after(self, t: TimeLike) -> int:
        """Menor k con t_k > t."""
        t = as_time(t)
        p, c = len(self.masks.prefix), len(self.masks.cycle)
        for k in range(p):
            if self.times[k] > t:
                return k
        base = self.times[p]
        block = max(0, math.floor((t - base) / self.period))
        for m in (block, block + 1):
            for j in range(c):
                if self.times[p + j] + m * self.period > t:
                    return p + m * c + j
        raise AssertionError("sin instante posterior")

    def suffix_after(self, t: TimeLike) -> "ProgressiveFunction":
        """ρ·χ_{(t,∞)}: descarta los instantes t_k ≤ t."""
        k = self.first_index_after(t)
        p, c = len(self.masks.prefix), len(self.masks.cycle)
        if k <= p:
            return ProgressiveFunction(
                self.times[k:], LassoMaskSequence(self.masks.prefix[k:], self.masks.cycle), self.period
            )
        j = (k - p) % c
        cycle = self.masks.cycle[j:] + self.masks.cycle[:j]
        times = tuple(self.time_at(k + i) for i in range(c))
        return ProgressiveFunction(times, LassoMaskSequence((), cycle), self.period)


@dataclass(frozen=True, slots=True)
class ConstantTail:
    state: State


@dataclass(frozen=True, slots=True)
class PeriodicTail:
    """Para t ≥ start, x(t) es el estado del último par (offset, estado) con offset ≤ (t − start) mod period."""

    start: Fraction
    pattern: tuple[tuple[Fraction, State], ...]
    period: Fraction
    _offsets: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "pattern", tuple(self.pattern))
        if not self.pattern or self.pattern[0][0] != 0:
            raise UsageError("El patrón periódico debe empezar en el desfase 0")
        offsets = tuple(off for off, _ in self.pattern)
        if any(not a < b for a, b in zip(offsets, offsets[1:])) or offsets[-1] >= self.period:
            raise UsageError("Desfases del patrón no crecientes o fuera del periodo")
        if len({state for _, state in self.pattern}) < 2:
            raise UsageError("Un patrón periódico necesita al menos dos estados distintos")
        object.__setattr__(self, "_offsets", offsets)

    def value_at(self, t: Fraction) -> State:
        offset = (t - self.start) % self.period
        return self.pattern[bisect_right(self._offsets, offset) - 1][1]


Tail = Union[ConstantTail, PeriodicTail]


@dataclass(frozen=True, slots=True)
class Signal:
    """
    Señal continua por la derecha: vale `initial` antes del primer punto de ruptura, el
    estado de cada ruptura hasta la siguiente y luego sigue la cola.
    """

    initial: State
    breakpoints: tuple[tuple[Fraction, State], ...]
    tail: Tail
    _times: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(self.breakpoints))
        times = tuple(t for t, _ in self.breakpoints)
        if any(not a < b for a, b in zip(times, times[1:])):
            raise UsageError("Puntos de ruptura no estrictamente crecientes")
        last = self.breakpoints[-1][1] if self.breakpoints else self.initial
        if isinstance(self.tail, ConstantTail):
            if self.tail.state != last:
                raise UsageError("La cola constante no coincide con el último valor")
        elif times and times[-1] >= self.tail.start:
            raise UsageError("Los puntos de ruptura deben preceder a la cola periódica")
        object.__setattr__(self, "_times", times)

    @classmethod
    def constant(cls, mu: State) -> "Signal":
        return cls(mu, (), ConstantTail(mu))

    @property
    def width(self) -> int:
        return self.initial.width

    def value_at(self, t: TimeLike) -> State:
        t = as_time(t)
        if isinstance(self.tail, PeriodicTail) and t >= self.tail.start:
            return self.tail.value_at(t)
        idx = bisect_right(self._times, t)
        return self.initial if idx == 0 else self.breakpoints[idx - 1][1]

    def states(self) -> frozenset[State]:
        values = {self.initial}
        values.update(state for _, state in self.breakpoints)
        if isinstance(self.tail, ConstantTail):
            values.add(self.tail.state)
        else:
            values.update(state for _, state in self.tail.pattern)
        return frozenset(values)

    def map_states(self, h) -> "Signal":
        """h(x)(t) = h(x(t)) para una biyección h de estados."""
        if isinstance(self.tail, ConstantTail):
            tail: Tail = ConstantTail(h(self.tail.state))
        else:
            tail = PeriodicTail(
                self.tail.start, tuple((off, h(s)) for off, s in self.tail.pattern), self.tail.period
            )
        return Signal(h(self.initial), tuple((t, h(s)) for t, s in self.breakpoints), tail)

    def change_times(self, lo: Fraction, hi: Fraction) -> list[Fraction]:
        """Instantes en [lo, hi) en los que la señal puede cambiar de valor."""
        found = [t for t in self._times if lo <= t < hi]
        if isinstance(self.tail, PeriodicTail):
            tail = self.tail
            m = max(0, math.floor((lo - tail.start) / tail.period))
            while tail.start + m * tail.period < hi:
                for off in tail._offsets:
                    t = tail.start + m * tail.period + off
                    if lo <= t < hi:
                        found.append(t)
                m += 1
        return sorted(set(found))


def _compress(initial: State, entries: Iterable[tuple[Fraction, State]]) -> tuple[tuple[Fraction, State], ...]:
    kept = []
    previous = initial
    for t, state in entries:
        if state != previous:
            kept.append((t, state))
            previous = state
    return tuple(kept)


def _check_run_inputs(phi: TruthTable, width: int, mu: State) -> None:
    if width != phi.width or mu.width != phi.width:
        raise UsageError(f"Anchuras incompatibles: Φ={phi.width}, máscaras={width}, μ={mu.width}")


def discrete_run(phi: TruthTable, alpha: LassoMaskSequence, mu: State, k: int) -> State:
    """Φ̂^α(−1, μ) = μ; Φ̂^α(k, μ) = Φ^{α_k}(Φ̂^α(k−1, μ))."""
    _check_run_inputs(phi, alpha.width, mu)
    if k < -1:
        raise UsageError(f"El índice discreto debe ser ≥ −1 (recibido {k})")
    if k == -1:
        return mu
    return iterate(phi, alpha.head(k + 1), mu)


def continuous_run(phi: TruthTable, rho: ProgressiveFunction, mu: State) -> Signal:
    """
    Φ^ρ(t, μ) como señal finita. La cola se detecta cuando el par
    (posición en el ciclo, estado previo) se repite.
    """
    _check_run_inputs(phi, rho.width, mu)
    masks = rho.masks
    p, c = len(masks.prefix), len(masks.cycle)
    codes = [nu.bits for nu in masks.prefix + masks.cycle]
    width = phi.width

    states: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    current = mu.bits
    k = 0
    while True:
        if k >= p:
            key = ((k - p) % c, current)
            if key in seen:
                start = seen[key]
                break
            seen[key] = k
        nu = codes[k] if k < p else codes[p + (k - p) % c]
        current = step_bits(phi.outputs, nu, current)
        states.append(current)
        k += 1
    stop = k

    block = states[start:stop]
    if all(s == block[0] for s in block):
        entries = ((rho.time_at(j), State(states[j], width)) for j in range(start + 1))
        return Signal(mu, _compress(mu, entries), ConstantTail(State(block[0], width)))

    entries = ((rho.time_at(j), State(states[j], width)) for j in range(start))
    t_start = rho.time_at(start)
    pattern = _compress(
        State(states[start - 1], width) if start else mu,
        ((rho.time_at(j) - t_start, State(states[j], width)) for j in range(start, stop)),
    )
    if not pattern or pattern[0][0] != 0:
        pattern = ((Fraction(0), State(states[start], width)),) + pattern
    tail = PeriodicTail(t_start, pattern, ((stop - start) // c) * rho.period)
    return Signal(mu, _compress(mu, entries), tail)


def eval_signal(x: Signal, t: TimeLike) -> State:
    return x.value_at(t)


def final_value(x: Signal) -> Optional[State]:
    """lim_{t→∞} x(t) cuando existe."""
    if isinstance(x.tail, ConstantTail):
        return x.tail.state
    return None


def _minimal_period(tail: PeriodicTail) -> Fraction:
    offsets = tail._offsets
    period = tail.period
    changes = sum(1 for i, (_, state) in enumerate(tail.pattern) if state != tail.pattern[i - 1][1])

    def value(offset: Fraction) -> State:
        return tail.pattern[bisect_right(offsets, offset % period) - 1][1]

    for d in range(changes, 0, -1):
        if changes % d:
            continue
        shift = period / d
        probes = set(offsets) | {(off - shift) % period for off in offsets}
        if all(value(u) == value(u + shift) for u in probes):
            return shift
    return period


def _shift_invariant(x: Signal, lo: Fraction, hi: Fraction, shift: Fraction) -> bool:
    """x(t) = x(t + shift) para todo t ∈ [lo, hi)."""
    probes = {lo}
    probes.update(x.change_times(lo, hi))
    probes.update(t - shift for t in x.change_times(lo + shift, hi + shift))
    return all(x.value_at(u) == x.value_at(u + shift) for u in probes if lo <= u < hi)


def detect_period(x: Signal) -> Optional[tuple[Fraction, Fraction]]:
    """
    (T₀, t′) con T₀ el periodo mínimo de la cola y t′ el primer instante alineado con un
    punto de ruptura a partir del cual x(t) = x(t + T₀). None si la señal se estabiliza.
    """
    if isinstance(x.tail, ConstantTail):
        return None
    period = _minimal_period(x.tail)
    start = x.tail.start
    earliest = start
    for t, _ in reversed(x.breakpoints):
        if not _shift_invariant(x, t, start, period):
            break
        earliest = t
    return period, earliest


def canonical_surjection(rho: ProgressiveFunction) -> LassoMaskSequence:
    """s(ρ): la secuencia de máscaras sin los instantes de máscara nula."""
    prefix = tuple(nu for nu in rho.masks.prefix if not nu.is_zero())
    cycle = tuple(nu for nu in rho.masks.cycle if not nu.is_zero())
    return LassoMaskSequence(prefix, cycle)


def run_horizon(rho: ProgressiveFunction) -> int:
    """Número de pasos que cubre el transitorio y al menos un periodo completo de la cola."""
    p, c = len(rho.masks.prefix), len(rho.masks.cycle)
    return p + c * ((1 << rho.width) + 2)


def runs_agree(phi: TruthTable, rho: ProgressiveFunction, mu: State) -> bool:
    """Φ^ρ(t, μ) coincide con Φ̂^α(k, μ) en cada [t_k, t_{k+1}) y antes de t_0."""
    x = continuous_run(phi, rho, mu)
    alpha = rho.masks
    if x.value_at(rho.time_at(0) - 1) != discrete_run(phi, alpha, mu, -1):
        return False
    return all(
        x.value_at(rho.time_at(k)) == discrete_run(phi, alpha, mu, k) for k in range(run_horizon(rho))
    )


def step_values(x: Signal, rho: ProgressiveFunction, count: int) -> list[State]:
    return [x.value_at(rho.time_at(k)) for k in range(count)]


def nonzero_step_values(x: Signal, rho: ProgressiveFunction, count: int) -> list[State]:
    """Valores en los primeros `count` instantes de máscara no nula."""
    values = []
    k = 0
    while len(values) < count:
        if not rho.mask_at(k).is_zero():
            values.append(x.value_at(rho.time_at(k)))
        k += 1
    return values


def shifted_run_identity(phi: TruthTable, rho: ProgressiveFunction, mu: State, t_prime: TimeLike,
                         probes: Sequence[TimeLike]) -> bool:
    """Φ^ρ(t, μ) = Φ^{ρ·χ_{(t′,∞)}}(t, Φ^ρ(t′, μ)) en los instantes de prueba t ≥ t′."""
    t_prime = as_time(t_prime)
    x = continuous_run(phi, rho, mu)
    y = continuous_run(phi, rho.suffix_after(t_prime), x.value_at(t_prime))
    return all(x.value_at(t) == y.value_at(t) for t in map(as_time, probes) if t >= t_prime)


def full_update_rho(width: int) -> ProgressiveFunction:
    """t_k = k con la máscara total en cada instante."""
    return ProgressiveFunction((0,), LassoMaskSequence((), (UpdateMask.top(width),)), 1)


def diagram_corpus(width: int) -> list[ProgressiveFunction]:
    """Para cada ν, una ρ cuya primera máscara es ν seguida de actualizaciones totales."""
    top = UpdateMask.top(width)
    return [
        ProgressiveFunction((0, 1), LassoMaskSequence((UpdateMask(nu, width),), (top,)), 1)
        for nu in range(1 << width)
    ]


def progressive_corpus(width: int, size: int, seed: int = 0) -> list[ProgressiveFunction]:
    """`size` funciones progresivas pseudoaleatorias, deterministas por semilla."""
    rng = random.Random(seed)
    top = (1 << width) - 1
    corpus = []
    for _ in range(size):
        prefix = [rng.randrange(top + 1) for _ in range(rng.randint(0, 3))]
        cycle = [rng.randrange(top + 1) for _ in range(rng.randint(1, 4))]
        union = 0
        for nu in cycle:
            union |= nu
        if union != top:
            slot = rng.randrange(len(cycle))
            cycle[slot] |= top & ~union
        t = Fraction(rng.randint(-3, 3))
        times = []
        for _ in range(len(prefix) + len(cycle)):
            times.append(t)
            t += Fraction(rng.randint(1, 4), rng.randint(1, 3))
        period = times[-1] - times[len(prefix)] + Fraction(rng.randint(1, 4), rng.randint(1, 3))
        masks = LassoMaskSequence(
            tuple(UpdateMask(nu, width) for nu in prefix), tuple(UpdateMask(nu, width) for nu in cycle)
        )
        corpus.append(ProgressiveFunction(tuple(times), masks, period))
    return corpus


def run_corpus(width: int, rhos: Sequence[ProgressiveFunction]) -> list[tuple[State, ProgressiveFunction]]:
    """Producto de todos los estados iniciales por las funciones progresivas dadas."""
    return [(State(mu, width), rho) for rho in rhos for mu in range(1 << width)]


def default_run_corpus(width: int, size: int = 20, seed: int = 0) -> list[tuple[State, ProgressiveFunction]]:
    return run_corpus(width, diagram_corpus(width) + progressive_corpus(width, size, seed))
