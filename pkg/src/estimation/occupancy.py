"""
Acumulador de Ocupação.

Mede, para cada nível da grade, o tempo exato em que a carga de uma fila
permaneceu acima do nível. Os trechos são lineares, então a interseção com
{q > u} tem forma fechada e o estimador não tem viés de amostragem no tempo.

O tempo é dividido em n_bins faixas de mesma largura sobre [0, horizon];
o burn-in e os lotes das médias em lotes são recortados nessas faixas.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..exceptions import EstimationError, ParameterError
from ..models.estimates import LevelGrid, TailEstimate
from ..models.trajectory import PathChunk, Segment
from .intervals import batch_means_ci, centered_interval

BURN_IN_FRACTION = 0.05
BURN_IN_MINIMUM = 1e3
DEFAULT_BATCHES = 32
VECTOR_BATCH = 1 << 16


def default_burn_in(horizon: float) -> float:
    """Burn-in padrão: 5% do horizonte, no mínimo 10^3 unidades de tempo."""
    return max(BURN_IN_FRACTION * horizon, BURN_IN_MINIMUM)


def time_above(t0, t1, q0, slope, levels: np.ndarray):
    """
    Sub-intervalo de [t0, t1] em que q0 + slope (t - t0) > u, para cada u.

    Aceita escalares (um trecho) ou vetores de mesmo tamanho (um trecho por
    linha do resultado).

    Returns:
        (lo, hi) com lo <= hi; o tempo acima é hi - lo
    """
    levels = np.asarray(levels, dtype=float)
    t0, t1, q0, slope = (np.asarray(x, dtype=float) for x in (t0, t1, q0, slope))
    if t0.ndim:
        t0, t1, q0, slope = (x[:, None] for x in (t0, t1, q0, slope))

    with np.errstate(divide='ignore', invalid='ignore'):
        crossing = np.clip(t0 + (levels - q0) / slope, t0, t1)
    lo = np.where(slope > 0.0, crossing, t0)
    hi = np.where(slope < 0.0, crossing, np.where((slope == 0.0) & (q0 <= levels), t0, t1))
    return lo, hi


@dataclass
class OccupancyAccumulator:
    """
    Tempo acima de cada nível, por faixa de tempo, para uma fila.

    Atributos:
        grid: Grade de níveis
        horizon: Horizonte coberto pelas faixas (tempos além caem na última)
        n_bins: Número de faixas de tempo
        queue: Fila observada (1 ou 2)
        above: Matriz (n_bins, len(grid)) de tempo acima de cada nível
        observed: Tempo observado em cada faixa
    """

    grid: LevelGrid
    horizon: float
    n_bins: int = 1024
    queue: int = 1
    above: np.ndarray = field(init=False, repr=False)
    observed: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if not self.horizon > 0:
            raise ParameterError(f"horizon deve ser positivo (recebido {self.horizon})")
        if self.n_bins < 1:
            raise ParameterError("n_bins deve ser >= 1")
        if self.queue not in (1, 2):
            raise ParameterError(f"Fila inválida: {self.queue}")
        self.levels = self.grid.as_array()
        self.bin_width = self.horizon / self.n_bins
        self.above = np.zeros((self.n_bins, len(self.grid)))
        self.observed = np.zeros(self.n_bins)

    def on_segment(self, segment: Segment):
        """Gancho de observador: acumula trechos da fila observada."""
        if segment.queue == self.queue:
            accumulate_segment(self, segment)

    def on_path(self, chunk: PathChunk):
        """Gancho de observador: acumula um pedaço inteiro do caminho."""
        accumulate_segments(self, *chunk.segments(self.queue))

    @property
    def total_time(self) -> float:
        return float(self.observed.sum())

    def bin_of(self, t: float) -> int:
        return min(int(t / self.bin_width), self.n_bins - 1)

    def bin_end(self, b: int) -> float:
        return np.inf if b == self.n_bins - 1 else (b + 1) * self.bin_width


def accumulate_segment(acc: OccupancyAccumulator, segment: Segment) -> OccupancyAccumulator:
    """
    Soma ao acumulador o tempo exato do trecho acima de cada nível.

    Args:
        acc: Acumulador
        segment: Trecho linear (t_start, t_end, q_start, slope)

    Returns:
        O próprio acumulador

    Raises:
        ParameterError: Se t_end < t_start
    """
    t0, t1 = segment.t_start, segment.t_end
    if t1 < t0:
        raise ParameterError(f"Trecho com t_end < t_start ({t1} < {t0})")
    if t1 == t0:
        return acc

    lo, hi = time_above(t0, t1, segment.q_start, segment.slope, acc.levels)
    b0, b1 = acc.bin_of(t0), acc.bin_of(t1)

    if b0 == b1:
        acc.above[b0] += hi - lo
        acc.observed[b0] += segment.duration
        return acc

    for b in range(b0, b1 + 1):
        a = max(t0, b * acc.bin_width)
        e = min(t1, acc.bin_end(b))
        if e <= a:
            continue
        acc.above[b] += np.clip(np.minimum(hi, e) - np.maximum(lo, a), 0.0, None)
        acc.observed[b] += e - a
    return acc


def accumulate_segments(acc: OccupancyAccumulator, t_start: np.ndarray, t_end: np.ndarray,
                        q_start: np.ndarray, slope: np.ndarray) -> OccupancyAccumulator:
    """
    Versão vetorial de accumulate_segment para muitos trechos da fila observada.

    Trechos contidos em uma única faixa são somados com np.bincount; os que
    cruzam bordas de faixa (no máximo n_bins - 1 deles) seguem pelo caminho escalar.

    Raises:
        ParameterError: Se algum t_end < t_start
    """
    t0, t1, q0, s = (np.asarray(x, dtype=float) for x in (t_start, t_end, q_start, slope))
    if (t1 < t0).any():
        raise ParameterError("Trecho com t_end < t_start")
    keep = t1 > t0
    t0, t1, q0, s = t0[keep], t1[keep], q0[keep], s[keep]

    last = acc.n_bins - 1
    b0 = np.minimum((t0 / acc.bin_width).astype(np.int64), last)
    b1 = np.minimum((t1 / acc.bin_width).astype(np.int64), last)
    same = np.flatnonzero(b0 == b1)

    for start in range(0, len(same), VECTOR_BATCH):
        idx = same[start:start + VECTOR_BATCH]
        lo, hi = time_above(t0[idx], t1[idx], q0[idx], s[idx], acc.levels)
        width = hi - lo
        bins = b0[idx]
        for j in range(width.shape[1]):
            acc.above[:, j] += np.bincount(bins, weights=width[:, j], minlength=acc.n_bins)
        acc.observed += np.bincount(bins, weights=t1[idx] - t0[idx], minlength=acc.n_bins)

    for i in np.flatnonzero(b0 != b1).tolist():
        accumulate_segment(acc, Segment(acc.queue, float(t0[i]), float(t1[i]), float(q0[i]), float(s[i])))
    return acc


def merge_accumulators(first: OccupancyAccumulator, second: OccupancyAccumulator) -> OccupancyAccumulator:
    """
    Soma dois acumuladores compatíveis (mesma grade, horizonte, faixas e fila).

    A operação é associativa e comutativa.
    """
    if (first.grid != second.grid or first.horizon != second.horizon
            or first.n_bins != second.n_bins or first.queue != second.queue):
        raise ParameterError("Acumuladores incompatíveis para mesclagem")
    merged = OccupancyAccumulator(first.grid, first.horizon, first.n_bins, first.queue)
    merged.above = first.above + second.above
    merged.observed = first.observed + second.observed
    return merged


def estimate_tail_time_average(acc: OccupancyAccumulator, burn_in: Optional[float] = None,
                               batches: int = DEFAULT_BATCHES,
                               confidence: float = 0.95) -> List[TailEstimate]:
    """
    Estimador de média temporal de P(Q > u) para cada nível da grade.

    p_hat(u) = tempo acima de u após o burn-in / tempo observado após o burn-in.
    O intervalo usa médias em lotes contíguos e é centrado em p_hat.

    Args:
        acc: Acumulador preenchido
        burn_in: Tempo descartado (None usa default_burn_in); arredondado
                 para cima até a borda de faixa seguinte
        batches: Número de lotes
        confidence: Nível de confiança

    Returns:
        Lista de TailEstimate, um por nível

    Raises:
        EstimationError: Tempo insuficiente após o burn-in, ou lotes insuficientes
    """
    if burn_in is None:
        burn_in = default_burn_in(acc.horizon)
    if not acc.total_time > burn_in:
        raise EstimationError(
            f"Tempo observado {acc.total_time:.6g} não excede o burn-in {burn_in:.6g}"
        )

    first = min(int(np.ceil(burn_in / acc.bin_width - 1e-9)), acc.n_bins)
    above = acc.above[first:]
    observed = acc.observed[first:]
    total = observed.sum()
    if not total > 0:
        raise EstimationError("Nenhum tempo observado após o burn-in")

    groups = [g for g in np.array_split(np.arange(len(observed)), batches) if len(g)]
    batch_avgs = []
    for g in groups:
        t = observed[g].sum()
        if t > 0:
            batch_avgs.append(above[g].sum(axis=0) / t)
    if len(batch_avgs) < 2:
        raise EstimationError(f"Lotes insuficientes após o burn-in ({len(batch_avgs)})")
    batch_avgs = np.vstack(batch_avgs)

    p_hat = np.clip(above.sum(axis=0) / total, 0.0, 1.0)
    estimates = []
    for j, u in enumerate(acc.grid):
        low, high = batch_means_ci(batch_avgs[:, j], confidence)
        lo, hi = centered_interval(float(p_hat[j]), 0.5 * (high - low))
        estimates.append(TailEstimate(u, float(p_hat[j]), lo, hi, 'time-average', len(batch_avgs)))
    return estimates
