"""
Estimador Regenerativo.

Ciclos começam em chegadas que encontram as duas filas vazias; como as
entradas Poisson composto não têm memória, os ciclos são i.i.d. e o
estimador de razão vale para P(Q > u).
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from ..exceptions import EstimationError, RegenerationError
from ..models.estimates import LevelGrid, TailEstimate
from ..models.gps import EMPTY_TOL, SystemState
from ..models.trajectory import JumpRecord, PathChunk, Segment
from .intervals import centered_interval, z_value
from .occupancy import time_above

MIN_CYCLES = 30


@dataclass(frozen=True)
class RegenerationCycle:
    """
    Ciclo regenerativo completo.

    Atributos:
        start: Instante da chegada que abriu o ciclo
        length: Duração do ciclo
        above: Tempo acima de cada nível da grade dentro do ciclo
    """

    start: float
    length: float
    above: np.ndarray


@dataclass
class CycleTracker:
    """
    Observador que recorta a trajetória em ciclos regenerativos.

    Atributos:
        grid: Grade de níveis
        queue: Fila cuja ocupação é medida (1 ou 2)
        cycles: Ciclos completos encontrados
    """

    grid: LevelGrid
    queue: int = 1
    cycles: List[RegenerationCycle] = field(default_factory=list)

    def __post_init__(self):
        self.levels = self.grid.as_array()
        self._start: Optional[float] = None
        self._above = np.zeros(len(self.grid))

    def on_jump(self, jump: JumpRecord, before: SystemState, after: SystemState):
        """Fecha o ciclo corrente e abre outro quando a chegada encontra o sistema vazio."""
        if before.q1 > EMPTY_TOL or before.q2 > EMPTY_TOL:
            return
        if self._start is not None:
            self.cycles.append(RegenerationCycle(self._start, jump.t - self._start, self._above))
        self._start = jump.t
        self._above = np.zeros(len(self.grid))

    def on_segment(self, segment: Segment):
        if self._start is None or segment.queue != self.queue:
            return
        lo, hi = time_above(segment.t_start, segment.t_end, segment.q_start, segment.slope, self.levels)
        self._above = self._above + (hi - lo)

    def on_path(self, chunk: PathChunk):
        """Versão vetorial de on_jump / on_segment para um pedaço do caminho."""
        lo, hi = time_above(*chunk.segments(self.queue), self.levels)
        cumulative = np.vstack([np.zeros((1, len(self.levels))), np.cumsum(hi - lo, axis=0)])
        empty = (chunk.before1 <= EMPTY_TOL) & (chunk.before2 <= EMPTY_TOL)
        done = 0
        for i in np.flatnonzero(empty).tolist():
            phase = int(chunk.gap_end[i])
            t = float(chunk.jump_t[i])
            if self._start is not None:
                above = self._above + (cumulative[phase] - cumulative[done])
                self.cycles.append(RegenerationCycle(self._start, t - self._start, above))
            self._start = t
            self._above = np.zeros(len(self.grid))
            done = phase
        if self._start is not None:
            self._above = self._above + (cumulative[-1] - cumulative[done])


def regenerative_estimate(cycles: Sequence[RegenerationCycle], grid: LevelGrid,
                          confidence: float = 0.95) -> List[TailEstimate]:
    """
    Estimador de razão: média do tempo acima de u por ciclo / duração média.

    O intervalo usa o método delta: variância de Y - r L, dividida por
    (média de L)^2 n.

    Args:
        cycles: Ciclos completos
        grid: Grade de níveis (mesma usada nos ciclos)
        confidence: Nível de confiança

    Returns:
        Lista de TailEstimate com método 'regenerative'

    Raises:
        RegenerationError: Nenhum ciclo completo (sistema em sobrecarga)
        EstimationError: Menos de 30 ciclos
    """
    n = len(cycles)
    if n == 0:
        raise RegenerationError(
            "Nenhum ciclo regenerativo: o sistema total não esvazia; "
            "use o estimador de média temporal na fila 1"
        )
    if n < MIN_CYCLES:
        raise EstimationError(f"São necessários >= {MIN_CYCLES} ciclos (recebido {n})")

    lengths = np.array([c.length for c in cycles], dtype=float)
    above = np.vstack([c.above for c in cycles])
    if above.shape[1] != len(grid):
        raise EstimationError("Ciclos registrados com outra grade de níveis")

    mean_length = lengths.mean()
    ratio = above.mean(axis=0) / mean_length
    z = z_value(confidence)

    estimates = []
    for j, u in enumerate(grid):
        residual = above[:, j] - ratio[j] * lengths
        half = z * float(residual.std(ddof=1)) / (mean_length * math.sqrt(n))
        p_hat = float(min(1.0, max(0.0, ratio[j])))
        lo, hi = centered_interval(p_hat, half)
        estimates.append(TailEstimate(u, p_hat, lo, hi, 'regenerative', n))
    return estimates
