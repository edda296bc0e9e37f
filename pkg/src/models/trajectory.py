"""
Modelo de Trajetória.

Define os segmentos lineares, registros de salto, a contabilidade de serviço
e a amostra do funcional tandem.
"""

from dataclasses import dataclass, field
from typing import Iterator, List, Tuple

import numpy as np

from ..exceptions import ParameterError


@dataclass(frozen=True)
class Segment:
    """
    Trecho linear da carga de uma fila entre dois eventos.

    Atributos:
        queue: Fila (1 ou 2)
        t_start: Início do trecho
        t_end: Fim do trecho
        q_start: Carga no início
        slope: Inclinação (0, -phi_i c ou -c)
    """

    queue: int
    t_start: float
    t_end: float
    q_start: float
    slope: float

    @property
    def duration(self) -> float:
        return self.t_end - self.t_start


@dataclass(frozen=True)
class JumpRecord:
    """Chegada de trabalho: instante, classe e tamanho."""

    t: float
    cls: int
    size: float


@dataclass
class Trajectory:
    """
    Caminho linear por partes das duas filas.

    Atributos:
        segments: Trechos em ordem temporal (intercalados por fila)
        jumps: Saltos em ordem temporal
    """

    segments: List[Segment] = field(default_factory=list)
    jumps: List[JumpRecord] = field(default_factory=list)

    def add_segment(self, segment: Segment):
        """Adiciona um trecho à trajetória."""
        self.segments.append(segment)

    def add_jump(self, jump: JumpRecord):
        """Adiciona um salto à trajetória."""
        self.jumps.append(jump)

    def slopes(self, queue: int) -> set:
        """Conjunto de inclinações usadas por uma fila."""
        return {s.slope for s in self.segments if s.queue == queue}


@dataclass
class ServiceLedger:
    """
    Contabilidade de serviço acumulada ao longo da execução.

    Atributos:
        b1, b2: Serviço efetivamente recebido por classe
        c1, c2: Serviço disponível por classe (>= phi_i c por unidade de tempo)
        elapsed: Tempo total contabilizado
        busy_time: Tempo com carga total positiva
    """

    b1: float = 0.0
    b2: float = 0.0
    c1: float = 0.0
    c2: float = 0.0
    elapsed: float = 0.0
    busy_time: float = 0.0

    def record(self, dt: float, served1: float, served2: float,
               available1: float, available2: float, busy_time: float):
        """
        Registra um intervalo sem chegadas.

        Args:
            dt: Duração do intervalo
            served1, served2: Trabalho servido por classe
            available1, available2: Serviço disponível por classe
            busy_time: Parte do intervalo com carga total positiva
        """
        if dt < 0 or busy_time < 0:
            raise ParameterError(f"Intervalo negativo no ledger: dt={dt}, busy_time={busy_time}")
        self.b1 += served1
        self.b2 += served2
        self.c1 += available1
        self.c2 += available2
        self.elapsed += dt
        self.busy_time += busy_time

    @property
    def total_served(self) -> float:
        return self.b1 + self.b2

    def to_dict(self) -> dict:
        return {
            'b1': self.b1, 'b2': self.b2,
            'c1': self.c1, 'c2': self.c2,
            'elapsed': self.elapsed, 'busy_time': self.busy_time
        }


@dataclass(frozen=True)
class TandemSample:
    """Amostra de V (diferença de dois supremos acoplados) e o horizonte usado."""

    v: float
    horizon: float


@dataclass(frozen=True)
class PathChunk:
    """
    Pedaço do caminho em forma vetorial: fases de escoamento e chegadas.

    Em cada fase [t_start, t_end) as duas cargas são lineares. A chegada i
    acontece depois das primeiras gap_end[i] fases do pedaço.

    Atributos:
        t_start, t_end: Limites de cada fase
        q1, q2: Cargas no início de cada fase
        slope1, slope2: Inclinações de cada fase
        jump_t, jump_cls, jump_size: Chegadas em ordem temporal
        before1, before2: Cargas imediatamente antes de cada chegada
        gap_end: Número de fases anteriores a cada chegada
    """

    t_start: np.ndarray
    t_end: np.ndarray
    q1: np.ndarray
    q2: np.ndarray
    slope1: np.ndarray
    slope2: np.ndarray
    jump_t: np.ndarray
    jump_cls: np.ndarray
    jump_size: np.ndarray
    before1: np.ndarray
    before2: np.ndarray
    gap_end: np.ndarray

    @property
    def n_phases(self) -> int:
        return len(self.t_start)

    def segments(self, queue: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Trechos de uma fila como (t_start, t_end, q_start, slope)."""
        if queue == 1:
            return self.t_start, self.t_end, self.q1, self.slope1
        if queue == 2:
            return self.t_start, self.t_end, self.q2, self.slope2
        raise ParameterError(f"Fila inválida: {queue}")

    def after(self) -> Tuple[np.ndarray, np.ndarray]:
        """Cargas logo após cada chegada."""
        return (self.before1 + np.where(self.jump_cls == 1, self.jump_size, 0.0),
                self.before2 + np.where(self.jump_cls == 2, self.jump_size, 0.0))

    def events(self) -> Iterator[tuple]:
        """
        Percorre o pedaço em ordem temporal.

        Produz ('segment', Segment) para cada trecho (fila 1 e depois fila 2
        em cada fase) e ('jump', JumpRecord, q1_antes, q2_antes, q1_depois,
        q2_depois) para cada chegada.
        """
        columns = [v.tolist() for v in (self.t_start, self.t_end, self.q1, self.q2, self.slope1, self.slope2)]
        after1, after2 = self.after()
        jumps = zip(self.jump_t.tolist(), self.jump_cls.tolist(), self.jump_size.tolist(),
                    self.before1.tolist(), self.before2.tolist(), after1.tolist(), after2.tolist(),
                    self.gap_end.tolist())
        k = 0
        for t, cls, size, b1, b2, a1, a2, end in jumps:
            for p in range(k, end):
                yield from self._phase(columns, p)
            k = end
            yield 'jump', JumpRecord(t, cls, size), b1, b2, a1, a2
        for p in range(k, self.n_phases):
            yield from self._phase(columns, p)

    @staticmethod
    def _phase(columns, p):
        t0, t1, q1, q2, s1, s2 = (col[p] for col in columns)
        yield 'segment', Segment(1, t0, t1, q1, s1)
        yield 'segment', Segment(2, t0, t1, q2, s2)
