"""
Dinâmica GPS de Duas Classes.

Entre chegadas, a carga total cai à taxa c enquanto houver trabalho: com as
duas filas ocupadas cada classe é servida a phi_i c; quando uma esvazia, a
outra recebe a taxa inteira. Os instantes de esvaziamento têm forma fechada.

PhaseBuffer acumula as fases de escoamento em vetores compactos; o motor
orientado a eventos o usa para processar milhões de chegadas sem criar um
objeto por trecho.
"""

from array import array
from typing import List, Optional, Tuple

import numpy as np

from ..exceptions import ParameterError
from ..models.gps import EMPTY_TOL, GpsConfig, SystemState
from ..models.trajectory import Segment, ServiceLedger


class PhaseBuffer:
    """
    Fases de escoamento gravadas em vetores compactos.

    Atributos:
        cfg: Configuração GPS
        t_start, t_end, q1, q2, slope1, slope2: Colunas das fases gravadas
        served1, served2, available1, available2, elapsed, busy_time:
            Contabilidade acumulada desde o último flush_ledger
    """

    COLUMNS = ('t_start', 't_end', 'q1', 'q2', 'slope1', 'slope2')

    def __init__(self, cfg: GpsConfig):
        self.cfg = cfg
        self._c, self._r1, self._r2 = cfg.c, cfg.rate1, cfg.rate2
        for name in self.COLUMNS:
            setattr(self, name, array('d'))
        self._append = tuple(getattr(self, name).append for name in self.COLUMNS)
        self._reset_totals()

    def _reset_totals(self):
        self.served1 = self.served2 = 0.0
        self.available1 = self.available2 = 0.0
        self.elapsed = self.busy_time = 0.0

    def __len__(self) -> int:
        return len(self.t_start)

    def drain(self, t: float, q1: float, q2: float, end: float) -> Tuple[float, float]:
        """
        Escoa de t até end sem chegadas, gravando uma linha por fase.

        Returns:
            (q1, q2) em end
        """
        c, r1, r2 = self._c, self._r1, self._r2
        add_t0, add_t1, add_q1, add_q2, add_s1, add_s2 = self._append
        q1 = 0.0 if q1 <= EMPTY_TOL else q1
        q2 = 0.0 if q2 <= EMPTY_TOL else q2
        served1 = served2 = available1 = available2 = elapsed = busy = 0.0

        while t < end:
            remaining = end - t
            if q1 > 0 and q2 > 0:
                slope1, slope2 = -r1, -r2
                tau = min(q1 / r1, q2 / r2, remaining)
            elif q1 > 0:
                slope1, slope2 = -c, 0.0
                tau = min(q1 / c, remaining)
            elif q2 > 0:
                slope1, slope2 = 0.0, -c
                tau = min(q2 / c, remaining)
            else:
                slope1, slope2 = 0.0, 0.0
                tau = remaining

            add_t0(t)
            add_t1(t + tau)
            add_q1(q1)
            add_q2(q2)
            add_s1(slope1)
            add_s2(slope2)

            new_q1 = q1 + slope1 * tau
            new_q2 = q2 + slope2 * tau
            new_q1 = 0.0 if new_q1 <= EMPTY_TOL else new_q1
            new_q2 = 0.0 if new_q2 <= EMPTY_TOL else new_q2
            if q1 > 0 and q2 > 0:
                # a fila que define tau esvazia exatamente
                if tau == q1 / r1:
                    new_q1 = 0.0
                if tau == q2 / r2:
                    new_q2 = 0.0
            elif tau < remaining:
                new_q1 = new_q2 = 0.0

            served1 += q1 - new_q1
            served2 += q2 - new_q2
            available1 += (c if q2 == 0 else r1) * tau
            available2 += (c if q1 == 0 else r2) * tau
            elapsed += tau
            if q1 + q2 > 0:
                busy += tau

            q1, q2 = new_q1, new_q2
            t += tau
            if tau == remaining:
                break

        if elapsed > 0:
            self.served1 += served1
            self.served2 += served2
            self.available1 += available1
            self.available2 += available2
            self.elapsed += elapsed
            self.busy_time += busy
        return q1, q2

    def take(self) -> Tuple[np.ndarray, ...]:
        """Retorna as colunas gravadas como vetores numpy e esvazia o buffer."""
        columns = tuple(np.frombuffer(getattr(self, name), dtype=float).copy() for name in self.COLUMNS)
        for name in self.COLUMNS:
            del getattr(self, name)[:]
        return columns

    def segments(self) -> List[Segment]:
        """Trechos gravados, aos pares (fila 1, fila 2) em cada fase."""
        segments = []
        for t0, t1, q1, q2, s1, s2 in zip(*(getattr(self, name) for name in self.COLUMNS)):
            segments.append(Segment(1, t0, t1, q1, s1))
            segments.append(Segment(2, t0, t1, q2, s2))
        return segments

    def flush_ledger(self, ledger: ServiceLedger):
        """Transfere a contabilidade acumulada para o ledger."""
        ledger.record(self.elapsed, self.served1, self.served2,
                      self.available1, self.available2, self.busy_time)
        self._reset_totals()


def drain_until(state: SystemState, dt: float, cfg: GpsConfig,
                ledger: Optional[ServiceLedger] = None) -> Tuple[SystemState, List[Segment]]:
    """
    Escoa o sistema por dt unidades de tempo sem chegadas.

    Args:
        state: Estado inicial
        dt: Duração (>= 0)
        cfg: Configuração GPS
        ledger: Contabilidade de serviço a atualizar (opcional)

    Returns:
        (estado final, trechos emitidos aos pares, um por fila, em cada fase)

    Raises:
        ParameterError: Se dt < 0
    """
    if dt < 0:
        raise ParameterError(f"dt deve ser não negativo (recebido {dt})")

    end = state.t + dt
    buffer = PhaseBuffer(cfg)
    q1, q2 = buffer.drain(state.t, state.q1, state.q2, end)
    if ledger is not None:
        buffer.flush_ledger(ledger)
    return SystemState(end, q1, q2), buffer.segments()


def apply_jump(state: SystemState, cls: int, size: float) -> SystemState:
    """
    Soma uma chegada de tamanho size à fila cls.

    Raises:
        ParameterError: Tamanho negativo ou classe inválida
    """
    if size < 0:
        raise ParameterError(f"Tamanho de job negativo: {size}")
    if cls == 1:
        return SystemState(state.t, state.q1 + size, state.q2)
    if cls == 2:
        return SystemState(state.t, state.q1, state.q2 + size)
    raise ParameterError(f"Classe inválida: {cls}")


def gps_discrete_step(q1: float, q2: float, dz1: float, dz2: float,
                      cfg: GpsConfig, h: float) -> Tuple[float, float]:
    """
    Passo discreto de duas etapas com transferência de déficit.

    t_i = q_i + dz_i - phi_i c h; o déficit max(0, -t_i) de uma classe é
    capacidade não usada, repassada à outra.

    Args:
        q1, q2: Cargas no início do passo
        dz1, dz2: Entradas do passo (podem ser negativas para entradas estáveis)
        cfg: Configuração GPS
        h: Passo (> 0)

    Returns:
        (q1', q2'), ambos >= 0
    """
    if not h > 0:
        raise ParameterError(f"Passo h deve ser positivo (recebido {h})")
    t1 = q1 + dz1 - cfg.rate1 * h
    t2 = q2 + dz2 - cfg.rate2 * h
    deficit1 = max(0.0, -t1)
    deficit2 = max(0.0, -t2)
    return max(0.0, t1 - deficit2), max(0.0, t2 - deficit1)
