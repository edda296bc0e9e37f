"""
Observadores de Simulação.

Os motores chamam, quando existirem, os ganchos:
    on_path(chunk)
    on_segment(segment)
    on_jump(jump, before, after)
    on_finish(state)

Um observador com on_path recebe o caminho em pedaços vetoriais (PathChunk)
e não recebe on_segment / on_jump. Qualquer objeto com algum desses métodos
serve (ex: OccupancyAccumulator, CycleTracker).
"""

import csv
from pathlib import Path
from typing import List, Union

import numpy as np

from ..models.gps import SystemState
from ..models.trajectory import JumpRecord, PathChunk, Segment, Trajectory


class SimulationObserver:
    """Observador base com ganchos vazios."""

    def on_segment(self, segment: Segment):
        pass

    def on_jump(self, jump: JumpRecord, before: SystemState, after: SystemState):
        pass

    def on_finish(self, state: SystemState):
        pass


class TrajectoryRecorder(SimulationObserver):
    """Guarda a trajetória completa em memória (útil para execuções curtas)."""

    def __init__(self):
        self.trajectory = Trajectory()

    def on_segment(self, segment: Segment):
        self.trajectory.add_segment(segment)

    def on_jump(self, jump: JumpRecord, before: SystemState, after: SystemState):
        self.trajectory.add_jump(jump)


class EpochRecorder(SimulationObserver):
    """
    Registra o estado logo após cada chegada e no fim da execução.

    Atributos:
        times, q1, q2: Listas alinhadas por época
    """

    def __init__(self):
        self.times: List[float] = []
        self.q1: List[float] = []
        self.q2: List[float] = []

    def _record(self, state: SystemState):
        self.times.append(state.t)
        self.q1.append(state.q1)
        self.q2.append(state.q2)

    def on_path(self, chunk: PathChunk):
        after1, after2 = chunk.after()
        self.times.extend(chunk.jump_t.tolist())
        self.q1.extend(after1.tolist())
        self.q2.extend(after2.tolist())

    def on_jump(self, jump: JumpRecord, before: SystemState, after: SystemState):
        self._record(after)

    def on_finish(self, state: SystemState):
        self._record(state)

    def as_arrays(self):
        """Retorna (times, q1, q2) como vetores numpy."""
        return np.asarray(self.times), np.asarray(self.q1), np.asarray(self.q2)


class TrajectoryWriter(SimulationObserver):
    """
    Grava um registro por trecho ou salto em texto delimitado.

    Colunas: kind, t_start, t_end, queue, q_start, slope, jump_size
    """

    FIELDS = ['kind', 't_start', 't_end', 'queue', 'q_start', 'slope', 'jump_size']

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._file = open(self.path, 'w', encoding='utf-8', newline='')
        self._writer = csv.writer(self._file, lineterminator='\n')
        self._writer.writerow(self.FIELDS)
        self.records = 0

    def on_segment(self, segment: Segment):
        self._writer.writerow([
            'segment', f"{segment.t_start:.12g}", f"{segment.t_end:.12g}", segment.queue,
            f"{segment.q_start:.12g}", f"{segment.slope:.12g}", ''
        ])
        self.records += 1

    def on_jump(self, jump: JumpRecord, before: SystemState, after: SystemState):
        self._writer.writerow(['jump', f"{jump.t:.12g}", f"{jump.t:.12g}", jump.cls, '', '', f"{jump.size:.12g}"])
        self.records += 1

    def on_finish(self, state: SystemState):
        self.close()

    def close(self):
        if not self._file.closed:
            self._file.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
