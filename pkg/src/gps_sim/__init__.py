"""
Simulação do sistema GPS de duas classes: motores exato e discreto,
observadores e funcionais de caminho.
"""

from .dynamics import PhaseBuffer, drain_until, apply_jump, gps_discrete_step
from .observers import SimulationObserver, TrajectoryRecorder, EpochRecorder, TrajectoryWriter
from .engine import (
    EventDrivenResult,
    DiscreteResult,
    generate_arrivals,
    simulate_event_driven,
    simulate_discrete,
    GpsSimulator,
)
from .functionals import (
    single_queue_supremum,
    dual_queue_supremum,
    finite_window_supremum,
    simulate_tandem_V,
    ReflectedPath,
    total_workload_reference,
    pollaczek_khinchine_tail,
)
from .logger import SimulationLogger

__all__ = [
    'PhaseBuffer',
    'drain_until',
    'apply_jump',
    'gps_discrete_step',
    'SimulationObserver',
    'TrajectoryRecorder',
    'EpochRecorder',
    'TrajectoryWriter',
    'EventDrivenResult',
    'DiscreteResult',
    'generate_arrivals',
    'simulate_event_driven',
    'simulate_discrete',
    'GpsSimulator',
    'single_queue_supremum',
    'dual_queue_supremum',
    'finite_window_supremum',
    'simulate_tandem_V',
    'ReflectedPath',
    'total_workload_reference',
    'pollaczek_khinchine_tail',
    'SimulationLogger'
]
