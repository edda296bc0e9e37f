"""
Estimação de caudas estacionárias a partir de trajetórias simuladas.
"""

from .intervals import batch_means_ci, wilson_interval, z_value
from .occupancy import (
    OccupancyAccumulator,
    accumulate_segment,
    accumulate_segments,
    merge_accumulators,
    estimate_tail_time_average,
    default_burn_in,
    time_above,
)
from .regenerative import RegenerationCycle, CycleTracker, regenerative_estimate
from .empirical import empirical_tail
from .horizon import horizon_for_level
from .diagnostics import (
    SandwichReport,
    sandwich_check,
    DriftReport,
    drift_diagnostic,
    lindley_terminal,
    brute_force_terminal,
)
from .tables import estimates_to_frame, format_decimal, write_estimate_table, read_estimate_table

__all__ = [
    'batch_means_ci',
    'wilson_interval',
    'z_value',
    'OccupancyAccumulator',
    'accumulate_segment',
    'accumulate_segments',
    'merge_accumulators',
    'estimate_tail_time_average',
    'default_burn_in',
    'time_above',
    'RegenerationCycle',
    'CycleTracker',
    'regenerative_estimate',
    'empirical_tail',
    'horizon_for_level',
    'SandwichReport',
    'sandwich_check',
    'DriftReport',
    'drift_diagnostic',
    'lindley_terminal',
    'brute_force_terminal',
    'estimates_to_frame',
    'format_decimal',
    'write_estimate_table',
    'read_estimate_table'
]
