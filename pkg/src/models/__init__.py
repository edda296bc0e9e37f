"""
Modelos de dados do laboratório GPS.
"""

from .input_specs import (
    ParetoJobs,
    ExponentialJobs,
    DeterministicJobs,
    JobDistribution,
    CompoundPoissonSpec,
    StableSpec,
    ClassInputSpec,
    class_input_from_dict,
)
from .gps import GpsConfig, SystemState
from .trajectory import Segment, JumpRecord, Trajectory, ServiceLedger, TandemSample
from .estimates import LevelGrid, TailEstimate
from .summary import ModelSummary, Scenario

__all__ = [
    'ParetoJobs', 'ExponentialJobs', 'DeterministicJobs', 'JobDistribution',
    'CompoundPoissonSpec', 'StableSpec', 'ClassInputSpec', 'class_input_from_dict',
    'GpsConfig', 'SystemState',
    'Segment', 'JumpRecord', 'Trajectory', 'ServiceLedger', 'TandemSample',
    'LevelGrid', 'TailEstimate',
    'ModelSummary', 'Scenario'
]
