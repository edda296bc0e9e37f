"""
Assintóticas de cauda da fila 1 em sistemas GPS com entradas Lévy de cauda pesada.
"""

from ..levy_inputs.tails import c_alpha
from .scenarios import classify, require_scenario, is_integer_index
from .formulas import (
    tail_asymptote_q1,
    cp_asymptote,
    stable_asymptote,
    remark_bounds,
    isolated_tail_asymptote,
    finite_horizon_tail,
    tandem_tail,
)

__all__ = [
    'c_alpha',
    'classify',
    'require_scenario',
    'is_integer_index',
    'tail_asymptote_q1',
    'cp_asymptote',
    'stable_asymptote',
    'remark_bounds',
    'isolated_tail_asymptote',
    'finite_horizon_tail',
    'tandem_tail'
]
