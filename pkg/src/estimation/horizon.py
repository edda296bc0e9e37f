"""
Política de horizonte de truncamento para supremos.

T(u) = max(10^4, 10/(d - mu) * u * ln(1 + u)), de modo que T(u)/u -> infinito.
"""

import math

from ..exceptions import ParameterError, UnstableQueueError

HORIZON_FLOOR = 1e4
HORIZON_MULTIPLIER = 10.0


def horizon_for_level(u: float, d: float, mu: float) -> float:
    """
    Horizonte de simulação para estimar P(sup > u) com escoamento d.

    Args:
        u: Nível alvo (> 0)
        d: Taxa de escoamento
        mu: Taxa média de entrada

    Returns:
        T(u)

    Raises:
        UnstableQueueError: Se d <= mu
    """
    if d <= mu:
        raise UnstableQueueError(f"Escoamento d = {d:.6g} não excede mu = {mu:.6g}")
    if not u > 0:
        raise ParameterError(f"u deve ser positivo (recebido {u})")
    return max(HORIZON_FLOOR, HORIZON_MULTIPLIER / (d - mu) * u * math.log1p(u))
