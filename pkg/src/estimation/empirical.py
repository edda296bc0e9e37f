"""
Cauda empírica de amostras i.i.d. (amostras de V, supremos, Z(1)).
"""

from typing import List, Sequence

import numpy as np

from ..exceptions import EstimationError
from ..models.estimates import LevelGrid, TailEstimate
from .intervals import wilson_interval


def empirical_tail(samples: Sequence[float], grid: LevelGrid,
                   confidence: float = 0.95) -> List[TailEstimate]:
    """
    Fração das amostras acima de cada nível, com intervalo de Wilson.

    Args:
        samples: Amostras (>= 1)
        grid: Grade de níveis
        confidence: Nível de confiança

    Returns:
        Lista de TailEstimate com método 'empirical'
    """
    x = np.sort(np.asarray(samples, dtype=float))
    n = len(x)
    if n == 0:
        raise EstimationError("empirical_tail requer ao menos uma amostra")

    counts = n - np.searchsorted(x, grid.as_array(), side='right')
    estimates = []
    for u, k in zip(grid, counts.tolist()):
        lo, hi = wilson_interval(k, n, confidence)
        estimates.append(TailEstimate(u, k / n, lo, hi, 'empirical', n))
    return estimates
