"""
Intervalos de Confiança.

Médias em lotes (aproximação normal) e intervalo de Wilson para proporções.
"""

import math
from typing import Sequence, Tuple

import numpy as np
from scipy.stats import norm

from ..exceptions import EstimationError, ParameterError

MIN_BATCHES = 10


def z_value(confidence: float) -> float:
    """Quantil normal bilateral para o nível de confiança."""
    if not 0.0 < confidence < 1.0:
        raise ParameterError(f"Nível de confiança deve estar em (0, 1) (recebido {confidence})")
    return float(norm.ppf(0.5 + confidence / 2.0))


def batch_means_ci(batch_averages: Sequence[float], confidence: float = 0.95) -> Tuple[float, float]:
    """
    Intervalo de confiança por médias em lotes.

    Args:
        batch_averages: Médias de cada lote
        confidence: Nível de confiança

    Returns:
        (inferior, superior) centrado na média dos lotes

    Raises:
        EstimationError: Com menos de 10 lotes
    """
    x = np.asarray(batch_averages, dtype=float)
    if len(x) < MIN_BATCHES:
        raise EstimationError(f"São necessários >= {MIN_BATCHES} lotes (recebido {len(x)})")
    mean = float(x.mean())
    half = z_value(confidence) * float(x.std(ddof=1)) / math.sqrt(len(x))
    return mean - half, mean + half


def wilson_interval(successes: int, n: int, confidence: float = 0.95) -> Tuple[float, float]:
    """
    Intervalo de Wilson para uma proporção binomial.

    Args:
        successes: Número de sucessos
        n: Número de tentativas (>= 1)
        confidence: Nível de confiança

    Returns:
        (inferior, superior) dentro de [0, 1]
    """
    if n < 1:
        raise EstimationError("Intervalo de Wilson requer ao menos uma amostra")
    z = z_value(confidence)
    p = successes / n
    denom = 1.0 + z * z / n
    center = (p + z * z / (2.0 * n)) / denom
    half = z * math.sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom
    return max(0.0, min(p, center - half)), min(1.0, max(p, center + half))


def centered_interval(p_hat: float, half_width: float) -> Tuple[float, float]:
    """Intervalo [p - h, p + h] truncado em [0, 1]."""
    return max(0.0, p_hat - half_width), min(1.0, p_hat + half_width)
