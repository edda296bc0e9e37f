"""
Grandezas Resumo das Entradas.

Taxa média, índice e coeficiente de cauda de cada classe, a constante
c_alpha das caudas estáveis e a assíntota da cauda marginal de Z(1).
"""

import math
from typing import Optional

from scipy.special import gamma

from ..exceptions import ParameterError
from ..models.input_specs import ClassInputSpec, CompoundPoissonSpec, StableSpec
from ..models.summary import ModelSummary


def c_alpha(alpha: float) -> float:
    """
    Constante c_alpha da cauda estável: P(Z(1) > x) ~ c_alpha (1 + beta) x^(-alpha).

    c_alpha = (1 - alpha) / (2 Gamma(2 - alpha) cos(pi alpha / 2))

    Args:
        alpha: Índice de estabilidade em (1, 2)

    Returns:
        Valor positivo; tende a 0 quando alpha -> 2

    Raises:
        ParameterError: Se alpha estiver fora de (1, 2)
    """
    if not 1.0 < alpha < 2.0:
        raise ParameterError(f"c_alpha requer alpha em (1, 2) (recebido {alpha})")
    return (1.0 - alpha) / (2.0 * gamma(2.0 - alpha) * math.cos(math.pi * alpha / 2.0))


def mean_rate(spec: ClassInputSpec) -> float:
    """Taxa média mu_i = E[Z_i(1)]."""
    if isinstance(spec, CompoundPoissonSpec):
        return spec.lam * spec.jobs.mean
    return spec.mu


def tail_index(spec: ClassInputSpec) -> Optional[float]:
    """Índice de cauda alpha_i (None para entradas de cauda leve)."""
    if isinstance(spec, CompoundPoissonSpec):
        return spec.jobs.tail_index
    return spec.alpha


def tail_coefficient(spec: ClassInputSpec) -> float:
    """
    Coeficiente k de P(Z(1) > u) ~ k u^(-alpha).

    Poisson composto-Pareto: lambda * x_m^alpha. Estável: c_alpha (1 + beta).

    Raises:
        ParameterError: Para entradas de cauda leve (exponencial,
                        determinística ou estável gaussiana)
    """
    if isinstance(spec, CompoundPoissonSpec):
        if spec.jobs.tail_coefficient is None:
            raise ParameterError(f"Jobs {spec.jobs.kind} têm cauda leve: sem coeficiente de cauda")
        return spec.lam * spec.jobs.tail_coefficient
    if spec.alpha >= 2.0:
        raise ParameterError("Entrada estável com alpha = 2 é gaussiana: sem cauda polinomial")
    return c_alpha(spec.alpha) * (1.0 + spec.beta)


def marginal_tail(spec: ClassInputSpec, u: float) -> float:
    """
    Assíntota da cauda marginal: tail_coefficient * u^(-alpha).

    Args:
        spec: Entrada
        u: Nível (> 0)

    Returns:
        Probabilidade assintótica
    """
    if not u > 0:
        raise ParameterError(f"u deve ser positivo (recebido {u})")
    return tail_coefficient(spec) * u ** (-tail_index(spec))


def summarize_inputs(spec1: ClassInputSpec, spec2: ClassInputSpec) -> ModelSummary:
    """
    Constrói o ModelSummary das duas classes.

    Raises:
        ParameterError: Se alguma entrada for de cauda leve
    """
    k1 = tail_coefficient(spec1)
    k2 = tail_coefficient(spec2)
    return ModelSummary(
        mu1=mean_rate(spec1),
        mu2=mean_rate(spec2),
        alpha1=tail_index(spec1),
        alpha2=tail_index(spec2),
        k1=k1,
        k2=k2,
        beta2=spec2.beta if isinstance(spec2, StableSpec) else None,
        spectrally_positive2=spec2.spectrally_positive
    )
