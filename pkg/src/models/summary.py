"""
Resumo do Modelo e Cenários.

Define o resumo numérico das duas entradas (taxas, índices e coeficientes
de cauda) e os quatro regimes assintóticos.
"""

from enum import Enum
from dataclasses import dataclass
from typing import Optional

from ..exceptions import ParameterError


class Scenario(Enum):
    """Enum para os quatro regimes de cauda da fila 1."""
    SECOND_OVERLOADED = "second-overloaded"
    FIRST_HEAVIER_SECOND_STABLE = "first-heavier-second-stable"
    SECOND_HEAVIER_BOTH_STABLE = "second-heavier-both-stable"
    FIRST_OVERLOADED_SECOND_HEAVIER = "first-overloaded-second-heavier"

    @property
    def case_number(self) -> int:
        """Retorna o número do caso (1 a 4) usado pelos avaliadores especializados."""
        numbers = {
            Scenario.SECOND_OVERLOADED: 1,
            Scenario.FIRST_HEAVIER_SECOND_STABLE: 2,
            Scenario.SECOND_HEAVIER_BOTH_STABLE: 3,
            Scenario.FIRST_OVERLOADED_SECOND_HEAVIER: 4
        }
        return numbers[self]

    @classmethod
    def from_case(cls, case: int) -> 'Scenario':
        for scenario in cls:
            if scenario.case_number == case:
                return scenario
        raise ParameterError(f"Caso inválido: {case} (esperado 1 a 4)")


@dataclass(frozen=True)
class ModelSummary:
    """
    Resumo das duas entradas.

    Atributos:
        mu1, mu2: Taxas médias
        alpha1, alpha2: Índices de cauda (> 1)
        k1, k2: Coeficientes de cauda, P(Z_i(1) > u) ~ k_i u^(-alpha_i)
        beta2: Assimetria da classe 2 quando estável
        spectrally_positive2: Se a entrada 2 não tem saltos negativos
    """

    mu1: float
    mu2: float
    alpha1: float
    alpha2: float
    k1: float
    k2: float
    beta2: Optional[float] = None
    spectrally_positive2: bool = True

    def __post_init__(self):
        if not (self.alpha1 > 1 and self.alpha2 > 1):
            raise ParameterError("Índices de cauda devem ser > 1")
        if not (self.k1 > 0 and self.k2 > 0):
            raise ParameterError("Coeficientes de cauda devem ser positivos")

    @property
    def mu(self) -> float:
        return self.mu1 + self.mu2

    def to_dict(self) -> dict:
        return {
            'mu1': self.mu1, 'mu2': self.mu2,
            'alpha1': self.alpha1, 'alpha2': self.alpha2,
            'k1': self.k1, 'k2': self.k2,
            'beta2': self.beta2,
            'spectrally_positive2': self.spectrally_positive2
        }
