"""
Hierarquia de erros do laboratório GPS.

Todas as exceções derivam de ValueError, mantendo a convenção do projeto
de validar parâmetros em __post_init__ e levantar ValueError com mensagem legível.
"""

from typing import List, Optional


class GpsLabError(ValueError):
    """Erro base do laboratório."""


class ParameterError(GpsLabError):
    """Parâmetro numérico inválido."""


class InputError(GpsLabError):
    """Fluxo de entrada malformado (ex: chegadas fora de ordem)."""


class UnstableQueueError(GpsLabError):
    """Taxa de escoamento menor ou igual à taxa média de entrada."""


class ScenarioError(GpsLabError):
    """Hipóteses de um cenário ou fórmula assintótica violadas."""


class BoundaryError(ScenarioError):
    """Parametrização exatamente sobre uma fronteira entre regimes."""


class EqualIndexError(ScenarioError):
    """Índices de cauda iguais (alpha1 == alpha2): nenhum regime se aplica."""


class UnsupportedError(ScenarioError):
    """Regime identificado, mas fora das hipóteses do teorema correspondente."""


class EstimationError(GpsLabError):
    """Dados insuficientes para estimar."""


class RegenerationError(EstimationError):
    """Sistema sem regeneração (sobrecarga); use a média temporal."""


class WorkloadOverflowError(GpsLabError):
    """Carga de trabalho excedeu o limite numérico da simulação."""


class ConfigError(GpsLabError):
    """Arquivo de experimento inválido; carrega a lista de erros por campo."""

    def __init__(self, message: str, field_errors: Optional[List[str]] = None):
        self.field_errors = list(field_errors or [])
        if self.field_errors:
            message = f"{message}: " + "; ".join(self.field_errors)
        super().__init__(message)


class UsageError(GpsLabError):
    """Uso inválido da linha de comando (ex: seletor de validação desconhecido)."""
