"""
Classificação de Cenários.

Decide qual dos quatro regimes assintóticos se aplica a uma parametrização.
Fronteiras (mu_i = phi_i c, alpha1 = alpha2) levantam erro em vez de
escolher um regime vizinho.
"""

import math

from loguru import logger

from ..exceptions import BoundaryError, EqualIndexError, ScenarioError, UnsupportedError
from ..models.gps import GpsConfig
from ..models.summary import ModelSummary, Scenario

BOUNDARY_RTOL = 1e-9


def _on_boundary(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=BOUNDARY_RTOL, abs_tol=1e-15)


def is_integer_index(alpha: float) -> bool:
    """Verifica se o índice de cauda é inteiro (hipótese alpha2 fora de N)."""
    return _on_boundary(alpha, round(alpha))


def classify(cfg: GpsConfig, s: ModelSummary) -> Scenario:
    """
    Classifica a parametrização em um dos quatro regimes.

    Args:
        cfg: Configuração GPS
        s: Resumo das entradas

    Returns:
        Scenario correspondente

    Raises:
        BoundaryError: mu >= c, ou mu_i = phi_i c numa fronteira decisiva
        EqualIndexError: alpha1 = alpha2 com a fila 2 estável
        UnsupportedError: Regime 4 com entrada 2 não espectralmente positiva,
                          ou com alpha2 inteiro na rota estável
    """
    if s.mu > cfg.c or _on_boundary(s.mu, cfg.c):
        raise BoundaryError(f"Sistema instável: mu = {s.mu:.6g} >= c = {cfg.c:.6g}")

    if _on_boundary(s.mu2, cfg.rate2):
        raise BoundaryError(f"mu2 = phi2 c = {cfg.rate2:.6g}: fronteira entre regimes")

    if s.mu2 > cfg.rate2:
        return Scenario.SECOND_OVERLOADED

    if _on_boundary(s.alpha1, s.alpha2):
        raise EqualIndexError(f"alpha1 = alpha2 = {s.alpha1:.6g}: nenhum regime cobre")

    if s.alpha1 < s.alpha2:
        return Scenario.FIRST_HEAVIER_SECOND_STABLE

    if _on_boundary(s.mu1, cfg.rate1):
        raise BoundaryError(f"mu1 = phi1 c = {cfg.rate1:.6g}: fronteira entre regimes")

    if s.mu1 < cfg.rate1:
        return Scenario.SECOND_HEAVIER_BOTH_STABLE

    if not s.spectrally_positive2:
        raise UnsupportedError("Regime 4 requer entrada 2 espectralmente positiva")

    if is_integer_index(s.alpha2):
        if s.beta2 is not None:
            raise UnsupportedError(f"Regime 4 requer alpha2 não inteiro (alpha2 = {s.alpha2:.6g})")
        logger.warning(
            "Regime 4 com alpha2 = {} inteiro na rota Poisson composto; "
            "a assíntota é avaliada mesmo assim", s.alpha2
        )

    return Scenario.FIRST_OVERLOADED_SECOND_HEAVIER


def require_scenario(cfg: GpsConfig, s: ModelSummary, expected: Scenario) -> Scenario:
    """
    Garante que a parametrização cai no regime esperado.

    Raises:
        ScenarioError: Se o regime classificado for outro
    """
    actual = classify(cfg, s)
    if actual is not expected:
        raise ScenarioError(
            f"Parametrização pertence ao regime {actual.case_number} ({actual.value}), "
            f"não ao regime {expected.case_number} ({expected.value})"
        )
    return actual
