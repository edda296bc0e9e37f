"""
Avaliadores Assintóticos.

Implementa as assíntotas de P(Q1 > u) nos quatro regimes, os casos
especializados (Poisson composto e alfa-estável), os limitantes para
beta2 em (-1, 1], a cauda de uma fila isolada, a cauda em horizonte finito
e a cauda do funcional tandem V^eps.

Os funcionais lentamente variantes L_i são constantes (coeficientes k_i).
"""

from typing import Tuple

from loguru import logger

from ..exceptions import ParameterError, ScenarioError, UnstableQueueError
from ..levy_inputs.tails import c_alpha, marginal_tail, summarize_inputs
from ..models.gps import GpsConfig
from ..models.input_specs import ClassInputSpec, CompoundPoissonSpec, ParetoJobs, StableSpec
from ..models.summary import ModelSummary, Scenario
from .scenarios import is_integer_index, require_scenario


def _check_level(u: float):
    if not u > 0:
        raise ParameterError(f"u deve ser positivo (recebido {u})")


def isolated_tail_asymptote(u: float, d: float, mu: float, alpha: float, k: float) -> float:
    """
    Cauda de uma fila isolada escoada à taxa d (resultado clássico de fila única).

    P(Q^d > u) ~ k / ((d - mu)(alpha - 1)) u^(1 - alpha)

    Args:
        u: Nível
        d: Taxa de escoamento
        mu: Taxa média de entrada
        alpha: Índice de cauda
        k: Coeficiente de cauda de Z(1)

    Raises:
        UnstableQueueError: Se d <= mu
    """
    if d <= mu:
        raise UnstableQueueError(f"Fila isolada instável: d = {d:.6g} <= mu = {mu:.6g}")
    _check_level(u)
    return k / ((d - mu) * (alpha - 1.0)) * u ** (1.0 - alpha)


def _reduced_load(c: float, mu: float, alpha1: float, k1: float, u: float) -> float:
    # Regimes 2 e 3 compartilham exatamente esta expressão
    return k1 / ((c - mu) * (alpha1 - 1.0)) * u ** (1.0 - alpha1)


def _tandem_constant(cfg: GpsConfig, s: ModelSummary, eps: float) -> float:
    ratio = (s.mu1 - cfg.rate1 + eps) / (cfg.rate2 - s.mu2)
    return ratio ** (s.alpha2 - 1.0) / ((cfg.c - s.mu - eps) * (s.alpha2 - 1.0))


def tail_asymptote_q1(scenario: Scenario, cfg: GpsConfig, s: ModelSummary, u: float) -> float:
    """
    Avalia f1(u), a assíntota de P(Q1 > u) no regime informado.

    Args:
        scenario: Regime (deve coincidir com classify(cfg, s))
        cfg: Configuração GPS
        s: Resumo das entradas
        u: Nível

    Returns:
        f1(u)

    Raises:
        ScenarioError: Se o regime não for o da parametrização
    """
    _check_level(u)
    require_scenario(cfg, s, scenario)

    if scenario is Scenario.SECOND_OVERLOADED:
        return isolated_tail_asymptote(u, cfg.rate1, s.mu1, s.alpha1, s.k1)
    if scenario in (Scenario.FIRST_HEAVIER_SECOND_STABLE, Scenario.SECOND_HEAVIER_BOTH_STABLE):
        return _reduced_load(cfg.c, s.mu, s.alpha1, s.k1, u)
    return _tandem_constant(cfg, s, 0.0) * s.k2 * u ** (1.0 - s.alpha2)


def cp_asymptote(case: int, cfg: GpsConfig, spec1: CompoundPoissonSpec,
                 spec2: CompoundPoissonSpec, u: float) -> float:
    """
    Assíntota de P(Q1 > u) para entradas Poisson composto com jobs Pareto.

    Escrita em termos de lambda_i e da cauda dos jobs L_i = x_m^alpha_i.

    Args:
        case: Caso 1 a 4
        cfg: Configuração GPS
        spec1, spec2: Entradas Poisson composto
        u: Nível

    Raises:
        ScenarioError: Se as hipóteses do caso não valerem
    """
    _check_level(u)
    for spec in (spec1, spec2):
        if not isinstance(spec, CompoundPoissonSpec) or not isinstance(spec.jobs, ParetoJobs):
            raise ScenarioError("cp_asymptote requer entradas Poisson composto com jobs Pareto")

    s = summarize_inputs(spec1, spec2)
    scenario = require_scenario(cfg, s, Scenario.from_case(case))
    lam1, lam2 = spec1.lam, spec2.lam
    a1, a2 = spec1.jobs.alpha, spec2.jobs.alpha
    L1, L2 = spec1.jobs.tail_coefficient, spec2.jobs.tail_coefficient

    if scenario is Scenario.SECOND_OVERLOADED:
        return lam1 / (cfg.rate1 - s.mu1) / (a1 - 1.0) * u ** (1.0 - a1) * L1
    if scenario in (Scenario.FIRST_HEAVIER_SECOND_STABLE, Scenario.SECOND_HEAVIER_BOTH_STABLE):
        return lam1 / (cfg.c - s.mu) / (a1 - 1.0) * u ** (1.0 - a1) * L1

    if is_integer_index(a2):
        logger.warning("cp_asymptote caso 4 com alpha2 = {} inteiro", a2)
    ratio = (s.mu1 - cfg.rate1) / (cfg.rate2 - s.mu2)
    return lam2 / (cfg.c - s.mu) * ratio ** (a2 - 1.0) / (a2 - 1.0) * u ** (1.0 - a2) * L2


def stable_asymptote(case: int, cfg: GpsConfig, spec1: StableSpec,
                     spec2: StableSpec, u: float) -> float:
    """
    Assíntota de P(Q1 > u) para entradas alfa-estáveis com alpha_i em (1, 2).

    Args:
        case: Caso 1 a 4 (caso 4 exige beta2 = 1)
        cfg: Configuração GPS
        spec1, spec2: Entradas estáveis
        u: Nível

    Raises:
        ScenarioError: Se as hipóteses do caso não valerem
    """
    _check_level(u)
    for spec in (spec1, spec2):
        if not isinstance(spec, StableSpec) or not spec.alpha < 2.0:
            raise ScenarioError("stable_asymptote requer entradas estáveis com alpha em (1, 2)")

    s = summarize_inputs(spec1, spec2)
    scenario = require_scenario(cfg, s, Scenario.from_case(case))
    a1, a2 = spec1.alpha, spec2.alpha

    if scenario is Scenario.SECOND_OVERLOADED:
        return c_alpha(a1) * (1.0 + spec1.beta) / ((cfg.rate1 - spec1.mu) * (a1 - 1.0)) * u ** (1.0 - a1)
    if scenario in (Scenario.FIRST_HEAVIER_SECOND_STABLE, Scenario.SECOND_HEAVIER_BOTH_STABLE):
        return c_alpha(a1) * (1.0 + spec1.beta) / ((cfg.c - s.mu) * (a1 - 1.0)) * u ** (1.0 - a1)

    ratio = (spec1.mu - cfg.rate1) / (cfg.rate2 - spec2.mu)
    return 2.0 * c_alpha(a2) / ((cfg.c - s.mu) * (a2 - 1.0)) * ratio ** (a2 - 1.0) * u ** (1.0 - a2)


def remark_bounds(cfg: GpsConfig, s: ModelSummary, u: float = 1.0) -> Tuple[float, float]:
    """
    Limitantes inferior e superior de P(Q1 > u), justos a menos de constante,
    para o regime 4 com beta2 em (-1, 1].

    Com u = 1 os valores são os próprios coeficientes de u^(1 - alpha2).

    Args:
        cfg: Configuração GPS
        s: Resumo (k2 = c_alpha2 (1 + beta2))
        u: Nível

    Returns:
        (inferior, superior)

    Raises:
        ScenarioError: Se mu1 <= phi1 c, alpha2 >= alpha1, beta2 ausente
                       ou fora de (-1, 1], ou mu >= c
    """
    _check_level(u)
    if s.beta2 is None or not -1.0 < s.beta2 <= 1.0:
        raise ScenarioError("remark_bounds requer entrada 2 estável com beta2 em (-1, 1]")
    if not s.mu1 > cfg.rate1:
        raise ScenarioError("remark_bounds requer mu1 > phi1 c")
    if not s.alpha2 < s.alpha1:
        raise ScenarioError("remark_bounds requer alpha2 < alpha1")
    if not s.mu < cfg.c:
        raise ScenarioError("remark_bounds requer mu < c")

    ratio = ((s.mu1 - cfg.rate1) / cfg.rate2) ** (s.alpha2 - 1.0)
    lower = s.k2 / ((cfg.c - s.mu) * (s.alpha2 - 1.0)) * ratio
    upper = (s.k2 / ((cfg.c - s.mu) * (s.alpha2 - 1.0)) + s.k2 / cfg.rate2) * ratio
    scale = u ** (1.0 - s.alpha2)
    return lower * scale, upper * scale


def finite_horizon_tail(u: float, spec: ClassInputSpec) -> float:
    """
    Cauda do supremo em janela finita: equivale à cauda marginal de Z(1),
    sem dependência da janela nem da taxa de escoamento.
    """
    return marginal_tail(spec, u)


def tandem_tail(u: float, eps: float, cfg: GpsConfig, s: ModelSummary) -> float:
    """
    Assíntota de P(V^eps > u) para o funcional tandem.

    ((mu1 - phi1 c + eps)/(phi2 c - mu2))^(alpha2 - 1) k2 / ((c - mu - eps)(alpha2 - 1)) u^(1 - alpha2)

    Args:
        u: Nível
        eps: Perturbação da taxa, |eps| < min(c - mu, mu1 - phi1 c)
        cfg: Configuração GPS
        s: Resumo das entradas

    Raises:
        ScenarioError: Hipóteses violadas
    """
    _check_level(u)
    margin = min(cfg.c - s.mu, s.mu1 - cfg.rate1)
    if not margin > 0:
        raise ScenarioError("tandem_tail requer mu < c e mu1 > phi1 c")
    if not abs(eps) < margin:
        raise ScenarioError(f"|eps| = {abs(eps):.6g} deve ser menor que {margin:.6g}")
    if not s.mu2 < cfg.rate2:
        raise ScenarioError("tandem_tail requer mu2 < phi2 c")
    if not s.spectrally_positive2:
        raise ScenarioError("tandem_tail requer entrada 2 espectralmente positiva")
    if is_integer_index(s.alpha2):
        raise ScenarioError(f"tandem_tail requer alpha2 não inteiro (alpha2 = {s.alpha2:.6g})")
    return _tandem_constant(cfg, s, eps) * s.k2 * u ** (1.0 - s.alpha2)
