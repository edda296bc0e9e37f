"""
Suíte de Validação.

Executa os experimentos de aceitação com sementes fixas e produz uma linha
por critério: nome, valor medido, limite e veredito. Falhas são vereditos,
não exceções.

Seletores: oracles, scenario1, scenario2, scenario3, scenario4, stable,
discretization, classifier, horizon, all.

O parâmetro scale multiplica horizontes e tamanhos de amostra (1.0 reproduz
os tamanhos de aceitação completos).
"""

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np
from loguru import logger
from scipy.stats import kstest, norm

from ..asymptotics.formulas import tail_asymptote_q1, tandem_tail
from ..asymptotics.scenarios import classify
from ..estimation.diagnostics import brute_force_terminal, lindley_terminal, sandwich_check
from ..estimation.empirical import empirical_tail
from ..estimation.horizon import horizon_for_level
from ..estimation.occupancy import OccupancyAccumulator, estimate_tail_time_average
from ..estimation.tables import format_decimal
from ..exceptions import BoundaryError, EqualIndexError, GpsLabError, UsageError
from ..gps_sim.engine import generate_arrivals, simulate_discrete, simulate_event_driven
from ..gps_sim.functionals import (
    dual_queue_supremum,
    pollaczek_khinchine_tail,
    simulate_tandem_V,
    single_queue_supremum,
    total_workload_reference,
)
from ..gps_sim.observers import EpochRecorder
from ..levy_inputs.rng import RngStream
from ..levy_inputs.samplers import sample_stable_increment
from ..levy_inputs.tails import c_alpha, mean_rate, summarize_inputs
from ..models.estimates import LevelGrid
from ..models.gps import GpsConfig
from ..models.input_specs import CompoundPoissonSpec, ExponentialJobs, ParetoJobs, StableSpec
from ..models.summary import ModelSummary, Scenario

SUITE_SEED = 20240601


@dataclass(frozen=True)
class CriterionResult:
    """
    Veredito de um critério.

    Atributos:
        name: Nome do critério
        measured: Valor medido
        bound: Limite de aceitação
        passed: Veredito
    """

    name: str
    measured: float
    bound: float
    passed: bool

    def to_line(self) -> str:
        verdict = 'PASS' if self.passed else 'FAIL'
        return f"{self.name},{format_decimal(self.measured)},{format_decimal(self.bound)},{verdict}"


def _n(base: float, scale: float, minimum: int) -> int:
    return max(minimum, int(base * scale))


def _top_down_decades(levels: np.ndarray) -> np.ndarray:
    # 0 para os níveis em (u_max/10, u_max], 1 para a década abaixo, ...
    return np.floor(np.log10(levels[-1] / levels) + 1e-9).astype(int)


def _top_decade_ratio(levels: np.ndarray, ratios: np.ndarray) -> float:
    return float(np.mean(ratios[_top_down_decades(levels) == 0]))


def _decade_distances(levels: np.ndarray, ratios: np.ndarray) -> List[float]:
    """
    Distância média |razão - 1| por década completa, da mais baixa para a mais alta.

    As décadas são contadas a partir do topo; um resto incompleto no pé da
    grade (ex: só u = 10 em 10..1000) é descartado.
    """
    decades = _top_down_decades(levels)
    full = np.sum(decades == 0)
    kept = [d for d in np.unique(decades) if np.sum(decades == d) >= full]
    return [float(np.mean(np.abs(ratios[decades == d] - 1.0))) for d in sorted(kept, reverse=True)]


# ==========================================
# ORÁCULOS
# ==========================================

MM1 = CompoundPoissonSpec(lam=0.5, jobs=ExponentialJobs(rate=1.0))
UNIT = GpsConfig(c=1.0, phi1=0.5, phi2=0.5)


def _mm1_oracle(scale: float) -> List[CriterionResult]:
    horizon = 1e7 * scale
    grid = LevelGrid.of([1.0, 2.0, 4.0, 6.0])
    acc = OccupancyAccumulator(grid, horizon)
    simulate_event_driven(UNIT, MM1, None, horizon, RngStream(SUITE_SEED, 1), [acc])
    estimates = estimate_tail_time_average(acc)
    worst = 0.0
    for est in estimates:
        exact = pollaczek_khinchine_tail(est.u, 0.5, 1.0, 1.0)
        worst = max(worst, abs(est.p_hat - exact) / max(est.half_width, 1e-300))
    return [CriterionResult('mm1_oracle_halfwidths', worst, 3.0, worst <= 3.0)]


TWO_CLASS = (
    CompoundPoissonSpec(lam=0.3, jobs=ExponentialJobs(rate=1.0)),
    CompoundPoissonSpec(lam=0.1, jobs=ParetoJobs(x_m=1.0, alpha=1.5)),
)


def _pathwise_oracles(scale: float) -> List[CriterionResult]:
    # ~10^6 eventos com scale = 1 (taxa total 0.4)
    horizon = 2.5e6 * scale
    cfg = GpsConfig(c=1.0, phi1=0.4, phi2=0.6)
    arrivals = generate_arrivals(*TWO_CLASS, horizon, RngStream(SUITE_SEED, 2))
    epochs = EpochRecorder()
    result = simulate_event_driven(cfg, None, None, horizon, observers=[epochs], arrivals=arrivals)
    t, q1, q2 = epochs.as_arrays()
    t, q1, q2 = t[:-1], q1[:-1], q2[:-1]

    a1, a2 = arrivals
    times = np.concatenate([a1.times, a2.times])
    sizes = np.concatenate([a1.sizes, a2.sizes])
    order = np.argsort(times, kind='stable')
    reference = total_workload_reference(times[order], sizes[order], cfg.c)
    conservation = float(np.max(np.abs(q1 + q2 - reference.values))) if len(t) else 0.0

    isolated = total_workload_reference(a1.times, a1.sizes, cfg.rate1)
    k = np.searchsorted(isolated.times, t, side='right') - 1
    iso = np.where(k >= 0, np.maximum(0.0, isolated.values[np.maximum(k, 0)]
                                      - cfg.rate1 * (t - isolated.times[np.maximum(k, 0)])), 0.0)
    domination = float(np.max(q1 - iso)) if len(t) else 0.0
    total_dom = float(np.max(q1 - (q1 + q2))) if len(t) else 0.0

    ledger = result.ledger
    service = min(ledger.c1 - cfg.rate1 * horizon, ledger.c2 - cfg.rate2 * horizon)

    return [
        CriterionResult('work_conservation_max_abs', conservation, 1e-9, conservation < 1e-9),
        CriterionResult('guaranteed_rate_domination', domination, 1e-9, domination <= 1e-9),
        CriterionResult('total_queue_domination', total_dom, 0.0, total_dom <= 0.0),
        CriterionResult('service_ledger_margin', service, -1e-9, service >= -1e-9),
    ]


def _lindley_oracle(scale: float) -> List[CriterionResult]:
    rng = RngStream(SUITE_SEED, 3).generator
    worst = 0.0
    for _ in range(_n(1000, scale, 100)):
        x = rng.normal(size=10)
        drain = float(rng.uniform(0.0, 1.0))
        worst = max(worst, abs(lindley_terminal(x, drain) - brute_force_terminal(x, drain)))
    return [CriterionResult('lindley_reich_identity', worst, 1e-9, worst <= 1e-9)]


def _oracles(scale: float) -> List[CriterionResult]:
    return _mm1_oracle(scale) + _pathwise_oracles(scale) + _lindley_oracle(scale)


# ==========================================
# REGIMES 1 A 3
# ==========================================

SCENARIO_INPUTS = {
    1: (CompoundPoissonSpec(lam=0.1, jobs=ParetoJobs(x_m=1.0, alpha=1.5)),
        CompoundPoissonSpec(lam=0.33, jobs=ParetoJobs(x_m=1.0, alpha=2.5))),
    2: (CompoundPoissonSpec(lam=0.1, jobs=ParetoJobs(x_m=1.0, alpha=1.5)),
        CompoundPoissonSpec(lam=0.12, jobs=ParetoJobs(x_m=1.0, alpha=2.5))),
    3: (CompoundPoissonSpec(lam=0.12, jobs=ParetoJobs(x_m=1.0, alpha=2.5)),
        CompoundPoissonSpec(lam=0.1, jobs=ParetoJobs(x_m=1.0, alpha=1.5))),
    4: (CompoundPoissonSpec(lam=0.36, jobs=ParetoJobs(x_m=1.0, alpha=2.5)),
        CompoundPoissonSpec(lam=0.1, jobs=ParetoJobs(x_m=1.0, alpha=1.5))),
}


def _direct_estimates(case: int, grid: LevelGrid, horizon: float, stream: int):
    spec1, spec2 = SCENARIO_INPUTS[case]
    acc = OccupancyAccumulator(grid, horizon)
    simulate_event_driven(UNIT, spec1, spec2, horizon, RngStream(SUITE_SEED, stream), [acc])
    return estimate_tail_time_average(acc)


def _ratio_protocol(case: int, scale: float) -> List[CriterionResult]:
    spec1, spec2 = SCENARIO_INPUTS[case]
    summary = summarize_inputs(spec1, spec2)
    scenario = classify(UNIT, summary)
    grid = LevelGrid.geometric(10.0, 1000.0, 5)
    estimates = _direct_estimates(case, grid, 1e8 * scale, 10 + case)

    levels = grid.as_array()
    ratios = np.array([e.p_hat / tail_asymptote_q1(scenario, UNIT, summary, e.u) for e in estimates])
    top = _top_decade_ratio(levels, ratios)
    distances = _decade_distances(levels, ratios)
    trend = max((b - a for a, b in zip(distances, distances[1:])), default=0.0)

    return [
        CriterionResult(f'scenario{case}_classified', float(scenario.case_number), float(case),
                        scenario.case_number == case),
        CriterionResult(f'scenario{case}_top_decade_ratio', top, 1.4, 0.7 <= top <= 1.4),
        CriterionResult(f'scenario{case}_ratio_trend', trend, 0.0, trend <= 0.0),
    ]


def _reduced_load_identity() -> CriterionResult:
    s2 = ModelSummary(mu1=0.3, mu2=0.2, alpha1=1.5, alpha2=2.5, k1=0.1, k2=0.12)
    s3 = ModelSummary(mu1=0.2, mu2=0.3, alpha1=1.5, alpha2=1.2, k1=0.1, k2=0.1)
    diffs = [abs(tail_asymptote_q1(Scenario.FIRST_HEAVIER_SECOND_STABLE, UNIT, s2, u)
                 - tail_asymptote_q1(Scenario.SECOND_HEAVIER_BOTH_STABLE, UNIT, s3, u))
             for u in (1.0, 10.0, 100.0, 1000.0)]
    return CriterionResult('scenario2_3_identical_evaluators', max(diffs), 0.0, max(diffs) == 0.0)


# ==========================================
# REGIME 4 (TANDEM)
# ==========================================

def _tail_of(samples: np.ndarray, levels: List[float]):
    return empirical_tail(samples, LevelGrid.of(sorted(set(levels))))


def _scenario4(scale: float) -> List[CriterionResult]:
    spec1, spec2 = SCENARIO_INPUTS[4]
    summary = summarize_inputs(spec1, spec2)
    mu1 = mean_rate(spec1)
    n = _n(1e6, scale, 200)
    u_top = 200.0
    eps = delta = 0.05
    results = []

    def v_samples(e: float, stream: int) -> np.ndarray:
        return np.array([simulate_tandem_V(spec2, UNIT, mu1, u_top, RngStream(SUITE_SEED + stream, i), eps=e).v
                         for i in range(n)])

    v0 = v_samples(0.0, 40)
    grid = LevelGrid.geometric(2.0, u_top, 5)
    levels = grid.as_array()
    est_v = empirical_tail(v0, grid)
    ratios = np.array([e.p_hat / tandem_tail(e.u, 0.0, UNIT, summary) for e in est_v])
    top = _top_decade_ratio(levels, ratios)
    results.append(CriterionResult('scenario4_tandem_top_decade_ratio', top, 1.4, 0.7 <= top <= 1.4))

    test_levels = [20.0, 50.0, 100.0]
    direct = _direct_estimates(4, LevelGrid.of(test_levels), 1e8 * scale, 14)
    v_minus = v_samples(-eps, 41)
    v_plus = v_samples(eps, 42)
    dual = np.array([dual_queue_supremum(spec1, mu1 - eps, u_top, RngStream(SUITE_SEED + 43, i))
                     for i in range(_n(1e4, scale, 200))])
    iso = np.array([single_queue_supremum(spec1, mu1 + eps, u_top, RngStream(SUITE_SEED + 44, i))
                    for i in range(_n(1e4, scale, 200))])

    margins = []
    for est in direct:
        u, x = est.u, math.sqrt(est.u)
        p_v_minus = _tail_of(v_minus, [u + x])[0]
        p_dual_le_x = 1.0 - _tail_of(dual, [x])[0].ci_high
        p_v_plus = _tail_of(v_plus, [(1.0 - delta) * u])[0]
        p_iso = _tail_of(iso, [delta * u])[0]
        report = sandwich_check(est, p_v_minus, p_dual_le_x, p_v_plus, p_iso, eps, delta, x)
        margins.append(min(report.lower_margin, report.upper_margin))
    worst = min(margins)
    results.append(CriterionResult('scenario4_sandwich_min_margin', worst, 0.0, worst >= 0.0))

    overlaps = 0
    for est in direct[:2]:
        v_est = _tail_of(v0, [est.u])[0]
        if est.ci_low <= v_est.ci_high and v_est.ci_low <= est.ci_high:
            overlaps += 1
    results.append(CriterionResult('scenario4_direct_vs_tandem_overlaps', float(overlaps), 2.0, overlaps == 2))
    return results


# ==========================================
# ENTRADAS ESTÁVEIS
# ==========================================

def _stable(scale: float) -> List[CriterionResult]:
    value = c_alpha(1.5)
    results = [CriterionResult('c_alpha_1_5_abs_error', abs(value - 0.199471), 1e-6,
                               abs(value - 0.199471) <= 1e-6)]

    n = _n(1e7, scale, 10 ** 5)
    xs = np.geomspace(100.0, 1000.0, 6)
    for k, (alpha, beta) in enumerate([(1.5, 1.0), (1.5, 0.0), (1.7, 0.5)]):
        spec = StableSpec(alpha=alpha, beta=beta, mu=0.0)
        draws = np.sort(sample_stable_increment(spec, 1.0, RngStream(SUITE_SEED + 50, k), size=n))
        tail = (n - np.searchsorted(draws, xs, side='right')) / n
        measured = float(np.mean(xs ** alpha * tail))
        target = c_alpha(alpha) * (1.0 + beta)
        rel = abs(measured / target - 1.0)
        results.append(CriterionResult(f'stable_tail_a{alpha}_b{beta}_rel_error', rel, 0.15, rel <= 0.15))

    gauss = StableSpec(alpha=2.0, beta=0.0, mu=0.4)
    draws = sample_stable_increment(gauss, 1.0, RngStream(SUITE_SEED + 51, 0), size=_n(1e5, scale, 10 ** 4))
    p_value = float(kstest(draws, norm(loc=0.4, scale=math.sqrt(2.0)).cdf).pvalue)
    results.append(CriterionResult('stable_alpha2_ks_pvalue', p_value, 0.01, p_value > 0.01))
    return results


# ==========================================
# DISCRETIZAÇÃO, CLASSIFICADOR E HORIZONTE
# ==========================================

def _discretization(scale: float) -> List[CriterionResult]:
    horizon = 1e5 * scale
    spec1, spec2 = TWO_CLASS
    arrivals = generate_arrivals(spec1, spec2, horizon, RngStream(SUITE_SEED, 60))
    grid = LevelGrid.of([2.0])

    exact = OccupancyAccumulator(grid, horizon)
    simulate_event_driven(UNIT, None, None, horizon, observers=[exact], arrivals=arrivals)
    p_exact = exact.above.sum() / exact.total_time

    errors = []
    for h in (0.4, 0.2, 0.1, 0.05):
        steps = int(round(horizon / h))
        acc = OccupancyAccumulator(grid, horizon)
        simulate_discrete(UNIT, None, None, h, steps, observers=[acc], arrivals=arrivals)
        errors.append(abs(acc.above.sum() / acc.total_time - p_exact))

    ratios = [a / b if b > 0 else math.inf for a, b in zip(errors, errors[1:])]
    worst = min(ratios)
    return [CriterionResult('discretization_error_halving_ratio', worst, 1.7, worst >= 1.7)]


def _expected_regime(cfg: GpsConfig, s: ModelSummary):
    mu = s.mu1 + s.mu2
    if mu >= cfg.c or s.mu2 == cfg.rate2:
        return BoundaryError
    if s.mu2 > cfg.rate2:
        return Scenario.SECOND_OVERLOADED
    if s.alpha1 == s.alpha2:
        return EqualIndexError
    if s.alpha1 < s.alpha2:
        return Scenario.FIRST_HEAVIER_SECOND_STABLE
    if s.mu1 == cfg.rate1:
        return BoundaryError
    if s.mu1 < cfg.rate1:
        return Scenario.SECOND_HEAVIER_BOTH_STABLE
    return Scenario.FIRST_OVERLOADED_SECOND_HEAVIER


def _classifier() -> List[CriterionResult]:
    mismatches = 0
    points = 0
    for phi1, f1, f2, (a1, a2) in itertools.product(
            (0.25, 0.5, 0.75), (0.5, 1.0, 1.5), (0.5, 1.0, 1.5),
            ((1.5, 2.5), (2.5, 1.5), (1.5, 1.5))):
        cfg = GpsConfig(c=1.0, phi1=phi1, phi2=1.0 - phi1)
        s = ModelSummary(mu1=cfg.rate1 * f1, mu2=cfg.rate2 * f2, alpha1=a1, alpha2=a2, k1=1.0, k2=1.0)
        expected = _expected_regime(cfg, s)
        points += 1
        try:
            actual = classify(cfg, s)
        except GpsLabError as exc:
            actual = type(exc)
        if actual is not expected:
            mismatches += 1
            logger.warning("Classificador divergiu em phi1={}, mu=({}, {}), alpha=({}, {}): {} != {}",
                           phi1, s.mu1, s.mu2, a1, a2, actual, expected)
    return [CriterionResult(f'classifier_mismatches_of_{points}', float(mismatches), 0.0, mismatches == 0),
            _reduced_load_identity()]


def _horizon(scale: float) -> List[CriterionResult]:
    u = 2.0
    n = _n(4000, scale, 400)
    base = horizon_for_level(u, 1.0, 0.5)
    p = []
    for k, horizon in enumerate((base, 2.0 * base)):
        sups = np.array([single_queue_supremum(MM1, 1.0, u, RngStream(SUITE_SEED + 70 + k, i), horizon=horizon)
                         for i in range(n)])
        p.append(empirical_tail(sups, LevelGrid.of([u]))[0])
    change = abs(p[0].p_hat - p[1].p_hat) / max(p[0].half_width, 1e-300)
    return [CriterionResult('horizon_doubling_halfwidths', change, 1.0, change < 1.0)]


SELECTORS: Dict[str, Callable[[float], List[CriterionResult]]] = {
    'oracles': _oracles,
    'scenario1': lambda scale: _ratio_protocol(1, scale),
    'scenario2': lambda scale: _ratio_protocol(2, scale) + [_reduced_load_identity()],
    'scenario3': lambda scale: _ratio_protocol(3, scale) + [_reduced_load_identity()],
    'scenario4': _scenario4,
    'stable': _stable,
    'discretization': _discretization,
    'classifier': lambda scale: _classifier(),
    'horizon': _horizon,
}


def validate_suite(selector: str, scale: float = 1.0) -> List[CriterionResult]:
    """
    Executa os critérios de aceitação do seletor.

    Args:
        selector: Nome do grupo ou 'all'
        scale: Fator sobre horizontes e tamanhos de amostra

    Returns:
        Lista de CriterionResult

    Raises:
        UsageError: Seletor desconhecido
    """
    if selector == 'all':
        names = list(SELECTORS)
    elif selector in SELECTORS:
        names = [selector]
    else:
        raise UsageError(f"Seletor desconhecido: {selector!r} (opções: {', '.join(SELECTORS)}, all)")
    if not scale > 0:
        raise UsageError(f"scale deve ser positivo (recebido {scale})")

    results = []
    for name in names:
        logger.info("Validando {} (scale = {})", name, scale)
        results.extend(SELECTORS[name](scale))
    return results
