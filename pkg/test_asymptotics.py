"""
Testes das Assintóticas.

Classificação dos regimes, avaliadores f1(u), casos especializados
(Poisson composto-Pareto e alfa-estável), limitantes e funcional tandem.
"""
import sys
from pathlib import Path

import numpy as np
import pytest

# Adicionar diretório raiz ao path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.asymptotics import (
    c_alpha,
    classify,
    cp_asymptote,
    finite_horizon_tail,
    isolated_tail_asymptote,
    remark_bounds,
    stable_asymptote,
    tail_asymptote_q1,
    tandem_tail,
)
from src.exceptions import (
    BoundaryError,
    EqualIndexError,
    ScenarioError,
    UnstableQueueError,
    UnsupportedError,
)
from src.gps_sim import finite_window_supremum
from src.levy_inputs import RngStream, marginal_tail, summarize_inputs
from src.models import CompoundPoissonSpec, GpsConfig, ModelSummary, ParetoJobs, Scenario, StableSpec

UNIT = GpsConfig(1.0, 0.5, 0.5)
SKEWED = GpsConfig(1.0, 0.3, 0.7)

# Parâmetros do caso 4 Poisson composto: mu1 = 0.4, mu2 = 0.3
CASE4_CLASS1 = CompoundPoissonSpec(lam=0.24, jobs=ParetoJobs(x_m=1.0, alpha=2.5))
CASE4_CLASS2 = CompoundPoissonSpec(lam=0.1, jobs=ParetoJobs(x_m=1.0, alpha=1.5))


def summary(mu1, mu2, alpha1, alpha2, k1=0.1, k2=0.1, beta2=None, positive=True):
    return ModelSummary(mu1, mu2, alpha1, alpha2, k1, k2, beta2, positive)


# ==========================================
# CLASSIFICAÇÃO
# ==========================================

def test_classify_examples():
    assert classify(UNIT, summary(0.2, 0.6, 1.5, 1.8)) is Scenario.SECOND_OVERLOADED
    assert classify(UNIT, summary(0.2, 0.3, 1.5, 1.8)) is Scenario.FIRST_HEAVIER_SECOND_STABLE
    assert classify(UNIT, summary(0.2, 0.3, 1.8, 1.5)) is Scenario.SECOND_HEAVIER_BOTH_STABLE
    assert (classify(SKEWED, summary(0.4, 0.3, 1.8, 1.5, beta2=1.0))
            is Scenario.FIRST_OVERLOADED_SECOND_HEAVIER)


def test_classify_equal_indices():
    with pytest.raises(EqualIndexError):
        classify(UNIT, summary(0.2, 0.3, 1.5, 1.5))


def test_classify_boundaries():
    with pytest.raises(BoundaryError):
        classify(UNIT, summary(0.2, 0.5, 1.5, 1.8))
    with pytest.raises(BoundaryError):
        classify(UNIT, summary(0.5, 0.3, 1.8, 1.5))
    with pytest.raises(BoundaryError):
        classify(UNIT, summary(0.6, 0.4, 1.8, 1.5))


def test_classify_scenario4_hypotheses():
    with pytest.raises(UnsupportedError):
        classify(SKEWED, summary(0.4, 0.3, 1.8, 1.5, beta2=0.0, positive=False))
    with pytest.raises(UnsupportedError):
        classify(SKEWED, summary(0.4, 0.3, 2.5, 2.0, beta2=1.0))


def test_classify_integer_index_on_cp_route_only_warns():
    s = summary(0.4, 0.3, 2.5, 2.0)
    assert classify(SKEWED, s) is Scenario.FIRST_OVERLOADED_SECOND_HEAVIER


def test_classify_is_total_off_the_boundaries():
    for mu1 in (0.1, 0.3, 0.45):
        for mu2 in (0.1, 0.3, 0.45, 0.52):
            for alphas in ((1.3, 1.7), (1.7, 1.3)):
                if mu1 + mu2 >= 1.0 or (mu1 > 0.5 and mu2 > 0.5):
                    continue
                assert isinstance(classify(UNIT, summary(mu1, mu2, *alphas)), Scenario)


# ==========================================
# AVALIADORES GERAIS
# ==========================================

def test_scenario1_value():
    s = summary(0.2, 0.6, 1.5, 1.8, k1=c_alpha(1.5))
    value = tail_asymptote_q1(Scenario.SECOND_OVERLOADED, UNIT, s, 1e4)
    assert value == pytest.approx(0.013298, rel=1e-4)


def test_scenario2_cp_value():
    spec1 = CompoundPoissonSpec(lam=0.1, jobs=ParetoJobs(x_m=1.0, alpha=1.5))
    spec2 = CompoundPoissonSpec(lam=0.12, jobs=ParetoJobs(x_m=1.0, alpha=2.5))
    s = summarize_inputs(spec1, spec2)
    value = tail_asymptote_q1(Scenario.FIRST_HEAVIER_SECOND_STABLE, UNIT, s, 100.0)
    assert value == pytest.approx(0.04, rel=1e-9)


def test_tail_asymptote_decreasing():
    s = summary(0.2, 0.3, 1.5, 1.8)
    values = [tail_asymptote_q1(Scenario.FIRST_HEAVIER_SECOND_STABLE, UNIT, s, u)
              for u in (1.0, 10.0, 1e3, 1e6)]
    assert all(b < a for a, b in zip(values, values[1:]))
    assert values[-1] < 1e-3


def test_wrong_scenario_is_rejected():
    s = summary(0.2, 0.3, 1.5, 1.8)
    with pytest.raises(ScenarioError):
        tail_asymptote_q1(Scenario.SECOND_OVERLOADED, UNIT, s, 10.0)


def test_scenarios_2_and_3_share_the_expression():
    s2 = summary(0.3, 0.2, 1.5, 2.5, k1=0.1, k2=0.12)
    s3 = summary(0.2, 0.3, 1.5, 1.2, k1=0.1, k2=0.1)
    for u in (1.0, 10.0, 1000.0):
        assert (tail_asymptote_q1(Scenario.FIRST_HEAVIER_SECOND_STABLE, UNIT, s2, u)
                == tail_asymptote_q1(Scenario.SECOND_HEAVIER_BOTH_STABLE, UNIT, s3, u))


# ==========================================
# CASOS ESPECIALIZADOS
# ==========================================

def test_cp_case4_value():
    value = cp_asymptote(4, SKEWED, CASE4_CLASS1, CASE4_CLASS2, 1e4)
    assert value == pytest.approx(0.0033333, rel=1e-4)


def test_cp_asymptote_matches_general_evaluator():
    cases = {
        1: (CompoundPoissonSpec(0.1, ParetoJobs(1.0, 1.5)), CompoundPoissonSpec(0.33, ParetoJobs(1.0, 2.5)), UNIT),
        2: (CompoundPoissonSpec(0.1, ParetoJobs(1.0, 1.5)), CompoundPoissonSpec(0.12, ParetoJobs(1.0, 2.5)), UNIT),
        3: (CompoundPoissonSpec(0.12, ParetoJobs(1.0, 2.5)), CompoundPoissonSpec(0.1, ParetoJobs(1.0, 1.5)), UNIT),
        4: (CASE4_CLASS1, CASE4_CLASS2, SKEWED),
    }
    for case, (spec1, spec2, cfg) in cases.items():
        s = summarize_inputs(spec1, spec2)
        general = tail_asymptote_q1(Scenario.from_case(case), cfg, s, 250.0)
        assert cp_asymptote(case, cfg, spec1, spec2, 250.0) == pytest.approx(general, rel=1e-12)


def test_stable_asymptote_matches_general_evaluator():
    cases = {
        1: (StableSpec(1.5, 0.0, 0.2), StableSpec(1.8, 0.3, 0.6), UNIT),
        2: (StableSpec(1.5, 0.5, 0.2), StableSpec(1.8, 0.0, 0.3), UNIT),
        3: (StableSpec(1.8, 0.0, 0.2), StableSpec(1.5, -0.5, 0.3), UNIT),
        4: (StableSpec(1.8, 0.0, 0.4), StableSpec(1.5, 1.0, 0.3), SKEWED),
    }
    for case, (spec1, spec2, cfg) in cases.items():
        s = summarize_inputs(spec1, spec2)
        general = tail_asymptote_q1(Scenario.from_case(case), cfg, s, 500.0)
        assert stable_asymptote(case, cfg, spec1, spec2, 500.0) == pytest.approx(general, rel=1e-12)


def test_specialized_evaluators_check_hypotheses():
    with pytest.raises(ScenarioError):
        cp_asymptote(1, SKEWED, CASE4_CLASS1, CASE4_CLASS2, 10.0)
    with pytest.raises(ScenarioError):
        stable_asymptote(2, UNIT, StableSpec(2.0, 0.0, 0.2), StableSpec(1.5, 0.0, 0.2), 10.0)


# ==========================================
# LIMITANTES, FILA ISOLADA, JANELA FINITA, TANDEM
# ==========================================

def test_remark_bounds_value_and_order():
    s = summary(0.4, 0.2, 1.8, 1.5, k2=c_alpha(1.5), beta2=0.0, positive=False)
    lower, upper = remark_bounds(SKEWED, s)
    assert lower == pytest.approx(0.37690, rel=1e-3)
    assert lower < upper


def test_remark_bounds_hypotheses():
    with pytest.raises(ScenarioError):
        remark_bounds(UNIT, summary(0.2, 0.3, 1.8, 1.5, beta2=0.0))
    with pytest.raises(ScenarioError):
        remark_bounds(SKEWED, summary(0.4, 0.2, 1.8, 1.5))


def test_isolated_tail_asymptote():
    assert isolated_tail_asymptote(100.0, 1.0, 0.3, 1.5, 0.1) == pytest.approx(0.028571, rel=1e-4)
    scaled = [isolated_tail_asymptote(u, 1.0, 0.3, 1.5, 0.1) * u ** 0.5 for u in (10.0, 1e3, 1e5)]
    assert scaled == pytest.approx([scaled[0]] * 3, rel=1e-12)
    with pytest.raises(UnstableQueueError):
        isolated_tail_asymptote(100.0, 0.3, 0.3, 1.5, 0.1)


def test_finite_horizon_tail_is_marginal_tail():
    spec = CompoundPoissonSpec(lam=0.1, jobs=ParetoJobs(1.0, 1.5))
    assert finite_horizon_tail(100.0, spec) == pytest.approx(1e-4)
    assert finite_horizon_tail(7.0, spec) == marginal_tail(spec, 7.0)


def test_finite_horizon_tail_matches_monte_carlo():
    """Supremo em [0, 1] com escoamento c = 1 contra lambda P(X > u) em u = 15."""
    spec = CompoundPoissonSpec(lam=0.5, jobs=ParetoJobs(1.0, 1.5))
    rng = RngStream(41)
    sups = np.array([finite_window_supremum(spec, 1.0, 1.0, rng) for _ in range(40_000)])

    u = 15.0
    assert np.mean(sups > u) / finite_horizon_tail(u, spec) == pytest.approx(1.0, rel=0.3)
    assert np.mean(sups > 2.0) > np.mean(sups > u)


def test_tandem_tail_reproduces_scenario4():
    s = summarize_inputs(CASE4_CLASS1, CASE4_CLASS2)
    assert tandem_tail(1e4, 0.0, SKEWED, s) == pytest.approx(0.0033333, rel=1e-4)
    assert tandem_tail(1e4, 0.0, SKEWED, s) == pytest.approx(
        tail_asymptote_q1(Scenario.FIRST_OVERLOADED_SECOND_HEAVIER, SKEWED, s, 1e4), rel=1e-12)


def test_tandem_tail_increases_with_eps():
    s = summarize_inputs(CASE4_CLASS1, CASE4_CLASS2)
    values = [tandem_tail(100.0, eps, SKEWED, s) for eps in (-0.05, 0.0, 0.05, 0.09)]
    assert all(b > a for a, b in zip(values, values[1:]))
    with pytest.raises(ScenarioError):
        tandem_tail(100.0, 0.15, SKEWED, s)
