"""
Testes das Entradas Lévy.

Amostragem Pareto, chegadas Poisson composto, incrementos estáveis e
grandezas resumo (taxa média, índice e coeficiente de cauda).
"""
import sys
from pathlib import Path

import numpy as np
import pytest
from scipy.stats import ks_2samp, kstest

# Adicionar diretório raiz ao path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.exceptions import ParameterError
from src.levy_inputs import (
    RngStream,
    c_alpha,
    cp_arrivals,
    marginal_sample,
    marginal_tail,
    mean_rate,
    pareto_inverse_cdf,
    sample_jobs,
    sample_pareto,
    sample_stable_increment,
    summarize_inputs,
    tail_coefficient,
    tail_index,
)
from src.models import (
    CompoundPoissonSpec,
    DeterministicJobs,
    ExponentialJobs,
    ParetoJobs,
    StableSpec,
)

PARETO = ParetoJobs(x_m=1.0, alpha=1.5)


# ==========================================
# PARETO
# ==========================================

def test_pareto_inverse_cdf_hand_values():
    """Inversão da CDF: 0.25^(-2/3) e U = 1 devolve x_m."""
    assert pareto_inverse_cdf(PARETO, 0.25) == pytest.approx(2.5198421, rel=1e-6)
    assert pareto_inverse_cdf(PARETO, 1.0) == 1.0


def test_pareto_inverse_cdf_rejects_zero():
    with pytest.raises(ParameterError):
        pareto_inverse_cdf(PARETO, 0.0)


def test_pareto_draws_are_above_scale():
    draws = sample_pareto(ParetoJobs(x_m=2.0, alpha=2.5), RngStream(1), size=10_000)
    assert draws.min() >= 2.0


def test_pareto_tail_probabilities():
    """P(X > u) = u^-1.5 e mediana 2^(2/3)."""
    draws = sample_pareto(PARETO, RngStream(2024), size=1_000_000)
    for u in (2.0, 10.0, 100.0):
        assert np.mean(draws > u) == pytest.approx(u ** -1.5, rel=0.15)
    assert np.median(draws) == pytest.approx(2.0 ** (2.0 / 3.0), rel=0.01)


def test_invalid_pareto_parameters():
    with pytest.raises(ParameterError):
        ParetoJobs(x_m=1.0, alpha=1.0)
    with pytest.raises(ParameterError):
        ParetoJobs(x_m=0.0, alpha=1.5)


def test_sample_jobs_deterministic():
    assert np.all(sample_jobs(DeterministicJobs(0.25), RngStream(0), 5) == 0.25)


# ==========================================
# CHEGADAS POISSON COMPOSTO
# ==========================================

def test_cp_arrival_count_and_order():
    spec = CompoundPoissonSpec(lam=0.1, jobs=PARETO)
    arrivals = cp_arrivals(spec, 1e6, RngStream(7))

    assert abs(len(arrivals) - 1e5) / 1e5 < 0.01
    assert np.all(np.diff(arrivals.times) > 0)
    assert arrivals.times[-1] < 1e6
    assert kstest(arrivals.sizes, lambda x: 1.0 - x ** -1.5).pvalue > 1e-3


def test_cp_arrivals_vanishing_window_is_empty():
    spec = CompoundPoissonSpec(lam=0.1, jobs=PARETO)
    arrivals = cp_arrivals(spec, 1e-9, RngStream(3))
    assert len(arrivals) == 0


def test_cp_arrivals_rejects_nonpositive_horizon():
    spec = CompoundPoissonSpec(lam=0.1, jobs=PARETO)
    with pytest.raises(ParameterError):
        cp_arrivals(spec, 0.0, RngStream(0))


def test_same_stream_reproduces_draws():
    spec = CompoundPoissonSpec(lam=0.5, jobs=ExponentialJobs(1.0))
    a = cp_arrivals(spec, 1000.0, RngStream(42, 3))
    b = cp_arrivals(spec, 1000.0, RngStream(42, 3))
    c = cp_arrivals(spec, 1000.0, RngStream(42, 4))

    assert np.array_equal(a.times, b.times)
    assert np.array_equal(a.sizes, b.sizes)
    assert not np.array_equal(a.times[:10], c.times[:10])


def test_child_stream_shares_seed():
    child = RngStream(9, 0).child(5)
    assert child.to_dict() == {'seed': 9, 'stream_id': 5}


# ==========================================
# INCREMENTOS ESTÁVEIS
# ==========================================

def test_gaussian_stable_has_variance_two():
    """alpha = 2 é Normal(0, 2) na parametrização com escala 1."""
    spec = StableSpec(alpha=2.0, beta=0.0, mu=0.0)
    draws = sample_stable_increment(spec, 1.0, RngStream(11), size=2000)
    result = kstest(draws, 'norm', args=(0.0, np.sqrt(2.0)))
    assert result.pvalue > 0.01


def stable_log_cf(spec, h, theta):
    skew = 1.0 - 1j * spec.beta * np.sign(theta) * np.tan(np.pi * spec.alpha / 2.0)
    return h * (-np.abs(theta) ** spec.alpha * skew + 1j * spec.mu * theta)


@pytest.mark.parametrize('theta', [0.5, 1.0, 2.0])
def test_stable_increment_characteristic_function(theta):
    spec = StableSpec(alpha=1.5, beta=1.0, mu=0.3)
    h = 0.5
    draws = sample_stable_increment(spec, h, RngStream(31), size=200_000)

    empirical = np.mean(np.exp(1j * theta * draws))
    expected = np.exp(stable_log_cf(spec, h, theta))
    assert abs(empirical - expected) < 0.01


def test_stable_increments_are_self_similar():
    """Soma de 4 incrementos unitários tem a lei de 4^(1/alpha) vezes um incremento."""
    spec = StableSpec(alpha=1.5, beta=1.0, mu=0.0)
    n = 50_000
    summed = sample_stable_increment(spec, 1.0, RngStream(32), size=(n, 4)).sum(axis=1)
    scaled = 4.0 ** (1.0 / 1.5) * sample_stable_increment(spec, 1.0, RngStream(33), size=n)
    direct = sample_stable_increment(spec, 4.0, RngStream(34), size=n)

    assert ks_2samp(summed, scaled).pvalue > 1e-3
    assert ks_2samp(summed, direct).pvalue > 1e-3
    for q in (0.1, 0.5, 0.9):
        assert np.quantile(summed, q) == pytest.approx(np.quantile(direct, q), abs=0.15)


def test_stable_increment_at_zero_step():
    spec = StableSpec(alpha=1.5, beta=1.0, mu=0.3)
    assert sample_stable_increment(spec, 0.0, RngStream(0)) == 0.0
    assert np.all(sample_stable_increment(spec, 0.0, RngStream(0), size=4) == 0.0)


def test_stable_increment_rejects_negative_step():
    spec = StableSpec(alpha=1.5, beta=1.0, mu=0.0)
    with pytest.raises(ParameterError):
        sample_stable_increment(spec, -0.1, RngStream(0))


def test_totally_skewed_stable_tail_constant():
    """x^1.5 P(X > x) aproxima 2 c_1.5 = 0.39894 para x grande."""
    spec = StableSpec(alpha=1.5, beta=1.0, mu=0.0)
    draws = sample_stable_increment(spec, 1.0, RngStream(5), size=400_000)
    x = 30.0
    scaled = x ** 1.5 * np.mean(draws > x)
    assert scaled == pytest.approx(2 * c_alpha(1.5), rel=0.25)


def test_marginal_sample_cp_mean():
    spec = CompoundPoissonSpec(lam=2.0, jobs=DeterministicJobs(0.25))
    z = marginal_sample(spec, RngStream(8), 50_000)
    assert z.mean() == pytest.approx(0.5, rel=0.02)
    assert np.all(z >= 0)


# ==========================================
# GRANDEZAS RESUMO
# ==========================================

def test_c_alpha_values():
    assert c_alpha(1.5) == pytest.approx(0.199471, rel=1e-5)
    assert c_alpha(1.2) == pytest.approx(0.277961, rel=1e-4)
    assert 0 < c_alpha(1.999999) < 1e-5


def test_c_alpha_domain():
    for alpha in (1.0, 2.0, 0.5, 2.5):
        with pytest.raises(ParameterError):
            c_alpha(alpha)


def test_mean_rate_examples():
    assert mean_rate(CompoundPoissonSpec(lam=0.1, jobs=PARETO)) == pytest.approx(0.3)
    assert mean_rate(StableSpec(alpha=1.7, beta=0.0, mu=0.4)) == 0.4
    assert mean_rate(CompoundPoissonSpec(lam=2.0, jobs=DeterministicJobs(0.25))) == pytest.approx(0.5)


def test_marginal_tail_examples():
    assert marginal_tail(CompoundPoissonSpec(lam=0.1, jobs=PARETO), 100.0) == pytest.approx(1e-4)
    assert marginal_tail(StableSpec(alpha=1.5, beta=1.0, mu=0.0), 1.0) == pytest.approx(0.39894, rel=1e-4)


def test_marginal_tail_decreases():
    spec = StableSpec(alpha=1.8, beta=0.5, mu=0.1)
    values = [marginal_tail(spec, u) for u in (1.0, 10.0, 100.0, 1000.0)]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_light_tails_have_no_coefficient():
    assert tail_index(CompoundPoissonSpec(lam=1.0, jobs=ExponentialJobs(2.0))) is None
    with pytest.raises(ParameterError):
        tail_coefficient(CompoundPoissonSpec(lam=1.0, jobs=ExponentialJobs(2.0)))
    with pytest.raises(ParameterError):
        tail_coefficient(StableSpec(alpha=2.0, beta=0.0, mu=0.0))


def test_summarize_inputs():
    s = summarize_inputs(CompoundPoissonSpec(lam=0.1, jobs=PARETO),
                         StableSpec(alpha=1.2, beta=0.0, mu=0.2))
    assert s.mu == pytest.approx(0.5)
    assert s.k1 == pytest.approx(0.1)
    assert s.k2 == pytest.approx(c_alpha(1.2))
    assert s.beta2 == 0.0
    assert s.spectrally_positive2 is False


def test_stable_spec_validation():
    with pytest.raises(ParameterError):
        StableSpec(alpha=1.0, beta=0.0, mu=0.0)
    with pytest.raises(ParameterError):
        StableSpec(alpha=1.5, beta=-1.0, mu=0.0)
