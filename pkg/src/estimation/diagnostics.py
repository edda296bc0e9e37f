"""
Diagnósticos e Verificações Cruzadas.

- sandwich_check: limitantes inferior e superior de P(Q1 > u) pelo funcional
  tandem, com cada lado alargado pelo seu intervalo de confiança
- drift_diagnostic: decaimento de Q2^lambda(t)/t em tempos geométricos
- lindley_terminal / brute_force_terminal: identidade de Lindley-Reich
"""

import math
from dataclasses import dataclass, field
from typing import List, Sequence, Union

import numpy as np

from ..exceptions import EstimationError, ParameterError
from ..levy_inputs.rng import RngStream
from ..levy_inputs.samplers import cp_arrivals, sample_stable_increment
from ..models.estimates import TailEstimate
from ..models.input_specs import ClassInputSpec, CompoundPoissonSpec


@dataclass(frozen=True)
class SandwichReport:
    """
    Resultado da verificação P(V^-eps > u+x) P(Q̌ <= x) <= P(Q1 > u) <= P(V^eps > (1-delta)u) + P(Q1^iso > delta u).

    Atributos:
        u: Nível
        lower_bound: Lado esquerdo (limites inferiores dos ICs)
        upper_bound: Lado direito (limites superiores dos ICs)
        lower_margin: ci_high de P(Q1 > u) menos lower_bound
        upper_margin: upper_bound menos ci_low de P(Q1 > u)
        eps, delta, x: Parâmetros da verificação
    """

    u: float
    lower_bound: float
    upper_bound: float
    lower_margin: float
    upper_margin: float
    eps: float
    delta: float
    x: float

    @property
    def lower_ok(self) -> bool:
        return self.lower_margin >= 0.0

    @property
    def upper_ok(self) -> bool:
        return self.upper_margin >= 0.0

    @property
    def passed(self) -> bool:
        return self.lower_ok and self.upper_ok

    def to_dict(self) -> dict:
        return {
            'u': self.u,
            'lower_bound': self.lower_bound,
            'upper_bound': self.upper_bound,
            'lower_margin': self.lower_margin,
            'upper_margin': self.upper_margin,
            'eps': self.eps,
            'delta': self.delta,
            'x': self.x,
            'passed': self.passed
        }


def _low(p: Union[TailEstimate, float]) -> float:
    return p.ci_low if isinstance(p, TailEstimate) else float(p)


def _high(p: Union[TailEstimate, float]) -> float:
    return p.ci_high if isinstance(p, TailEstimate) else float(p)


def sandwich_check(p_q1: TailEstimate, p_v_minus: Union[TailEstimate, float],
                   p_qcheck_le_x: Union[TailEstimate, float],
                   p_v_plus: Union[TailEstimate, float],
                   p_q1_iso: Union[TailEstimate, float],
                   eps: float = 0.0, delta: float = 0.0, x: float = 0.0) -> SandwichReport:
    """
    Verifica as duas desigualdades do sanduíche tandem.

    Cada lado é alargado pelo seu IC: o lado inferior usa ci_low dos fatores,
    o superior usa ci_high das parcelas. Probabilidades podem ser passadas
    como float (IC de largura zero).

    Args:
        p_q1: Estimativa de P(Q1 > u)
        p_v_minus: P(V^-eps > u + x)
        p_qcheck_le_x: P(Q̌1^(mu1-eps) <= x)
        p_v_plus: P(V^eps > (1 - delta) u)
        p_q1_iso: P(Q1^(mu1+eps) > delta u)
        eps, delta, x: Parâmetros registrados no relatório

    Returns:
        SandwichReport
    """
    lower = _low(p_v_minus) * _low(p_qcheck_le_x)
    upper = _high(p_v_plus) + _high(p_q1_iso)
    return SandwichReport(
        u=p_q1.u,
        lower_bound=lower,
        upper_bound=upper,
        lower_margin=p_q1.ci_high - lower,
        upper_margin=upper - p_q1.ci_low,
        eps=eps,
        delta=delta,
        x=x
    )


@dataclass(frozen=True)
class DriftReport:
    """
    Relatório do decaimento de Q2^lambda(t)/t.

    Atributos:
        times: Instantes amostrados (geométricos, >= t0)
        ratios: Q2^lambda(t)/t nesses instantes
        decade_maxima: max de Q/t sobre t >= t0 10^j, para j = 0..D
        lam: Taxa de escoamento
        mu: Taxa média da entrada
    """

    times: np.ndarray
    ratios: np.ndarray
    decade_maxima: List[float] = field(default_factory=list)
    lam: float = 0.0
    mu: float = 0.0

    @property
    def max_ratio(self) -> float:
        return float(self.ratios.max())

    @property
    def final_ratio(self) -> float:
        return float(self.ratios[-1])

    @property
    def decades(self) -> int:
        return len(self.decade_maxima) - 1

    @property
    def decaying(self) -> bool:
        """Decai se o máximo cai por fator >= 2 a cada década, em média."""
        return self.decade_maxima[-1] <= self.decade_maxima[0] * 2.0 ** (-self.decades)

    @property
    def stable_drain(self) -> bool:
        """lambda > mu: regime em que Q2^lambda é estacionária e a razão deve decair."""
        return self.lam > self.mu


def _reflected_at(times: np.ndarray, jump_times: np.ndarray, jump_sizes: np.ndarray,
                  lam: float) -> np.ndarray:
    # Q(t) = X(t) - min(0, min_{s<=t} X(s)), X(t) = Z(t) - lam t; o mínimo
    # de X ocorre imediatamente antes de um salto ou no próprio t
    cum = np.concatenate([[0.0], np.cumsum(jump_sizes)])
    pre_jump = cum[:-1] - lam * jump_times
    running_min = np.concatenate([[0.0], np.minimum.accumulate(np.minimum(pre_jump, 0.0))])
    n = np.searchsorted(jump_times, times, side='right')
    x = cum[n] - lam * times
    return np.maximum(0.0, x - running_min[n])


def drift_diagnostic(spec2: Union[ClassInputSpec, float], lam: float, rng: RngStream,
                     t0: float = 10.0, horizon: float = 1e5, per_decade: int = 10,
                     step: float = 1.0) -> DriftReport:
    """
    Amostra Q2^lambda(t) = sup_{s<=t}{Z2(t) - Z2(s) - lambda (t - s)} em tempos geométricos.

    Para lambda > mu2 a razão Q2^lambda(t)/t deve tender a zero; para
    lambda < mu2 ela converge a mu2 - lambda e o relatório sinaliza
    ausência de decaimento.

    Convenção de sinal: lam é uma taxa de escoamento (subtraída de Z2), não
    a deriva da entrada. lam <= mu2 é um regime legítimo de não decaimento
    e não levanta erro: o relatório traz stable_drain = False e, para
    lam < mu2, decaying = False. Apenas lam <= 0 é erro de parâmetro.

    Args:
        spec2: Entrada da classe 2, ou um float para entrada fluida
               determinística com essa taxa
        lam: Taxa de escoamento (> 0)
        rng: Fluxo aleatório
        t0: Primeiro instante amostrado
        horizon: Último instante
        per_decade: Instantes por década
        step: Passo de tempo para entradas estáveis

    Returns:
        DriftReport

    Raises:
        ParameterError: lam <= 0 (lam <= mu2 é aceito; ver convenção de sinal acima)
        EstimationError: Menos de uma década entre t0 e horizon
    """
    if not lam > 0:
        raise ParameterError(f"lambda deve ser positivo (recebido {lam})")
    if not 0 < t0 <= horizon:
        raise EstimationError(f"Relatório vazio: t0 = {t0:.6g} fora de (0, horizon = {horizon:.6g}]")
    decades = int(math.floor(math.log10(horizon / t0) + 1e-9))
    if decades < 1:
        raise EstimationError("drift_diagnostic requer ao menos uma década entre t0 e horizon")

    n_points = decades * per_decade + 1
    times = t0 * 10.0 ** (np.arange(n_points) / per_decade)

    if isinstance(spec2, (int, float)):
        mu = float(spec2)
        q = np.maximum(0.0, (mu - lam) * times)
    elif isinstance(spec2, CompoundPoissonSpec):
        mu = spec2.lam * spec2.jobs.mean
        arrivals = cp_arrivals(spec2, times[-1] * (1 + 1e-12), rng)
        q = _reflected_at(times, arrivals.times, arrivals.sizes, lam)
    else:
        mu = spec2.mu
        n_steps = int(math.ceil(times[-1] / step))
        dz = sample_stable_increment(spec2, step, rng, size=n_steps)
        x = np.concatenate([[0.0], np.cumsum(dz - lam * step)])
        path_q = x - np.minimum.accumulate(np.minimum(x, 0.0))
        q = path_q[np.minimum(np.rint(times / step).astype(int), n_steps)]

    ratios = q / times
    decade_maxima = [float(ratios[j * per_decade:].max()) for j in range(decades + 1)]
    return DriftReport(times, ratios, decade_maxima, lam, mu)


def lindley_terminal(increments: Sequence[float], drain: float = 0.0) -> float:
    """
    Valor terminal da recursão W_k = max(0, W_{k-1} + x_k - drain), W_0 = 0.
    """
    w = 0.0
    for x in increments:
        w = max(0.0, w + float(x) - drain)
    return w


def brute_force_terminal(increments: Sequence[float], drain: float = 0.0) -> float:
    """
    max(0, max_j soma_{k>=j}(x_k - drain)) calculado sobre todos os sufixos.
    """
    values = [float(x) - drain for x in increments]
    best = 0.0
    for j in range(len(values)):
        best = max(best, sum(values[j:]))
    return best
