"""
Funcionais de Caminho.

Supremos de filas isoladas (via identidade de Reich com caminho progressivo),
o funcional tandem V^eps, o supremo da fila dual, o supremo em janela finita
e a referência de carga total para conservação de trabalho.

Entradas Poisson composto são tratadas exatamente nas épocas de salto;
entradas estáveis usam uma grade de passo `step`.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from loguru import logger

from ..asymptotics.scenarios import is_integer_index
from ..estimation.horizon import horizon_for_level
from ..exceptions import InputError, ParameterError, ScenarioError, UnstableQueueError
from ..levy_inputs.rng import RngStream
from ..levy_inputs.samplers import cp_arrivals, sample_stable_increment
from ..levy_inputs.tails import mean_rate, tail_index
from ..models.gps import GpsConfig
from ..models.input_specs import ClassInputSpec, CompoundPoissonSpec
from ..models.trajectory import TandemSample


def _path_points(spec: ClassInputSpec, horizon: float, rng: RngStream, step: float):
    # (tempos, Z antes do ponto, Z no ponto) nos pontos onde o supremo/ínfimo pode ocorrer
    if isinstance(spec, CompoundPoissonSpec):
        arrivals = cp_arrivals(spec, horizon, rng)
        after = np.cumsum(arrivals.sizes)
        before = after - arrivals.sizes
        return arrivals.times, before, after
    n = int(math.ceil(horizon / step))
    z = np.cumsum(sample_stable_increment(spec, step, rng, size=n))
    times = step * np.arange(1, n + 1)
    return times, z, z


def _drained_supremum(times: np.ndarray, values: np.ndarray, rate: float) -> float:
    if len(times) == 0:
        return 0.0
    return max(0.0, float(np.max(values - rate * times)))


def single_queue_supremum(spec: Optional[ClassInputSpec], r: float, u_target: float,
                          rng: RngStream, step: float = 1.0,
                          horizon: Optional[float] = None) -> float:
    """
    Amostra de Q^r = sup_{t>=0}{Z(t) - r t} truncado em T(u_target).

    Args:
        spec: Entrada (None = entrada nula)
        r: Taxa de escoamento
        u_target: Nível que define o horizonte
        rng: Fluxo aleatório
        step: Passo da grade para entradas estáveis
        horizon: Horizonte explícito (substitui T(u_target))

    Returns:
        Supremo (>= 0)

    Raises:
        UnstableQueueError: Se r <= taxa média
    """
    mu = 0.0 if spec is None else mean_rate(spec)
    default_horizon = horizon_for_level(u_target, r, mu)
    horizon = horizon or default_horizon
    if spec is None:
        return 0.0
    times, _, after = _path_points(spec, horizon, rng, step)
    return _drained_supremum(times, after, r)


def dual_queue_supremum(spec: ClassInputSpec, d: float, u_target: float,
                        rng: RngStream, step: float = 1.0) -> float:
    """
    Amostra de Q̌^d = sup_{t>=0}{d t - Z(t)} para d < mu, truncado em T(u_target).

    Para Poisson composto o supremo ocorre imediatamente antes de um salto
    ou no fim do horizonte.

    Raises:
        UnstableQueueError: Se d >= mu
    """
    mu = mean_rate(spec)
    if d >= mu:
        raise UnstableQueueError(f"Fila dual requer d < mu (d = {d:.6g}, mu = {mu:.6g})")
    horizon = horizon_for_level(u_target, mu, d)
    times, before, after = _path_points(spec, horizon, rng, step)
    best = 0.0
    if len(times):
        best = max(best, float(np.max(d * times - before)))
        best = max(best, d * horizon - float(after[-1]))
    else:
        best = d * horizon
    return best


def finite_window_supremum(spec: ClassInputSpec, c: float, T: float,
                           rng: RngStream, step: Optional[float] = None) -> float:
    """
    Amostra de sup_{t in [0, T]}{Z(t) - c t}.

    Args:
        spec: Entrada
        c: Taxa de escoamento (sem exigência de estabilidade)
        T: Janela (> 0)
        rng: Fluxo aleatório
        step: Passo para entradas estáveis (padrão T/1000)
    """
    if not T > 0:
        raise ParameterError(f"Janela T deve ser positiva (recebido {T})")
    times, _, after = _path_points(spec, T, rng, step or T / 1000.0)
    return _drained_supremum(times, after, c)


def simulate_tandem_V(spec2: Optional[ClassInputSpec], cfg: GpsConfig, mu1: float,
                      u_target: float, rng: RngStream, eps: float = 0.0,
                      step: float = 1.0) -> TandemSample:
    """
    Amostra V^eps = sup{Z2(t) - (c - mu1 - eps) t} - sup{Z2(s) - phi2 c s} no mesmo caminho.

    Args:
        spec2: Entrada da classe 2 (None = caminho nulo)
        cfg: Configuração GPS
        mu1: Taxa média da classe 1
        u_target: Nível que define o horizonte
        rng: Fluxo aleatório
        eps: Perturbação da taxa do primeiro supremo
        step: Passo da grade para entradas estáveis

    Returns:
        TandemSample

    Raises:
        ScenarioError: c - mu1 - eps >= phi2 c, c - mu1 - eps <= mu2,
                       ou entrada 2 não espectralmente positiva
    """
    slow = cfg.c - mu1 - eps
    fast = cfg.rate2
    if not slow < fast:
        raise ScenarioError(f"Requer c - mu1 - eps < phi2 c ({slow:.6g} >= {fast:.6g})")

    mu2 = 0.0 if spec2 is None else mean_rate(spec2)
    if not slow > mu2:
        raise ScenarioError(f"V instável: c - mu1 - eps = {slow:.6g} <= mu2 = {mu2:.6g}")
    horizon = horizon_for_level(u_target, slow, mu2)
    if spec2 is None:
        return TandemSample(0.0, horizon)

    if not spec2.spectrally_positive:
        raise ScenarioError("simulate_tandem_V requer entrada 2 espectralmente positiva")
    alpha2 = tail_index(spec2)
    if alpha2 is not None and is_integer_index(alpha2):
        logger.warning("Simulação tandem com alpha2 = {} inteiro", alpha2)

    times, _, after = _path_points(spec2, horizon, rng, step)
    v = _drained_supremum(times, after, slow) - _drained_supremum(times, after, fast)
    return TandemSample(max(0.0, v), horizon)


@dataclass(frozen=True)
class ReflectedPath:
    """
    Carga total de referência: reflexão de Lindley da entrada agregada à taxa c.

    Atributos:
        times: Épocas de chegada
        values: Carga logo após cada chegada
        c: Taxa de escoamento
    """

    times: np.ndarray
    values: np.ndarray
    c: float

    def at(self, t: float) -> float:
        """Carga no instante t (após as chegadas em t)."""
        k = int(np.searchsorted(self.times, t, side='right')) - 1
        if k < 0:
            return 0.0
        return max(0.0, float(self.values[k]) - self.c * (t - float(self.times[k])))


def total_workload_reference(times: Sequence[float], sizes: Sequence[float], c: float) -> ReflectedPath:
    """
    Reflexão de Lindley da entrada agregada das duas classes à taxa c.

    Args:
        times: Épocas de chegada em ordem não decrescente
        sizes: Tamanhos
        c: Taxa total

    Returns:
        ReflectedPath

    Raises:
        InputError: Épocas fora de ordem
    """
    times = np.asarray(times, dtype=float)
    sizes = np.asarray(sizes, dtype=float)
    if len(times) != len(sizes):
        raise InputError("times e sizes com tamanhos diferentes")
    if np.any(np.diff(times) < 0):
        raise InputError("Fluxo de chegadas fora de ordem")

    values = np.empty(len(times))
    w, last = 0.0, 0.0
    for k, (t, s) in enumerate(zip(times.tolist(), sizes.tolist())):
        w = max(0.0, w - c * (t - last)) + s
        values[k] = w
        last = t
    return ReflectedPath(times, values, c)


def pollaczek_khinchine_tail(u: float, lam: float, rate: float, c: float = 1.0) -> float:
    """
    Cauda exata da fila com chegadas Poisson(lam), jobs Exponencial(rate), escoamento c.

    P(Q > u) = rho exp(-(rate - lam/c) u), rho = lam / (rate c).

    Raises:
        UnstableQueueError: Se rho >= 1
    """
    rho = lam / (rate * c)
    if rho >= 1:
        raise UnstableQueueError(f"Carga rho = {rho:.6g} >= 1")
    if u < 0:
        raise ParameterError(f"u deve ser não negativo (recebido {u})")
    return rho * math.exp(-(rate - lam / c) * u)
