"""
Geradores de Entrada Lévy.

Amostragem de jobs Pareto, fluxos de chegada Poisson composto e
incrementos alfa-estáveis.
"""

from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np
from scipy.stats import levy_stable

from ..exceptions import ParameterError
from ..models.input_specs import (
    ClassInputSpec,
    CompoundPoissonSpec,
    DeterministicJobs,
    ExponentialJobs,
    JobDistribution,
    ParetoJobs,
    StableSpec,
)
from .rng import RngStream


@dataclass(frozen=True)
class ArrivalStream:
    """
    Chegadas ordenadas de uma classe.

    Atributos:
        times: Instantes estritamente crescentes
        sizes: Tamanhos dos jobs
    """

    times: np.ndarray
    sizes: np.ndarray

    def __len__(self) -> int:
        return len(self.times)

    def __iter__(self) -> Iterator[Tuple[float, float]]:
        return zip(self.times.tolist(), self.sizes.tolist())

    @classmethod
    def empty(cls) -> 'ArrivalStream':
        return cls(np.empty(0), np.empty(0))


def pareto_inverse_cdf(dist: ParetoJobs, u):
    """
    Inversa da distribuição Pareto: x_m * U^(-1/alpha).

    Args:
        dist: Distribuição Pareto
        u: Uniforme(s) em (0, 1]

    Returns:
        Valor(es) >= x_m
    """
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0) or np.any(u > 1):
        raise ParameterError("U deve estar em (0, 1]")
    x = dist.x_m * u ** (-1.0 / dist.alpha)
    return float(x) if x.ndim == 0 else x


def sample_pareto(dist: ParetoJobs, rng: RngStream, size=None):
    """
    Amostra jobs Pareto por inversão da CDF.

    Args:
        dist: Distribuição Pareto (valida x_m > 0 e alpha > 1 na construção)
        rng: Fluxo aleatório
        size: Quantidade de amostras (None para um escalar)

    Returns:
        Amostra(s) positiva(s)
    """
    if not isinstance(dist, ParetoJobs):
        raise ParameterError(f"sample_pareto requer ParetoJobs (recebido {type(dist).__name__})")
    return pareto_inverse_cdf(dist, rng.uniform_open(size))


def sample_jobs(dist: JobDistribution, rng: RngStream, size: int) -> np.ndarray:
    """Amostra size jobs de qualquer distribuição suportada."""
    if isinstance(dist, ParetoJobs):
        return np.atleast_1d(sample_pareto(dist, rng, size))
    if isinstance(dist, ExponentialJobs):
        return rng.generator.exponential(1.0 / dist.rate, size)
    if isinstance(dist, DeterministicJobs):
        return np.full(size, dist.size, dtype=float)
    raise ParameterError(f"Distribuição de jobs não suportada: {dist!r}")


def cp_arrivals(spec: CompoundPoissonSpec, horizon: float, rng: RngStream) -> ArrivalStream:
    """
    Gera as chegadas de um Poisson composto em (0, horizon).

    Interchegadas exponenciais(lambda) são acumuladas em blocos até
    ultrapassar o horizonte; os jobs são sorteados depois, na mesma ordem.

    Args:
        spec: Entrada Poisson composta
        horizon: Horizonte (> 0)
        rng: Fluxo aleatório

    Returns:
        ArrivalStream com instantes crescentes e tamanhos

    Raises:
        ParameterError: Se horizon <= 0
    """
    if not horizon > 0:
        raise ParameterError(f"horizon deve ser positivo (recebido {horizon})")

    chunk = int(spec.lam * horizon * 1.05) + 64
    blocks = []
    t = 0.0
    while True:
        times = t + np.cumsum(rng.generator.exponential(1.0 / spec.lam, chunk))
        if times[-1] >= horizon:
            blocks.append(times[times < horizon])
            break
        blocks.append(times)
        t = times[-1]

    times = np.concatenate(blocks)
    sizes = sample_jobs(spec.jobs, rng, len(times))
    return ArrivalStream(times, sizes)


def standard_stable(alpha: float, beta: float, rng: RngStream, size=None):
    """
    Amostra estável padrão (escala 1, deslocamento 0) na parametrização S1.

    Para alpha = 2 a lei é Normal(0, 2).
    """
    return levy_stable.rvs(alpha, beta, loc=0.0, scale=1.0, size=size, random_state=rng.generator)


def sample_stable_increment(spec: StableSpec, h: float, rng: RngStream, size=None):
    """
    Incremento do movimento estável em um passo h: mu h + h^(1/alpha) S.

    Args:
        spec: Entrada estável
        h: Passo de tempo (h = 0 devolve incremento nulo)
        rng: Fluxo aleatório
        size: Quantidade de incrementos independentes

    Returns:
        Incremento(s) real(is)

    Raises:
        ParameterError: Se h < 0
    """
    if h < 0:
        raise ParameterError(f"Passo h deve ser positivo (recebido {h})")
    if h == 0:
        return 0.0 if size is None else np.zeros(size)
    s = standard_stable(spec.alpha, spec.beta, rng, size)
    return spec.mu * h + h ** (1.0 / spec.alpha) * s


def marginal_sample(spec: ClassInputSpec, rng: RngStream, n: int) -> np.ndarray:
    """
    Amostra n valores independentes de Z(1).

    Args:
        spec: Entrada (Poisson composto ou estável)
        rng: Fluxo aleatório
        n: Tamanho da amostra

    Returns:
        Vetor com n amostras
    """
    if isinstance(spec, StableSpec):
        return np.asarray(sample_stable_increment(spec, 1.0, rng, size=n), dtype=float)
    counts = rng.generator.poisson(spec.lam, n)
    sizes = sample_jobs(spec.jobs, rng, int(counts.sum()))
    owners = np.repeat(np.arange(n), counts)
    return np.bincount(owners, weights=sizes, minlength=n)
