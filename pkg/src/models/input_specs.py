"""
Modelos de Entrada Lévy.

Define as distribuições de tamanho de job e as duas famílias de entrada
suportadas: Poisson composto e movimento Lévy alfa-estável.
"""

from dataclasses import dataclass
from typing import Optional, Union

from ..exceptions import ParameterError


@dataclass(frozen=True)
class ParetoJobs:
    """
    Jobs Pareto: P(B > x) = (x / x_m)^(-alpha) para x >= x_m.

    Atributos:
        x_m: Escala (menor valor possível)
        alpha: Índice de cauda (> 1 para média finita)
    """

    x_m: float
    alpha: float

    kind = "pareto"

    def __post_init__(self):
        """Validação após inicialização."""
        if not self.x_m > 0:
            raise ParameterError(f"x_m deve ser positivo (recebido {self.x_m})")
        if not self.alpha > 1:
            raise ParameterError(f"alpha de Pareto deve ser > 1 (recebido {self.alpha})")

    @property
    def mean(self) -> float:
        return self.alpha * self.x_m / (self.alpha - 1.0)

    @property
    def tail_index(self) -> Optional[float]:
        return self.alpha

    @property
    def tail_coefficient(self) -> Optional[float]:
        """Constante L da cauda: P(B > x) = L x^(-alpha)."""
        return self.x_m ** self.alpha

    def to_dict(self) -> dict:
        return {'kind': self.kind, 'x_m': self.x_m, 'alpha': self.alpha}


@dataclass(frozen=True)
class ExponentialJobs:
    """Jobs exponenciais (cauda leve, usados como oráculo)."""

    rate: float

    kind = "exponential"

    def __post_init__(self):
        if not self.rate > 0:
            raise ParameterError(f"rate exponencial deve ser positiva (recebido {self.rate})")

    @property
    def mean(self) -> float:
        return 1.0 / self.rate

    @property
    def tail_index(self) -> Optional[float]:
        return None

    @property
    def tail_coefficient(self) -> Optional[float]:
        return None

    def to_dict(self) -> dict:
        return {'kind': self.kind, 'rate': self.rate}


@dataclass(frozen=True)
class DeterministicJobs:
    """Jobs de tamanho fixo."""

    size: float

    kind = "deterministic"

    def __post_init__(self):
        if not self.size > 0:
            raise ParameterError(f"size determinístico deve ser positivo (recebido {self.size})")

    @property
    def mean(self) -> float:
        return self.size

    @property
    def tail_index(self) -> Optional[float]:
        return None

    @property
    def tail_coefficient(self) -> Optional[float]:
        return None

    def to_dict(self) -> dict:
        return {'kind': self.kind, 'size': self.size}


JobDistribution = Union[ParetoJobs, ExponentialJobs, DeterministicJobs]


def job_distribution_from_dict(data: dict) -> JobDistribution:
    """Cria uma distribuição de jobs a partir de um dicionário com chave 'kind'."""
    data = dict(data)
    kind = data.pop('kind', None)
    if kind == "pareto":
        return ParetoJobs(**data)
    if kind == "exponential":
        return ExponentialJobs(**data)
    if kind == "deterministic":
        return DeterministicJobs(**data)
    raise ParameterError(f"Distribuição de jobs desconhecida: {kind!r}")


@dataclass(frozen=True)
class CompoundPoissonSpec:
    """
    Entrada Poisson composta Z(t) = soma dos jobs chegados em (0, t].

    Atributos:
        lam: Taxa de chegadas (eventos por unidade de tempo)
        jobs: Distribuição do tamanho dos jobs
    """

    lam: float
    jobs: JobDistribution

    family = "cp"

    def __post_init__(self):
        if not self.lam > 0:
            raise ParameterError(f"lambda deve ser positivo (recebido {self.lam})")

    @property
    def spectrally_positive(self) -> bool:
        # Sem saltos negativos: jobs são não negativos
        return True

    def to_dict(self) -> dict:
        return {'family': self.family, 'lambda': self.lam, 'jobs': self.jobs.to_dict()}


@dataclass(frozen=True)
class StableSpec:
    """
    Movimento Lévy alfa-estável S(alpha, beta, mu) com escala 1.

    Expoente característico: -|t|^alpha (1 - i beta sign(t) tan(pi alpha / 2)) + i mu t.

    Atributos:
        alpha: Índice de estabilidade em (1, 2]
        beta: Assimetria em (-1, 1]
        mu: Deriva (taxa média, trabalho por unidade de tempo)
    """

    alpha: float
    beta: float
    mu: float

    family = "stable"

    def __post_init__(self):
        if not 1.0 < self.alpha <= 2.0:
            raise ParameterError(f"alpha estável deve estar em (1, 2] (recebido {self.alpha})")
        if not -1.0 < self.beta <= 1.0:
            raise ParameterError(f"beta deve estar em (-1, 1] (recebido {self.beta})")

    @property
    def spectrally_positive(self) -> bool:
        return self.beta == 1.0 and self.alpha < 2.0

    def to_dict(self) -> dict:
        return {'family': self.family, 'alpha': self.alpha, 'beta': self.beta, 'mu': self.mu}


ClassInputSpec = Union[CompoundPoissonSpec, StableSpec]


def class_input_from_dict(data: dict) -> ClassInputSpec:
    """Reconstrói uma especificação de entrada serializada por to_dict()."""
    family = data.get('family')
    if family == "cp":
        return CompoundPoissonSpec(lam=data['lambda'], jobs=job_distribution_from_dict(data['jobs']))
    if family == "stable":
        return StableSpec(alpha=data['alpha'], beta=data['beta'], mu=data['mu'])
    raise ParameterError(f"Família de entrada desconhecida: {family!r}")
