"""
Modelos de Estimativa.

Grade de níveis e estimativas de cauda com intervalo de confiança.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np

from ..exceptions import ParameterError


@dataclass(frozen=True)
class LevelGrid:
    """
    Grade de níveis u1 < u2 < ... < um (unidades de trabalho).

    Atributos:
        levels: Níveis estritamente crescentes e positivos
    """

    levels: Tuple[float, ...]

    def __post_init__(self):
        levels = tuple(float(u) for u in self.levels)
        object.__setattr__(self, 'levels', levels)
        if not levels:
            raise ParameterError("Grade de níveis vazia")
        if levels[0] <= 0:
            raise ParameterError("Níveis devem ser positivos")
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise ParameterError("Níveis devem ser estritamente crescentes")

    @classmethod
    def of(cls, levels: Iterable[float]) -> 'LevelGrid':
        return cls(tuple(levels))

    @classmethod
    def geometric(cls, u_min: float, u_max: float, per_decade: int = 10) -> 'LevelGrid':
        """
        Grade geométrica com per_decade pontos por década.

        Args:
            u_min: Primeiro nível
            u_max: Último nível (incluído quando cai na grade)
            per_decade: Pontos por década

        Returns:
            LevelGrid
        """
        if not 0 < u_min < u_max:
            raise ParameterError("Requer 0 < u_min < u_max")
        if per_decade < 1:
            raise ParameterError("per_decade deve ser >= 1")
        n = int(math.floor(per_decade * math.log10(u_max / u_min) + 1e-9)) + 1
        exponents = np.arange(n) / per_decade
        return cls(tuple(u_min * 10.0 ** exponents))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.levels, dtype=float)

    def __len__(self) -> int:
        return len(self.levels)

    def __iter__(self):
        return iter(self.levels)


@dataclass(frozen=True)
class TailEstimate:
    """
    Estimativa de P(Q > u).

    Atributos:
        u: Nível
        p_hat: Estimativa pontual em [0, 1]
        ci_low, ci_high: Intervalo de confiança
        method: 'time-average', 'regenerative' ou 'empirical'
        n_effective: Tamanho efetivo (lotes, ciclos ou amostras)
    """

    u: float
    p_hat: float
    ci_low: float
    ci_high: float
    method: str
    n_effective: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p_hat <= 1.0:
            raise ParameterError(f"p_hat fora de [0, 1]: {self.p_hat}")
        if not self.ci_low <= self.p_hat <= self.ci_high:
            raise ParameterError(
                f"IC inconsistente: {self.ci_low} <= {self.p_hat} <= {self.ci_high} falhou"
            )

    @property
    def half_width(self) -> float:
        return 0.5 * (self.ci_high - self.ci_low)

    def to_dict(self) -> dict:
        return {
            'u': self.u,
            'p_hat': self.p_hat,
            'ci_low': self.ci_low,
            'ci_high': self.ci_high,
            'method': self.method,
            'n_effective': self.n_effective
        }
