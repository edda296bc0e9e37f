"""
Modelo do Servidor GPS.

Define a configuração do servidor (taxa total e pesos) e o estado
instantâneo das duas filas.
"""

from dataclasses import dataclass

from ..exceptions import ParameterError

WEIGHT_TOLERANCE = 1e-12
EMPTY_TOL = 1e-12
OVERFLOW_LIMIT = 1e300


@dataclass(frozen=True)
class GpsConfig:
    """
    Configuração GPS de duas classes.

    Atributos:
        c: Taxa total de serviço
        phi1: Peso da classe 1 (taxa garantida phi1 * c)
        phi2: Peso da classe 2 (taxa garantida phi2 * c)
    """

    c: float
    phi1: float
    phi2: float

    def __post_init__(self):
        """Validação após inicialização."""
        if not self.c > 0:
            raise ParameterError(f"c deve ser positivo (recebido {self.c})")
        for name, phi in (('phi1', self.phi1), ('phi2', self.phi2)):
            if not 0.0 < phi < 1.0:
                raise ParameterError(f"{name} deve estar em (0, 1) (recebido {phi})")
        if abs(self.phi1 + self.phi2 - 1.0) > WEIGHT_TOLERANCE:
            raise ParameterError(f"phi1 + phi2 deve ser 1 (recebido {self.phi1 + self.phi2})")

    @property
    def rate1(self) -> float:
        """Taxa garantida da classe 1."""
        return self.phi1 * self.c

    @property
    def rate2(self) -> float:
        """Taxa garantida da classe 2."""
        return self.phi2 * self.c

    def to_dict(self) -> dict:
        return {'c': self.c, 'phi1': self.phi1, 'phi2': self.phi2}

    @classmethod
    def from_dict(cls, data: dict) -> 'GpsConfig':
        return cls(c=data['c'], phi1=data['phi1'], phi2=data['phi2'])


@dataclass(frozen=True)
class SystemState:
    """
    Estado instantâneo do sistema.

    Atributos:
        t: Instante
        q1: Carga de trabalho da fila 1
        q2: Carga de trabalho da fila 2
    """

    t: float
    q1: float
    q2: float

    def __post_init__(self):
        if self.q1 < 0 or self.q2 < 0:
            raise ParameterError(f"Cargas devem ser não negativas (q1={self.q1}, q2={self.q2})")

    @property
    def total(self) -> float:
        return self.q1 + self.q2

    def __repr__(self) -> str:
        return f"SystemState(t={self.t:.6g}, q1={self.q1:.6g}, q2={self.q2:.6g})"
