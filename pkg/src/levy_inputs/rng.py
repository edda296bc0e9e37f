"""
Fluxos de números aleatórios reprodutíveis.
"""

from dataclasses import dataclass, field

import numpy as np


@dataclass
class RngStream:
    """
    Fluxo aleatório identificado por (seed, stream_id).

    O mesmo par reproduz a mesma sequência; ids distintos geram fluxos
    independentes (SeedSequence com spawn_key).

    Atributos:
        seed: Semente de 64 bits
        stream_id: Identificador do fluxo
    """

    seed: int
    stream_id: int = 0
    generator: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        sequence = np.random.SeedSequence(entropy=int(self.seed), spawn_key=(int(self.stream_id),))
        self.generator = np.random.default_rng(sequence)

    def child(self, stream_id: int) -> 'RngStream':
        """Cria um fluxo irmão com a mesma semente e outro id."""
        return RngStream(self.seed, stream_id)

    def uniform_open(self, size=None):
        """Uniformes em (0, 1]."""
        return 1.0 - self.generator.random(size)

    def to_dict(self) -> dict:
        return {'seed': int(self.seed), 'stream_id': int(self.stream_id)}
