"""
Serialização de tabelas de estimativas em texto delimitado.
"""

from pathlib import Path
from typing import List, Sequence, Union

import numpy as np
import pandas as pd

from ..models.estimates import TailEstimate

ESTIMATE_COLUMNS = ['u', 'p_hat', 'ci_low', 'ci_high', 'method', 'n_effective']
SIGNIFICANT_DIGITS = 6


def format_decimal(value: float) -> str:
    """Notação decimal com 6 algarismos significativos, sem expoente (3.16e-05 -> 0.0000316)."""
    return np.format_float_positional(value, precision=SIGNIFICANT_DIGITS, unique=False,
                                      fractional=False, trim='-')


def estimates_to_frame(estimates: Sequence[TailEstimate]) -> pd.DataFrame:
    """Converte estimativas em DataFrame com colunas fixas."""
    return pd.DataFrame([e.to_dict() for e in estimates], columns=ESTIMATE_COLUMNS)


def write_estimate_table(estimates: Sequence[TailEstimate], path: Union[str, Path]) -> Path:
    """
    Grava as estimativas em CSV (6 algarismos significativos).

    Returns:
        Caminho gravado
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    estimates_to_frame(estimates).to_csv(path, index=False, float_format=format_decimal, lineterminator='\n')
    return path


def read_estimate_table(path: Union[str, Path]) -> List[TailEstimate]:
    """Lê uma tabela gravada por write_estimate_table."""
    frame = pd.read_csv(path)
    return [
        TailEstimate(
            u=float(row.u),
            p_hat=float(row.p_hat),
            ci_low=float(row.ci_low),
            ci_high=float(row.ci_high),
            method=str(row.method),
            n_effective=int(row.n_effective)
        )
        for row in frame.itertuples(index=False)
    ]
