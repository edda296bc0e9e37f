"""
Relatórios CSV.

Colunas fixas: u, p_hat, ci_low, ci_high, f_asym, ratio, scenario.
Números em notação decimal com 6 algarismos significativos; campos ausentes ficam vazios.
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Union

import pandas as pd

from ..estimation.tables import format_decimal

REPORT_COLUMNS = ['u', 'p_hat', 'ci_low', 'ci_high', 'f_asym', 'ratio', 'scenario']


@dataclass(frozen=True)
class ReportRow:
    """
    Linha do relatório de convergência.

    Atributos:
        u: Nível
        p_hat, ci_low, ci_high: Estimativa e intervalo
        f_asym: Assíntota f1(u) (None quando o regime não classifica)
        scenario: Rótulo do regime ('scenario1'..'scenario4', 'oracle', 'tandem',
                  'unclassified' ou 'error:<Classe>')
    """

    u: float
    p_hat: float
    ci_low: float
    ci_high: float
    f_asym: Optional[float] = None
    scenario: str = 'unclassified'

    @property
    def ratio(self) -> Optional[float]:
        if self.f_asym is None or not self.f_asym > 0:
            return None
        return self.p_hat / self.f_asym

    def to_dict(self) -> dict:
        return {
            'u': self.u,
            'p_hat': self.p_hat,
            'ci_low': self.ci_low,
            'ci_high': self.ci_high,
            'f_asym': self.f_asym,
            'ratio': self.ratio,
            'scenario': self.scenario
        }

    @classmethod
    def error_marker(cls, exc: Exception) -> 'ReportRow':
        """Linha que marca resultados parciais interrompidos por erro."""
        nan = float('nan')
        return cls(nan, nan, nan, nan, None, f"error:{type(exc).__name__}")


def rows_to_frame(rows: Sequence[ReportRow]) -> pd.DataFrame:
    frame = pd.DataFrame([r.to_dict() for r in rows], columns=REPORT_COLUMNS)
    # None vira NaN para que float_format alcance todas as colunas numéricas
    for column in REPORT_COLUMNS[:-1]:
        frame[column] = pd.to_numeric(frame[column], errors='coerce').astype(float)
    return frame


def emit_csv(rows: Sequence[ReportRow], path: Union[str, Path]) -> Path:
    """
    Grava as linhas em CSV com cabeçalho e ordem de colunas fixas.

    Args:
        rows: Linhas do relatório (lista vazia gera só o cabeçalho)
        path: Caminho de saída

    Returns:
        Caminho gravado

    Raises:
        OSError: Falha de escrita
    """
    path = Path(path)
    if path.parent != Path('.'):
        path.parent.mkdir(parents=True, exist_ok=True)
    rows_to_frame(rows).to_csv(path, index=False, float_format=format_decimal, na_rep='', lineterminator='\n')
    return path


def read_report(path: Union[str, Path]) -> pd.DataFrame:
    """Lê um relatório gravado por emit_csv."""
    return pd.read_csv(path, keep_default_na=True)


def format_ratio_table(rows: Sequence[ReportRow]) -> List[str]:
    """Tabela de texto com a convergência da razão p_hat / f_asym."""
    lines = [f"{'u':>12} {'p_hat':>12} {'f_asym':>12} {'ratio':>8}"]
    for r in rows:
        f = '-' if r.f_asym is None else f"{r.f_asym:12.4e}"
        ratio = r.ratio
        ratio_text = '-' if ratio is None or math.isnan(ratio) else f"{ratio:8.3f}"
        lines.append(f"{r.u:12.4g} {r.p_hat:12.4e} {f:>12} {ratio_text:>8}")
    return lines
