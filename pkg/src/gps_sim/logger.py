"""
Registro de Execuções.

Grava uma linha JSON por replicação, o manifesto da execução e um resumo
em texto no diretório de saída.
"""

from typing import Dict, List, Optional
import json
from datetime import datetime
from pathlib import Path


class SimulationLogger:
    """Logger para rastrear replicações de simulação."""

    def __init__(self, output_dir: str = "logs/gps"):
        """
        Inicializa o logger.

        Args:
            output_dir: Diretório para salvar logs
        """
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)

        self.replication_history: List[Dict] = []

        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        self.runs_file = self.output_dir / f"runs_{timestamp}.jsonl"
        self.manifest_file = self.output_dir / f"manifest_{timestamp}.json"
        self.summary_file = self.output_dir / f"summary_{timestamp}.txt"

    def log_replication(self, replication: int, rng, result, elapsed: float):
        """
        Registra uma replicação.

        Args:
            replication: Índice da replicação
            rng: RngStream usado
            result: EventDrivenResult ou DiscreteResult
            elapsed: Tempo de parede em segundos
        """
        info = {
            'replication': replication,
            'timestamp': datetime.now().isoformat(),
            'rng': rng.to_dict(),
            'elapsed': elapsed,
            **result.to_dict()
        }
        self.replication_history.append(info)

        with open(self.runs_file, 'a', encoding='utf-8') as f:
            f.write(json.dumps(info) + '\n')

    def save_manifest(self, manifest: Dict):
        """Grava o manifesto da execução (sementes, motor, parâmetros, versão)."""
        with open(self.manifest_file, 'w', encoding='utf-8') as f:
            json.dump(manifest, f, indent=2, ensure_ascii=False)

    def save_summary(self, statistics: Dict, extra_lines: Optional[List[str]] = None) -> str:
        """
        Salva resumo final da execução.

        Args:
            statistics: Estatísticas agregadas (GpsSimulator.get_statistics)
            extra_lines: Linhas adicionais (ex: tabela de razões)

        Returns:
            Texto do resumo
        """
        summary = []
        summary.append("="*80)
        summary.append("RESUMO DA SIMULAÇÃO GPS")
        summary.append("="*80)
        summary.append(f"\nData/Hora: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")
        for key, value in statistics.items():
            if isinstance(value, float):
                summary.append(f"  {key}: {value:.6g}")
            else:
                summary.append(f"  {key}: {value}")

        if extra_lines:
            summary.append("\n" + "-"*80)
            summary.extend(extra_lines)

        summary.append("\n" + "="*80)
        summary.append("ARQUIVOS GERADOS")
        summary.append("="*80)
        summary.append(f"- Replicações: {self.runs_file}")
        summary.append(f"- Manifesto: {self.manifest_file}")
        summary.append(f"- Este resumo: {self.summary_file}")
        summary.append("="*80)

        with open(self.summary_file, 'w', encoding='utf-8') as f:
            f.write('\n'.join(summary))

        return '\n'.join(summary)
