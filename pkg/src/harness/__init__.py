"""
Front-end de experimentos: configuração, execução, relatórios e validação.
"""

from .config import ExperimentConfig, parse_config, parse_levels
from .report import ReportRow, REPORT_COLUMNS, emit_csv, read_report, format_ratio_table
from .runner import RunManifest, run_experiment, run_tandem, evaluate_asymptotes, asymptote_for
from .validation import CriterionResult, validate_suite, SELECTORS

__all__ = [
    'ExperimentConfig',
    'parse_config',
    'parse_levels',
    'ReportRow',
    'REPORT_COLUMNS',
    'emit_csv',
    'read_report',
    'format_ratio_table',
    'RunManifest',
    'run_experiment',
    'run_tandem',
    'evaluate_asymptotes',
    'asymptote_for',
    'CriterionResult',
    'validate_suite',
    'SELECTORS'
]
