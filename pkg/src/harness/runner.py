"""
Execução de Experimentos.

Orquestra simulação, estimação, classificação e avaliação assintótica e
produz as linhas do relatório e o manifesto da execução.
"""

import math
import platform
import time
from dataclasses import dataclass, field
from datetime import datetime
from functools import reduce
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from loguru import logger

from .. import __version__
from ..asymptotics.formulas import (
    cp_asymptote,
    remark_bounds,
    stable_asymptote,
    tail_asymptote_q1,
    tandem_tail,
)
from ..asymptotics.scenarios import classify
from ..estimation.empirical import empirical_tail
from ..estimation.occupancy import OccupancyAccumulator, estimate_tail_time_average, merge_accumulators
from ..exceptions import GpsLabError, ParameterError, ScenarioError, UnsupportedError
from ..gps_sim.engine import GpsSimulator
from ..gps_sim.functionals import pollaczek_khinchine_tail, simulate_tandem_V
from ..gps_sim.observers import TrajectoryWriter
from ..levy_inputs.rng import RngStream
from ..levy_inputs.tails import mean_rate, summarize_inputs
from ..models.input_specs import CompoundPoissonSpec, ExponentialJobs, ParetoJobs, StableSpec
from ..models.summary import Scenario
from .config import ExperimentConfig
from .report import ReportRow, emit_csv, format_ratio_table

ASYMPTOTE_COLUMNS = ['u', 'scenario', 'f_asym', 'special', 'remark_lower', 'remark_upper']


@dataclass
class RunManifest:
    """
    Manifesto suficiente para reproduzir uma execução.

    Atributos:
        seeds: Pares (seed, stream_id) de cada replicação
        engine: Motor usado
        parameters: Eco da configuração
        version: Versão do pacote
        wall_clock: Duração em segundos
        started_at: Início (ISO 8601)
    """

    seeds: List[Tuple[int, int]]
    engine: str
    parameters: Dict
    version: str = __version__
    wall_clock: float = 0.0
    started_at: str = field(default_factory=lambda: datetime.now().isoformat())

    def to_dict(self) -> dict:
        return {
            'seeds': [list(s) for s in self.seeds],
            'engine': self.engine,
            'parameters': self.parameters,
            'version': self.version,
            'python': platform.python_version(),
            'numpy': np.__version__,
            'wall_clock': self.wall_clock,
            'started_at': self.started_at
        }


def asymptote_for(config: ExperimentConfig) -> Tuple[str, Optional[Callable[[float], float]]]:
    """
    Rótulo do regime e avaliador f1(u) do experimento.

    Experimentos de uma classe com jobs exponenciais usam a fórmula exata de
    Pollaczek-Khinchine como referência ('oracle').

    Returns:
        (rótulo, função u -> f1(u) ou None quando não classifica)
    """
    spec1, spec2, cfg = config.class1, config.class2, config.cfg
    if spec2 is None:
        if isinstance(spec1, CompoundPoissonSpec) and isinstance(spec1.jobs, ExponentialJobs):
            return 'oracle', lambda u: pollaczek_khinchine_tail(u, spec1.lam, spec1.jobs.rate, cfg.c)
        return 'unclassified', None

    try:
        summary = summarize_inputs(spec1, spec2)
        scenario = classify(cfg, summary)
    except ScenarioError as exc:
        logger.warning("Sem assíntota para esta parametrização: {}", exc)
        return 'unclassified', None
    except ParameterError as exc:
        logger.warning("Sem assíntota (entrada de cauda leve): {}", exc)
        return 'unclassified', None
    return f"scenario{scenario.case_number}", lambda u: tail_asymptote_q1(scenario, cfg, summary, u)


def _rows_from_estimates(estimates, tag: str, f: Optional[Callable[[float], float]]) -> List[ReportRow]:
    rows = []
    for est in estimates:
        f_asym = f(est.u) if f is not None else None
        rows.append(ReportRow(est.u, est.p_hat, est.ci_low, est.ci_high, f_asym, tag))
    return rows


def _flush_partial(config: ExperimentConfig, rows: List[ReportRow], exc: Exception):
    if config.csv_path:
        emit_csv(rows + [ReportRow.error_marker(exc)], config.csv_path)
        logger.error("Resultados parciais gravados em {} com marcador de erro", config.csv_path)


def run_experiment(config: ExperimentConfig,
                   verbose: bool = False) -> Tuple[List[ReportRow], RunManifest]:
    """
    Executa o experimento: simulação, estimação de P(Q1 > u) e comparação com f1(u).

    Args:
        config: Experimento validado
        verbose: Imprime banners e tabela de razões

    Returns:
        (linhas do relatório, manifesto)

    Raises:
        GpsLabError: Erros dos motores ou estimadores (após gravar resultados
                     parciais com linha de erro)
    """
    start = time.time()
    tag, f = asymptote_for(config)

    horizon = config.horizon
    if config.engine == 'discrete':
        horizon = math.ceil(horizon / config.h) * config.h

    simulator = GpsSimulator(config.cfg, config.class1, config.class2, {
        'engine': config.engine,
        'horizon': config.horizon,
        'h': config.h,
        'verbose': verbose,
        'enable_logging': config.log_dir is not None,
        'log_dir': config.log_dir or 'logs/gps'
    })

    accumulators = []
    writers = []

    def observers_for(rep: int):
        acc = OccupancyAccumulator(config.grid, horizon, queue=1)
        accumulators.append(acc)
        observers = [acc]
        if rep == 0 and config.trajectory_path:
            writer = TrajectoryWriter(config.trajectory_path)
            writers.append(writer)
            observers.append(writer)
        return observers

    manifest = RunManifest(
        seeds=[(config.seed, rep) for rep in range(config.replications)],
        engine=config.engine,
        parameters=config.to_dict()
    )

    rows: List[ReportRow] = []
    try:
        simulator.run(config.seed, config.replications, observer_factory=observers_for)
        merged = reduce(merge_accumulators, accumulators)
        estimates = estimate_tail_time_average(merged, config.burn_in, config.batches, config.confidence)
        rows = _rows_from_estimates(estimates, tag, f)
    except GpsLabError as exc:
        _flush_partial(config, rows, exc)
        raise
    finally:
        for writer in writers:
            writer.close()

    manifest.wall_clock = time.time() - start
    if config.csv_path:
        emit_csv(rows, config.csv_path)
    if simulator.logger:
        simulator.logger.save_manifest(manifest.to_dict())
        simulator.logger.save_summary(simulator.get_statistics(), format_ratio_table(rows))
    if verbose:
        print('\n'.join(format_ratio_table(rows)))

    logger.info("Experimento concluído: regime {}, {} níveis, {:.2f}s", tag, len(rows), manifest.wall_clock)
    return rows, manifest


def run_tandem(config: ExperimentConfig) -> Tuple[List[ReportRow], RunManifest]:
    """
    Estima P(V^eps > u) por amostras independentes e compara com a assíntota tandem.

    Cada amostra usa o fluxo (seed, i); o horizonte vem de target_level.

    Raises:
        ScenarioError: Hipóteses do funcional tandem violadas
    """
    if config.class2 is None:
        raise ScenarioError("O funcional tandem requer a classe 2")
    start = time.time()
    mu1 = mean_rate(config.class1)

    samples = np.array([
        simulate_tandem_V(config.class2, config.cfg, mu1, config.target_level,
                          RngStream(config.seed, i), eps=config.eps).v
        for i in range(config.samples)
    ])
    estimates = empirical_tail(samples, config.grid, config.confidence)

    f = None
    try:
        summary = summarize_inputs(config.class1, config.class2)
        f = lambda u: tandem_tail(u, config.eps, config.cfg, summary)
        f(config.grid.levels[0])
    except GpsLabError as exc:
        logger.warning("Sem assíntota tandem: {}", exc)
        f = None

    rows = _rows_from_estimates(estimates, 'tandem', f)
    manifest = RunManifest(
        seeds=[(config.seed, i) for i in range(config.samples)],
        engine='tandem',
        parameters=config.to_dict(),
        wall_clock=time.time() - start
    )
    if config.csv_path:
        emit_csv(rows, config.csv_path)
    return rows, manifest


def evaluate_asymptotes(config: ExperimentConfig) -> pd.DataFrame:
    """
    Avalia todos os avaliadores aplicáveis em cada nível da grade.

    Colunas: u, scenario, f_asym, special (caso Poisson composto-Pareto ou
    estável), remark_lower, remark_upper (regime 4 com beta2 em (-1, 1]).

    Raises:
        ScenarioError: Se a parametrização não classificar
    """
    if config.class2 is None:
        raise ScenarioError("Avaliadores assintóticos requerem duas classes")
    cfg, spec1, spec2 = config.cfg, config.class1, config.class2
    summary = summarize_inputs(spec1, spec2)
    try:
        scenario = classify(cfg, summary)
    except UnsupportedError:
        if summary.beta2 is None:
            raise
        # regime 4 com beta2 em (-1, 1): apenas limitantes
        records = []
        for u in config.grid:
            lower, upper = remark_bounds(cfg, summary, u)
            records.append({'u': u, 'scenario': 'scenario4-bounds', 'f_asym': None,
                            'special': None, 'remark_lower': lower, 'remark_upper': upper})
        return pd.DataFrame(records, columns=ASYMPTOTE_COLUMNS)

    cp_pareto = all(isinstance(s, CompoundPoissonSpec) and isinstance(s.jobs, ParetoJobs)
                    for s in (spec1, spec2))
    stable = all(isinstance(s, StableSpec) and s.alpha < 2 for s in (spec1, spec2))

    records = []
    for u in config.grid:
        record = {
            'u': u,
            'scenario': f"scenario{scenario.case_number}",
            'f_asym': tail_asymptote_q1(scenario, cfg, summary, u),
            'special': None,
            'remark_lower': None,
            'remark_upper': None
        }
        if cp_pareto:
            record['special'] = cp_asymptote(scenario.case_number, cfg, spec1, spec2, u)
        elif stable:
            record['special'] = stable_asymptote(scenario.case_number, cfg, spec1, spec2, u)
        if (scenario is Scenario.FIRST_OVERLOADED_SECOND_HEAVIER and summary.beta2 is not None):
            record['remark_lower'], record['remark_upper'] = remark_bounds(cfg, summary, u)
        records.append(record)
    return pd.DataFrame(records, columns=ASYMPTOTE_COLUMNS)
