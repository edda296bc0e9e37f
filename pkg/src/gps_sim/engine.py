"""
Motores de Simulação GPS.

- simulate_event_driven: caminho exato para entradas Poisson composto,
  alternando escoamento em forma fechada e saltos
- simulate_discrete: recursão de passo h para qualquer família de entrada
- GpsSimulator: coordena uma execução completa (configuração, observadores,
  logging e estatísticas)
"""

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..exceptions import ParameterError, WorkloadOverflowError
from ..levy_inputs.rng import RngStream
from ..levy_inputs.samplers import ArrivalStream, cp_arrivals, sample_stable_increment
from ..models.gps import OVERFLOW_LIMIT, GpsConfig, SystemState
from ..models.input_specs import ClassInputSpec, CompoundPoissonSpec
from ..models.trajectory import PathChunk, ServiceLedger
from .dynamics import PhaseBuffer, gps_discrete_step
from .logger import SimulationLogger

# Chegadas (ou passos) por pedaço entregue aos observadores
CHUNK_SIZE = 1 << 16


@dataclass
class EventDrivenResult:
    """
    Resultado de uma execução orientada a eventos.

    Atributos:
        final_state: Estado no horizonte
        ledger: Contabilidade de serviço
        n_events: Número de chegadas processadas
        horizon: Horizonte simulado
        arrivals: Fluxos de chegada usados (classe 1, classe 2)
    """

    final_state: SystemState
    ledger: ServiceLedger
    n_events: int
    horizon: float
    arrivals: Tuple[ArrivalStream, ArrivalStream] = field(repr=False)

    def to_dict(self) -> dict:
        return {
            'engine': 'event',
            'horizon': self.horizon,
            'n_events': self.n_events,
            'final_state': {'t': self.final_state.t, 'q1': self.final_state.q1, 'q2': self.final_state.q2},
            'ledger': self.ledger.to_dict()
        }


@dataclass
class DiscreteResult:
    """Resultado do motor discreto: estado final, número de passos e passo h."""

    final_state: SystemState
    steps: int
    h: float

    def to_dict(self) -> dict:
        return {
            'engine': 'discrete',
            'h': self.h,
            'steps': self.steps,
            'horizon': self.steps * self.h,
            'final_state': {'t': self.final_state.t, 'q1': self.final_state.q1, 'q2': self.final_state.q2}
        }


def _hooks(observers: Iterable, name: str) -> list:
    return [getattr(o, name) for o in observers if hasattr(o, name)]


def _check_overflow(t: float, q1: float, q2: float):
    total = q1 + q2
    if not total <= OVERFLOW_LIMIT:
        raise WorkloadOverflowError(
            f"Carga total {total:.6g} excedeu {OVERFLOW_LIMIT:.0e} em t = {t:.6g}"
        )


class _Dispatcher:
    """
    Entrega pedaços do caminho aos observadores.

    Observadores com on_path recebem o pedaço inteiro; os demais recebem
    on_segment / on_jump um a um, em ordem temporal.
    """

    def __init__(self, observers: Sequence):
        self.path_hooks = _hooks(observers, 'on_path')
        per_event = [o for o in observers if not hasattr(o, 'on_path')]
        self.segment_hooks = _hooks(per_event, 'on_segment')
        self.jump_hooks = _hooks(per_event, 'on_jump')
        self.finish_hooks = _hooks(observers, 'on_finish')

    def deliver(self, chunk: PathChunk):
        for hook in self.path_hooks:
            hook(chunk)
        if not (self.segment_hooks or self.jump_hooks):
            return
        for event in chunk.events():
            if event[0] == 'segment':
                for hook in self.segment_hooks:
                    hook(event[1])
            else:
                _, jump, b1, b2, a1, a2 = event
                before = SystemState(jump.t, b1, b2)
                after = SystemState(jump.t, a1, a2)
                for hook in self.jump_hooks:
                    hook(jump, before, after)

    def finish(self, state: SystemState):
        for hook in self.finish_hooks:
            hook(state)


def generate_arrivals(spec1: Optional[CompoundPoissonSpec], spec2: Optional[CompoundPoissonSpec],
                      horizon: float, rng: RngStream) -> Tuple[ArrivalStream, ArrivalStream]:
    """Gera os dois fluxos de chegada em sequência no mesmo RngStream (None = sem chegadas)."""
    streams = []
    for spec in (spec1, spec2):
        if spec is None:
            streams.append(ArrivalStream.empty())
        elif isinstance(spec, CompoundPoissonSpec):
            streams.append(cp_arrivals(spec, horizon, rng))
        else:
            raise ParameterError("O motor orientado a eventos requer entradas Poisson composto")
    return streams[0], streams[1]


def simulate_event_driven(cfg: GpsConfig, spec1: Optional[CompoundPoissonSpec],
                          spec2: Optional[CompoundPoissonSpec], horizon: float,
                          rng: Optional[RngStream] = None, observers: Sequence = (),
                          arrivals: Optional[Tuple[ArrivalStream, ArrivalStream]] = None) -> EventDrivenResult:
    """
    Simula o caminho exato do sistema GPS em [0, horizon], partindo de vazio.

    As chegadas são processadas em pedaços de CHUNK_SIZE; cada pedaço é
    entregue aos observadores como PathChunk.

    Args:
        cfg: Configuração GPS
        spec1, spec2: Entradas Poisson composto (None = classe sem entrada)
        horizon: Horizonte (> 0)
        rng: Fluxo aleatório (ignorado quando arrivals é dado)
        observers: Objetos com ganchos on_path / on_segment / on_jump / on_finish
        arrivals: Fluxos de chegada pré-gerados, para acoplar execuções

    Returns:
        EventDrivenResult

    Raises:
        ParameterError: horizon <= 0 ou entrada não Poisson composto
        WorkloadOverflowError: Carga além de 1e300
    """
    if not horizon > 0:
        raise ParameterError(f"horizon deve ser positivo (recebido {horizon})")
    if arrivals is None:
        if rng is None:
            raise ParameterError("Informe rng ou arrivals")
        arrivals = generate_arrivals(spec1, spec2, horizon, rng)

    a1, a2 = arrivals
    times = np.concatenate([a1.times, a2.times])
    classes = np.concatenate([np.ones(len(a1), dtype=int), np.full(len(a2), 2, dtype=int)])
    sizes = np.concatenate([a1.sizes, a2.sizes])
    keep = times < horizon
    order = np.argsort(times[keep], kind='stable')
    times, classes, sizes = times[keep][order], classes[keep][order], sizes[keep][order]
    if (sizes < 0).any():
        raise ParameterError(f"Tamanho de job negativo: {sizes.min()}")

    dispatcher = _Dispatcher(observers)
    buffer = PhaseBuffer(cfg)
    drain = buffer.drain
    t = q1 = q2 = 0.0
    n = len(times)
    starts = list(range(0, n, CHUNK_SIZE)) or [0]

    for k, lo in enumerate(starts):
        hi = min(n, lo + CHUNK_SIZE)
        before1, before2, gap_end = [], [], []
        for ta, cls, size in zip(times[lo:hi].tolist(), classes[lo:hi].tolist(), sizes[lo:hi].tolist()):
            q1, q2 = drain(t, q1, q2, ta)
            t = ta
            before1.append(q1)
            before2.append(q2)
            gap_end.append(len(buffer))
            if cls == 1:
                q1 += size
            else:
                q2 += size
            if not q1 + q2 <= OVERFLOW_LIMIT:
                _check_overflow(t, q1, q2)
        if k == len(starts) - 1:
            q1, q2 = drain(t, q1, q2, horizon)
        dispatcher.deliver(PathChunk(
            *buffer.take(),
            jump_t=times[lo:hi], jump_cls=classes[lo:hi], jump_size=sizes[lo:hi],
            before1=np.array(before1, dtype=float), before2=np.array(before2, dtype=float),
            gap_end=np.array(gap_end, dtype=int)
        ))

    ledger = ServiceLedger()
    buffer.flush_ledger(ledger)
    state = SystemState(horizon, q1, q2)
    dispatcher.finish(state)
    return EventDrivenResult(state, ledger, n, horizon, (a1, a2))


def _step_increments(spec: Optional[ClassInputSpec], stream: Optional[ArrivalStream],
                     h: float, steps: int, rng: Optional[RngStream]) -> np.ndarray:
    # Entrada de cada passo concentrada no início do passo
    if stream is not None:
        idx = np.floor(stream.times / h).astype(int)
        keep = idx < steps
        return np.bincount(idx[keep], weights=stream.sizes[keep], minlength=steps)
    if spec is None:
        return np.zeros(steps)
    if isinstance(spec, CompoundPoissonSpec):
        arrivals = cp_arrivals(spec, steps * h, rng)
        return _step_increments(None, arrivals, h, steps, None)
    return np.asarray(sample_stable_increment(spec, h, rng, size=steps), dtype=float)


def _flat_chunk(k0: int, h: float, q1: List[float], q2: List[float]) -> PathChunk:
    t_start = (k0 + np.arange(len(q1))) * h
    flat = np.zeros(len(q1))
    no_jumps = np.empty(0)
    return PathChunk(t_start, t_start + h, np.array(q1), np.array(q2), flat, flat,
                     no_jumps, np.empty(0, dtype=int), no_jumps, no_jumps, no_jumps,
                     np.empty(0, dtype=int))


def simulate_discrete(cfg: GpsConfig, spec1: Optional[ClassInputSpec], spec2: Optional[ClassInputSpec],
                      h: float, steps: int, rng: Optional[RngStream] = None,
                      observers: Sequence = (),
                      arrivals: Optional[Tuple[ArrivalStream, ArrivalStream]] = None,
                      initial: Tuple[float, float] = (0.0, 0.0)) -> DiscreteResult:
    """
    Simula o sistema GPS pela recursão discreta de passo h.

    A entrada de cada passo é somada no início; cada passo emite, por fila,
    um trecho plano de duração h no valor pós-passo.

    Args:
        cfg: Configuração GPS
        spec1, spec2: Entradas (qualquer família; None = sem entrada)
        h: Passo (> 0)
        steps: Número de passos (>= 1)
        rng: Fluxo aleatório
        observers: Objetos com ganchos on_path / on_segment / on_finish
        arrivals: Chegadas Poisson composto compartilhadas com o motor exato
        initial: Cargas iniciais (q1, q2)

    Returns:
        DiscreteResult
    """
    if not h > 0:
        raise ParameterError(f"Passo h deve ser positivo (recebido {h})")
    if steps < 1:
        raise ParameterError(f"steps deve ser >= 1 (recebido {steps})")

    s1, s2 = arrivals if arrivals is not None else (None, None)
    dz1 = _step_increments(spec1, s1, h, steps, rng)
    dz2 = _step_increments(spec2, s2, h, steps, rng)

    dispatcher = _Dispatcher(observers)
    q1, q2 = initial
    for k0 in range(0, steps, CHUNK_SIZE):
        k1 = min(steps, k0 + CHUNK_SIZE)
        path1, path2 = [], []
        for k, (d1, d2) in enumerate(zip(dz1[k0:k1].tolist(), dz2[k0:k1].tolist()), start=k0):
            q1, q2 = gps_discrete_step(q1, q2, d1, d2, cfg, h)
            if not q1 + q2 <= OVERFLOW_LIMIT:
                _check_overflow((k + 1) * h, q1, q2)
            path1.append(q1)
            path2.append(q2)
        dispatcher.deliver(_flat_chunk(k0, h, path1, path2))

    state = SystemState(steps * h, q1, q2)
    dispatcher.finish(state)
    return DiscreteResult(state, steps, h)


class GpsSimulator:
    """Coordena execuções do sistema GPS de duas classes."""

    def __init__(self,
                 cfg: GpsConfig,
                 spec1: Optional[ClassInputSpec],
                 spec2: Optional[ClassInputSpec],
                 config: Dict = None):
        """
        Inicializa o simulador.

        Args:
            cfg: Configuração GPS
            spec1: Entrada da classe 1
            spec2: Entrada da classe 2
            config: Configurações da execução
        """
        self.cfg = cfg
        self.spec1 = spec1
        self.spec2 = spec2

        # Configuração padrão
        default_config = {
            'engine': 'event',  # 'event' ou 'discrete'
            'horizon': 1e5,
            'h': 0.1,
            'verbose': True,
            'enable_logging': False,
            'log_dir': 'logs/gps'
        }

        self.config = {**default_config, **(config or {})}
        if self.config['engine'] not in ('event', 'discrete'):
            raise ParameterError(f"Motor desconhecido: {self.config['engine']!r}")

        self.logger = None
        if self.config['enable_logging']:
            self.logger = SimulationLogger(output_dir=self.config['log_dir'])

        self.results = []
        self.execution_time = 0.0

    def _banner(self, title: str):
        if self.config['verbose']:
            print("\n" + "="*80)
            print(title)
            print("="*80)

    def run_once(self, rng: RngStream, observers: Sequence = (),
                 arrivals: Optional[Tuple[ArrivalStream, ArrivalStream]] = None):
        """
        Executa uma replicação com o motor configurado.

        Args:
            rng: Fluxo aleatório da replicação
            observers: Observadores da replicação
            arrivals: Chegadas pré-geradas (opcional)

        Returns:
            EventDrivenResult ou DiscreteResult
        """
        start = time.time()
        if self.config['engine'] == 'event':
            result = simulate_event_driven(self.cfg, self.spec1, self.spec2,
                                           self.config['horizon'], rng, observers, arrivals)
        else:
            h = self.config['h']
            steps = int(math.ceil(self.config['horizon'] / h))
            result = simulate_discrete(self.cfg, self.spec1, self.spec2, h, steps, rng,
                                       observers, arrivals)
        elapsed = time.time() - start

        self.results.append(result)
        self.execution_time += elapsed
        logger.debug("Replicação {} concluída em {:.2f}s", rng.stream_id, elapsed)
        if self.logger:
            self.logger.log_replication(len(self.results) - 1, rng, result, elapsed)
        return result

    def run(self, seed: int, replications: int = 1,
            observer_factory: Optional[Callable[[int], Sequence]] = None,
            replication_callback: Optional[Callable] = None):
        """
        Executa replicações independentes (fluxos seed/0, seed/1, ...).

        Args:
            seed: Semente base
            replications: Número de replicações
            observer_factory: Função rep -> observadores daquela replicação
            replication_callback: Função chamada ao fim de cada replicação
                                  Assinatura: callback(sim, rep, result)

        Returns:
            Lista de resultados
        """
        self._banner("INICIANDO SIMULAÇÃO GPS")
        if self.config['verbose']:
            print(f"c = {self.cfg.c}, phi = ({self.cfg.phi1}, {self.cfg.phi2})")
            print(f"Motor: {self.config['engine']}")
            print(f"Horizonte: {self.config['horizon']:.6g}")
            print(f"Replicações: {replications}")
            print("="*80 + "\n")

        root = RngStream(seed)
        for rep in range(replications):
            observers = observer_factory(rep) if observer_factory else ()
            result = self.run_once(root.child(rep), observers)
            if replication_callback:
                replication_callback(self, rep, result)

        self._banner("SIMULAÇÃO COMPLETA!")
        if self.config['verbose']:
            print(f"Tempo de execução: {self.execution_time:.2f} segundos")
            print("="*80 + "\n")

        if self.logger:
            self.logger.save_summary(self.get_statistics())
        return self.results

    def get_statistics(self) -> Dict:
        """
        Obtém estatísticas agregadas das execuções.

        Returns:
            Dicionário com estatísticas
        """
        stats = {
            'engine': self.config['engine'],
            'replications': len(self.results),
            'horizon': self.config['horizon'],
            'execution_time': self.execution_time,
        }
        events = [r.n_events for r in self.results if isinstance(r, EventDrivenResult)]
        if events:
            stats['total_events'] = int(sum(events))
            ledgers = [r.ledger for r in self.results]
            busy = sum(l.busy_time for l in ledgers)
            elapsed = sum(l.elapsed for l in ledgers)
            stats['busy_fraction'] = busy / elapsed if elapsed > 0 else 0.0
            stats['served1'] = sum(l.b1 for l in ledgers)
            stats['served2'] = sum(l.b2 for l in ledgers)
        if self.results:
            stats['mean_final_q1'] = float(np.mean([r.final_state.q1 for r in self.results]))
            stats['mean_final_q2'] = float(np.mean([r.final_state.q2 for r in self.results]))
        return stats
