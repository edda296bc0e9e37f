"""
Testes da Simulação GPS.

Dinâmica de escoamento, passo discreto, motores exato e discreto,
funcionais de caminho e o simulador com logging.
"""
import json
import sys
from pathlib import Path

import numpy as np
import pytest

# Adicionar diretório raiz ao path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.estimation import OccupancyAccumulator, estimate_tail_time_average
from src.exceptions import (
    InputError,
    ParameterError,
    ScenarioError,
    UnstableQueueError,
    WorkloadOverflowError,
)
from src.gps_sim import (
    EpochRecorder,
    GpsSimulator,
    PhaseBuffer,
    TrajectoryRecorder,
    TrajectoryWriter,
    apply_jump,
    drain_until,
    dual_queue_supremum,
    finite_window_supremum,
    generate_arrivals,
    gps_discrete_step,
    pollaczek_khinchine_tail,
    simulate_discrete,
    simulate_event_driven,
    simulate_tandem_V,
    single_queue_supremum,
    total_workload_reference,
)
from src.gps_sim import engine as engine_module
from src.levy_inputs import RngStream
from src.models import (
    CompoundPoissonSpec,
    DeterministicJobs,
    ExponentialJobs,
    GpsConfig,
    LevelGrid,
    ParetoJobs,
    ServiceLedger,
    StableSpec,
    SystemState,
)

UNIT = GpsConfig(1.0, 0.5, 0.5)
SKEWED = GpsConfig(1.0, 0.3, 0.7)
MM1 = CompoundPoissonSpec(lam=0.5, jobs=ExponentialJobs(1.0))
PK_AT_2 = 0.5 * np.exp(-1.0)


# ==========================================
# DINÂMICA
# ==========================================

def test_drain_two_phases():
    """(3, 2) esvazia a fila 2 em t = 4 e a fila 1 em t = 5."""
    state, segments = drain_until(SystemState(0.0, 3.0, 2.0), 10.0, UNIT)

    assert (state.t, state.q1, state.q2) == (10.0, 0.0, 0.0)
    breakpoints = [s.t_end for s in segments if s.queue == 1]
    assert breakpoints == [4.0, 5.0, 10.0]
    assert segments[2].q_start == pytest.approx(1.0)
    assert segments[2].slope == -1.0


def test_drain_both_backlogged():
    state, _ = drain_until(SystemState(0.0, 3.0, 2.0), 2.0, UNIT)
    assert (state.q1, state.q2) == (2.0, 1.0)


def test_drain_reassigns_idle_capacity():
    state, _ = drain_until(SystemState(0.0, 0.0, 2.0), 1.0, UNIT)
    assert (state.q1, state.q2) == (0.0, 1.0)


def test_drain_rejects_negative_duration():
    with pytest.raises(ParameterError):
        drain_until(SystemState(0.0, 1.0, 1.0), -1.0, UNIT)


def test_drain_ledger_conservation():
    ledger = ServiceLedger()
    drain_until(SystemState(0.0, 3.0, 2.0), 10.0, UNIT, ledger)

    assert ledger.total_served == pytest.approx(5.0)
    assert ledger.busy_time == pytest.approx(5.0)
    assert ledger.c1 >= UNIT.rate1 * ledger.elapsed
    assert ledger.c2 >= UNIT.rate2 * ledger.elapsed


def test_phase_buffer_columns():
    buffer = PhaseBuffer(UNIT)
    assert buffer.drain(0.0, 3.0, 2.0, 10.0) == (0.0, 0.0)
    assert len(buffer) == 3

    t_start, t_end, q1, q2, slope1, slope2 = buffer.take()
    assert t_start.tolist() == [0.0, 4.0, 5.0]
    assert t_end.tolist() == [4.0, 5.0, 10.0]
    assert q1 == pytest.approx([3.0, 1.0, 0.0])
    assert q2 == pytest.approx([2.0, 0.0, 0.0])
    assert slope1.tolist() == [-0.5, -1.0, 0.0]
    assert slope2.tolist() == [-0.5, 0.0, 0.0]
    assert len(buffer) == 0

    ledger = ServiceLedger()
    buffer.flush_ledger(ledger)
    assert ledger.total_served == pytest.approx(5.0)
    assert ledger.elapsed == pytest.approx(10.0)
    assert buffer.elapsed == 0.0


def test_apply_jump_examples():
    assert apply_jump(SystemState(0.0, 0.0, 0.0), 1, 5.0) == SystemState(0.0, 5.0, 0.0)
    assert apply_jump(SystemState(0.0, 1.0, 2.0), 2, 0.0) == SystemState(0.0, 1.0, 2.0)
    assert apply_jump(SystemState(0.0, 1.0, 2.0), 2, 3.5) == SystemState(0.0, 1.0, 5.5)
    with pytest.raises(ParameterError):
        apply_jump(SystemState(0.0, 1.0, 2.0), 1, -1.0)


def test_discrete_step_examples():
    assert gps_discrete_step(0.2, 5.0, 0.0, 0.0, UNIT, 1.0) == pytest.approx((0.0, 4.2))
    assert gps_discrete_step(3.0, 2.0, 0.0, 0.0, UNIT, 1.0) == pytest.approx((2.5, 1.5))
    assert gps_discrete_step(0.0, 0.0, 1.0, 0.0, UNIT, 1.0) == (0.0, 0.0)
    with pytest.raises(ParameterError):
        gps_discrete_step(1.0, 1.0, 0.0, 0.0, UNIT, 0.0)


def test_discrete_step_matches_drain_at_breakpoint():
    state, _ = drain_until(SystemState(0.0, 3.0, 2.0), 4.0, UNIT)
    assert gps_discrete_step(3.0, 2.0, 0.0, 0.0, UNIT, 4.0) == (state.q1, state.q2)


# ==========================================
# MOTOR ORIENTADO A EVENTOS
# ==========================================

def test_single_class_matches_reflection_at_rate_c():
    epochs = EpochRecorder()
    result = simulate_event_driven(UNIT, MM1, None, 2000.0, RngStream(3), [epochs])

    a1, _ = result.arrivals
    reference = total_workload_reference(a1.times, a1.sizes, UNIT.c)
    times, q1, q2 = epochs.as_arrays()
    expected = np.array([reference.at(t) for t in times])

    assert np.allclose(q1, expected, atol=1e-9)
    assert np.all(q2 == 0.0)


def test_work_conservation_two_classes():
    spec1 = CompoundPoissonSpec(lam=0.2, jobs=ParetoJobs(1.0, 1.5))
    spec2 = CompoundPoissonSpec(lam=0.15, jobs=ParetoJobs(1.0, 2.5))
    epochs = EpochRecorder()
    result = simulate_event_driven(UNIT, spec1, spec2, 5000.0, RngStream(4), [epochs])

    a1, a2 = result.arrivals
    times = np.concatenate([a1.times, a2.times])
    sizes = np.concatenate([a1.sizes, a2.sizes])
    order = np.argsort(times)
    reference = total_workload_reference(times[order], sizes[order], UNIT.c)

    t, q1, q2 = epochs.as_arrays()
    expected = np.array([reference.at(x) for x in t])
    assert np.allclose(q1 + q2, expected, rtol=1e-9, atol=1e-8)
    assert result.ledger.c1 >= UNIT.rate1 * result.ledger.elapsed - 1e-6


@pytest.mark.parametrize('seed', [14, 15, 16])
def test_queues_dominated_by_guaranteed_rate_reflection(seed):
    """Q_i <= reflexão da própria entrada à taxa phi_i c; Q1 + Q2 é a reflexão total à taxa c."""
    spec1 = CompoundPoissonSpec(lam=0.15, jobs=ParetoJobs(1.0, 1.5))
    spec2 = CompoundPoissonSpec(lam=0.3, jobs=ExponentialJobs(1.0))
    recorder = TrajectoryRecorder()
    result = simulate_event_driven(SKEWED, spec1, spec2, 3000.0, RngStream(seed), [recorder])

    a1, a2 = result.arrivals
    isolated1 = total_workload_reference(a1.times, a1.sizes, SKEWED.rate1)
    isolated2 = total_workload_reference(a2.times, a2.sizes, SKEWED.rate2)
    times = np.concatenate([a1.times, a2.times])
    order = np.argsort(times, kind='stable')
    total = total_workload_reference(times[order], np.concatenate([a1.sizes, a2.sizes])[order], SKEWED.c)

    by_start = {}
    for s in recorder.trajectory.segments:
        by_start.setdefault(s.t_start, {})[s.queue] = s.q_start
    for t, loads in by_start.items():
        assert loads[1] <= isolated1.at(t) + 1e-9
        assert loads[2] <= isolated2.at(t) + 1e-9
        assert loads[1] + loads[2] == pytest.approx(total.at(t), abs=1e-8)


def test_segment_slopes_are_gps_rates():
    recorder = TrajectoryRecorder()
    spec = CompoundPoissonSpec(lam=0.3, jobs=ExponentialJobs(1.0))
    simulate_event_driven(UNIT, spec, spec, 500.0, RngStream(5), [recorder])

    allowed = {0.0, -UNIT.rate1, -UNIT.c}
    assert recorder.trajectory.slopes(1) <= allowed
    assert recorder.trajectory.slopes(2) <= {0.0, -UNIT.rate2, -UNIT.c}
    assert len(recorder.trajectory.jumps) > 0


def test_mm1_oracle_time_average():
    """Fração do tempo com carga acima de 2 próxima de 0.5 e^-1."""
    grid = LevelGrid.of([2.0])
    acc = OccupancyAccumulator(grid, 2e5)
    simulate_event_driven(UNIT, MM1, None, 2e5, RngStream(2024), [acc])
    (estimate,) = estimate_tail_time_average(acc)

    assert pollaczek_khinchine_tail(2.0, 0.5, 1.0) == pytest.approx(0.18394, rel=1e-4)
    assert estimate.p_hat == pytest.approx(PK_AT_2, abs=0.02)


class SegmentReplay:
    """Expõe só on_segment / on_jump, forçando a entrega trecho a trecho."""

    def __init__(self, target):
        self.on_segment = target.on_segment
        self.on_jump = getattr(target, 'on_jump', lambda *args: None)


def test_path_chunks_match_segment_replay():
    grid = LevelGrid.of([0.5, 2.0, 5.0])
    horizon = 3000.0
    spec = CompoundPoissonSpec(lam=0.3, jobs=ExponentialJobs(1.0))
    arrivals = generate_arrivals(spec, spec, horizon, RngStream(12))

    vector = OccupancyAccumulator(grid, horizon, n_bins=64, queue=2)
    scalar = OccupancyAccumulator(grid, horizon, n_bins=64, queue=2)
    epochs, recorder = EpochRecorder(), TrajectoryRecorder()
    simulate_event_driven(UNIT, spec, spec, horizon, observers=[vector, SegmentReplay(scalar), epochs, recorder],
                          arrivals=arrivals)

    assert np.allclose(vector.above, scalar.above, atol=1e-9)
    assert np.allclose(vector.observed, scalar.observed, atol=1e-9)
    assert vector.total_time == pytest.approx(horizon)
    times, _, _ = epochs.as_arrays()
    assert times[:-1].tolist() == [j.t for j in recorder.trajectory.jumps]


def test_chunk_size_does_not_change_path(monkeypatch):
    grid = LevelGrid.of([1.0, 3.0])
    arrivals = generate_arrivals(MM1, MM1, 2000.0, RngStream(13))

    def run():
        acc = OccupancyAccumulator(grid, 2000.0, n_bins=16)
        epochs = EpochRecorder()
        result = simulate_event_driven(GpsConfig(1.5, 0.4, 0.6), MM1, MM1, 2000.0,
                                       observers=[acc, epochs], arrivals=arrivals)
        return result, acc, epochs.as_arrays()

    whole, acc_whole, epochs_whole = run()
    monkeypatch.setattr(engine_module, 'CHUNK_SIZE', 7)
    split, acc_split, epochs_split = run()

    assert split.final_state == whole.final_state
    assert split.ledger.total_served == pytest.approx(whole.ledger.total_served)
    assert np.allclose(acc_split.above, acc_whole.above)
    for a, b in zip(epochs_split, epochs_whole):
        assert np.array_equal(a, b)


def test_event_engine_rejects_stable_input():
    with pytest.raises(ParameterError):
        simulate_event_driven(UNIT, StableSpec(1.5, 1.0, 0.1), None, 10.0, RngStream(0))


def test_workload_overflow():
    spec = CompoundPoissonSpec(lam=1.0, jobs=DeterministicJobs(5e299))
    with pytest.raises(WorkloadOverflowError):
        simulate_event_driven(UNIT, spec, None, 100.0, RngStream(0))


# ==========================================
# MOTOR DISCRETO
# ==========================================

def test_discrete_zero_input_empties():
    result = simulate_discrete(UNIT, None, None, h=0.5, steps=10, initial=(3.0, 2.0))
    assert (result.final_state.q1, result.final_state.q2) == (0.0, 0.0)
    assert result.final_state.t == pytest.approx(5.0)


def test_discrete_engine_tracks_event_engine():
    grid = LevelGrid.of([1.0, 2.0, 4.0])
    horizon, h = 1e4, 0.1
    arrivals = generate_arrivals(MM1, MM1, horizon, RngStream(6))
    cfg = GpsConfig(1.5, 0.5, 0.5)

    exact = OccupancyAccumulator(grid, horizon)
    simulate_event_driven(cfg, MM1, MM1, horizon, observers=[exact], arrivals=arrivals)
    discrete = OccupancyAccumulator(grid, horizon)
    simulate_discrete(cfg, MM1, MM1, h, int(horizon / h), observers=[discrete], arrivals=arrivals)

    p_exact = [e.p_hat for e in estimate_tail_time_average(exact)]
    p_discrete = [e.p_hat for e in estimate_tail_time_average(discrete)]
    assert p_discrete == pytest.approx(p_exact, abs=0.03)


def test_discrete_stable_inputs_stay_finite():
    result = simulate_discrete(UNIT, StableSpec(2.0, 0.0, 0.2), StableSpec(1.5, 1.0, 0.2),
                               h=0.5, steps=2000, rng=RngStream(7))
    assert np.isfinite(result.final_state.total)
    assert result.final_state.q1 >= 0 and result.final_state.q2 >= 0


# ==========================================
# FUNCIONAIS DE CAMINHO
# ==========================================

def test_single_queue_supremum_zero_input():
    assert single_queue_supremum(None, 1.0, 10.0, RngStream(0)) == 0.0


def test_single_queue_supremum_pk_oracle():
    samples = np.array([single_queue_supremum(MM1, 1.0, 2.0, RngStream(8, i), horizon=500.0)
                        for i in range(4000)])
    assert np.mean(samples > 2.0) == pytest.approx(PK_AT_2, abs=0.03)


def test_single_queue_supremum_unstable():
    with pytest.raises(UnstableQueueError):
        single_queue_supremum(MM1, 0.5, 10.0, RngStream(0))


def test_dual_and_finite_window_supremum():
    assert dual_queue_supremum(MM1, 0.3, 5.0, RngStream(9)) >= 0.0
    with pytest.raises(UnstableQueueError):
        dual_queue_supremum(MM1, 0.6, 5.0, RngStream(9))
    assert finite_window_supremum(MM1, 1.0, 1.0, RngStream(10)) >= 0.0
    with pytest.raises(ParameterError):
        finite_window_supremum(MM1, 1.0, 0.0, RngStream(10))


def test_tandem_v_zero_path_and_sign():
    assert simulate_tandem_V(None, SKEWED, 0.4, 10.0, RngStream(0)).v == 0.0

    spec2 = CompoundPoissonSpec(lam=0.1, jobs=ParetoJobs(1.0, 1.5))
    samples = [simulate_tandem_V(spec2, SKEWED, 0.4, 10.0, RngStream(11, i)) for i in range(20)]
    assert all(s.v >= 0.0 for s in samples)
    assert samples[0].horizon == pytest.approx(1e4)


def test_tandem_v_hypotheses():
    spec2 = CompoundPoissonSpec(lam=0.1, jobs=ParetoJobs(1.0, 1.5))
    with pytest.raises(ScenarioError):
        simulate_tandem_V(spec2, UNIT, 0.4, 10.0, RngStream(0))
    with pytest.raises(ScenarioError):
        simulate_tandem_V(StableSpec(1.5, 0.0, 0.3), SKEWED, 0.4, 10.0, RngStream(0))


def test_total_workload_reference():
    empty = total_workload_reference([], [], 1.0)
    assert empty.at(5.0) == 0.0

    single = total_workload_reference([0.0], [3.0], 1.0)
    assert single.at(1.5) == pytest.approx(1.5)
    assert single.at(3.0) == 0.0
    assert single.at(4.0) == 0.0

    with pytest.raises(InputError):
        total_workload_reference([2.0, 1.0], [1.0, 1.0], 1.0)


def test_pollaczek_khinchine_requires_stability():
    with pytest.raises(UnstableQueueError):
        pollaczek_khinchine_tail(1.0, 1.0, 1.0)


# ==========================================
# SIMULADOR E REGISTROS
# ==========================================

def test_simulator_statistics_and_logging(tmp_path):
    simulator = GpsSimulator(UNIT, MM1, MM1, {
        'horizon': 500.0,
        'verbose': False,
        'enable_logging': True,
        'log_dir': str(tmp_path)
    })
    results = simulator.run(seed=1, replications=2)
    stats = simulator.get_statistics()

    assert len(results) == 2
    assert stats['replications'] == 2
    assert stats['total_events'] == sum(r.n_events for r in results)
    assert 0.0 < stats['busy_fraction'] <= 1.0

    lines = simulator.logger.runs_file.read_text(encoding='utf-8').splitlines()
    assert [json.loads(line)['rng']['stream_id'] for line in lines] == [0, 1]
    assert simulator.logger.summary_file.exists()


def test_simulator_rejects_unknown_engine():
    with pytest.raises(ParameterError):
        GpsSimulator(UNIT, MM1, MM1, {'engine': 'fluid'})


def test_replications_are_reproducible():
    config = {'horizon': 300.0, 'verbose': False}
    first = GpsSimulator(UNIT, MM1, MM1, config).run(seed=5, replications=1)[0]
    second = GpsSimulator(UNIT, MM1, MM1, config).run(seed=5, replications=1)[0]
    assert first.final_state == second.final_state
    assert first.n_events == second.n_events


def test_trajectory_writer(tmp_path):
    path = tmp_path / 'traj' / 'path.csv'
    with TrajectoryWriter(path) as writer:
        simulate_event_driven(UNIT, MM1, None, 50.0, RngStream(12), [writer])
    lines = path.read_text(encoding='utf-8').splitlines()

    assert lines[0] == 'kind,t_start,t_end,queue,q_start,slope,jump_size'
    assert len(lines) == writer.records + 1
    assert any(line.startswith('jump,') for line in lines)
