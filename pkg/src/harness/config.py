"""
Configuração de Experimentos.

Arquivos INI com as seções [system], [class1], [class2], [grid], [run] e
[output] são lidos com configparser e validados com pydantic; chaves
desconhecidas são rejeitadas e cada erro é reportado pelo nome do campo.
"""

import configparser
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import List, Literal, Optional, Union

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..asymptotics.scenarios import classify
from ..estimation.horizon import horizon_for_level
from ..exceptions import ConfigError, GpsLabError, ParameterError, ScenarioError
from ..levy_inputs.tails import mean_rate, summarize_inputs
from ..models.estimates import LevelGrid
from ..models.gps import WEIGHT_TOLERANCE, GpsConfig
from ..models.input_specs import (
    ClassInputSpec,
    CompoundPoissonSpec,
    DeterministicJobs,
    ExponentialJobs,
    ParetoJobs,
    StableSpec,
    class_input_from_dict,
)


class _Section(BaseModel):
    model_config = ConfigDict(extra='forbid', populate_by_name=True)


class SystemSection(_Section):
    c: float = Field(gt=0)
    phi1: float = Field(gt=0, lt=1)
    phi2: float = Field(gt=0, lt=1)

    @model_validator(mode='after')
    def weights_sum_to_one(self):
        if abs(self.phi1 + self.phi2 - 1.0) > WEIGHT_TOLERANCE:
            raise ValueError(f"phi1 + phi2 deve ser 1 (recebido {self.phi1 + self.phi2})")
        return self


class ClassSection(_Section):
    family: Literal['cp', 'stable']
    lam: Optional[float] = Field(None, alias='lambda', gt=0)
    jobs: Optional[Literal['pareto', 'exponential', 'deterministic']] = None
    x_m: Optional[float] = Field(None, gt=0)
    alpha: Optional[float] = Field(None, gt=1)
    rate: Optional[float] = Field(None, gt=0)
    size: Optional[float] = Field(None, gt=0)
    beta: Optional[float] = Field(None, gt=-1, le=1)
    mu: Optional[float] = None

    @model_validator(mode='after')
    def required_by_family(self):
        missing = []
        if self.family == 'cp':
            required = {'pareto': ['x_m', 'alpha'], 'exponential': ['rate'],
                        'deterministic': ['size']}.get(self.jobs, [])
            if self.lam is None:
                missing.append('lambda')
            if self.jobs is None:
                missing.append('jobs')
            missing += [name for name in required if getattr(self, name) is None]
        else:
            missing += [name for name in ('alpha', 'beta', 'mu') if getattr(self, name) is None]
            if self.alpha is not None and self.alpha > 2:
                raise ValueError(f"alpha estável deve estar em (1, 2] (recebido {self.alpha})")
        if missing:
            raise ValueError(f"campos obrigatórios ausentes: {', '.join(missing)}")
        return self

    def to_spec(self) -> ClassInputSpec:
        """Converte a seção na especificação de entrada correspondente."""
        if self.family == 'stable':
            return StableSpec(alpha=self.alpha, beta=self.beta, mu=self.mu)
        if self.jobs == 'pareto':
            jobs = ParetoJobs(x_m=self.x_m, alpha=self.alpha)
        elif self.jobs == 'exponential':
            jobs = ExponentialJobs(rate=self.rate)
        else:
            jobs = DeterministicJobs(size=self.size)
        return CompoundPoissonSpec(lam=self.lam, jobs=jobs)


class GridSection(_Section):
    levels: Optional[str] = None
    u_min: Optional[float] = Field(None, gt=0)
    u_max: Optional[float] = Field(None, gt=0)
    per_decade: int = Field(10, ge=1)

    @model_validator(mode='after')
    def levels_or_range(self):
        if self.levels is None and (self.u_min is None or self.u_max is None):
            raise ValueError("informe levels ou u_min e u_max")
        return self

    def to_grid(self) -> LevelGrid:
        if self.levels is not None:
            return parse_levels(self.levels)
        return LevelGrid.geometric(self.u_min, self.u_max, self.per_decade)


class RunSection(_Section):
    horizon: Optional[float] = Field(None, gt=0)
    target_level: Optional[float] = Field(None, gt=0)
    replications: int = Field(1, ge=1)
    seed: int = Field(0, ge=0, lt=2 ** 64)
    engine: Literal['event', 'discrete'] = 'event'
    h: float = Field(0.1, gt=0)
    burn_in: Optional[float] = Field(None, ge=0)
    batches: int = Field(32, ge=10)
    confidence: float = Field(0.95, gt=0, lt=1)
    samples: int = Field(1000, ge=1)
    eps: float = 0.0


class OutputSection(_Section):
    csv: Optional[str] = None
    trajectory: Optional[str] = None
    log_dir: Optional[str] = None


class ExperimentFile(_Section):
    system: SystemSection
    class1: ClassSection
    class2: Optional[ClassSection] = None
    grid: GridSection
    run: RunSection = RunSection()
    output: OutputSection = OutputSection()


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Experimento validado, pronto para execução.

    Atributos:
        cfg: Configuração GPS
        class1, class2: Entradas (class2 None para experimentos de uma classe)
        grid: Grade de níveis
        horizon: Horizonte de simulação
        target_level: Nível alvo (horizonte dos supremos)
        replications: Número de replicações
        seed: Semente base
        engine: 'event' ou 'discrete'
        h: Passo do motor discreto
        burn_in: Burn-in (None = padrão)
        batches: Lotes das médias em lotes
        confidence: Nível de confiança
        samples: Amostras por nível nos funcionais (tandem)
        eps: Perturbação de taxa do funcional tandem
        csv_path, trajectory_path, log_dir: Saídas
    """

    cfg: GpsConfig
    class1: ClassInputSpec
    class2: Optional[ClassInputSpec]
    grid: LevelGrid
    horizon: float
    target_level: float
    replications: int = 1
    seed: int = 0
    engine: str = 'event'
    h: float = 0.1
    burn_in: Optional[float] = None
    batches: int = 32
    confidence: float = 0.95
    samples: int = 1000
    eps: float = 0.0
    csv_path: Optional[str] = None
    trajectory_path: Optional[str] = None
    log_dir: Optional[str] = None

    def with_overrides(self, **overrides) -> 'ExperimentConfig':
        """Aplica sobrescritas da linha de comando (valores None são ignorados)."""
        values = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **values) if values else self

    def to_dict(self) -> dict:
        data = asdict(self)
        data['cfg'] = self.cfg.to_dict()
        data['class1'] = self.class1.to_dict()
        data['class2'] = self.class2.to_dict() if self.class2 is not None else None
        data['grid'] = list(self.grid.levels)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> 'ExperimentConfig':
        """
        Reconstrói o experimento a partir de to_dict() (ex: parâmetros de um manifesto).

        Raises:
            ConfigError: Chave ausente ou valor inválido
        """
        values = dict(data)
        try:
            values['cfg'] = GpsConfig.from_dict(values['cfg'])
            values['class1'] = class_input_from_dict(values['class1'])
            if values.get('class2') is not None:
                values['class2'] = class_input_from_dict(values['class2'])
            values['grid'] = LevelGrid.of(values['grid'])
            return cls(**values)
        except KeyError as exc:
            raise ConfigError("Parâmetros incompletos", [f"{exc.args[0]}: ausente"]) from exc
        except (GpsLabError, TypeError) as exc:
            raise ConfigError("Parâmetros inválidos", [str(exc)]) from exc


def parse_levels(text: str) -> LevelGrid:
    """Converte uma lista separada por vírgulas em LevelGrid."""
    try:
        values = [float(v) for v in text.split(',') if v.strip()]
    except ValueError as exc:
        raise ConfigError("Lista de níveis inválida", [f"grid.levels: {exc}"]) from exc
    try:
        return LevelGrid.of(values)
    except ParameterError as exc:
        raise ConfigError("Lista de níveis inválida", [f"grid.levels: {exc}"]) from exc


def _field_errors(exc: ValidationError) -> List[str]:
    errors = []
    for err in exc.errors():
        loc = '.'.join(str(part) for part in err['loc'])
        errors.append(f"{loc}: {err['msg']}")
    return errors


def _default_horizon(cfg: GpsConfig, spec1: ClassInputSpec, spec2: Optional[ClassInputSpec],
                     target: float) -> float:
    mu = mean_rate(spec1) + (mean_rate(spec2) if spec2 is not None else 0.0)
    if mu >= cfg.c:
        raise ConfigError("Sistema sem folga", ["run.horizon: obrigatório quando mu >= c"])
    return horizon_for_level(target, cfg.c, mu)


def _warn_on_boundary(cfg: GpsConfig, spec1: ClassInputSpec, spec2: Optional[ClassInputSpec]):
    if spec2 is None:
        return
    try:
        classify(cfg, summarize_inputs(spec1, spec2))
    except ScenarioError as exc:
        logger.warning("Parametrização não classificável ({}): {}", type(exc).__name__, exc)
    except ParameterError as exc:
        logger.debug("Classificação ignorada: {}", exc)


def parse_config(path: Union[str, Path]) -> ExperimentConfig:
    """
    Lê e valida um arquivo de experimento.

    Args:
        path: Caminho do arquivo INI

    Returns:
        ExperimentConfig com padrões preenchidos

    Raises:
        ConfigError: Arquivo ausente, sintaxe inválida ou campos inválidos
                     (field_errors lista cada problema)
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Arquivo de configuração não encontrado: {path}")

    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            parser.read_file(f)
    except configparser.Error as exc:
        raise ConfigError(f"Sintaxe inválida em {path}", [str(exc).splitlines()[0]]) from exc

    data = {section: dict(parser.items(section)) for section in parser.sections()}
    try:
        parsed = ExperimentFile.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"Configuração inválida em {path}", _field_errors(exc)) from exc

    try:
        cfg = GpsConfig(parsed.system.c, parsed.system.phi1, parsed.system.phi2)
        spec1 = parsed.class1.to_spec()
        spec2 = parsed.class2.to_spec() if parsed.class2 is not None else None
        grid = parsed.grid.to_grid()
    except ConfigError:
        raise
    except GpsLabError as exc:
        raise ConfigError(f"Configuração inválida em {path}", [str(exc)]) from exc

    target = parsed.run.target_level or grid.levels[-1]
    horizon = parsed.run.horizon or _default_horizon(cfg, spec1, spec2, target)
    _warn_on_boundary(cfg, spec1, spec2)

    return ExperimentConfig(
        cfg=cfg,
        class1=spec1,
        class2=spec2,
        grid=grid,
        horizon=horizon,
        target_level=target,
        replications=parsed.run.replications,
        seed=parsed.run.seed,
        engine=parsed.run.engine,
        h=parsed.run.h,
        burn_in=parsed.run.burn_in,
        batches=parsed.run.batches,
        confidence=parsed.run.confidence,
        samples=parsed.run.samples,
        eps=parsed.run.eps,
        csv_path=parsed.output.csv,
        trajectory_path=parsed.output.trajectory,
        log_dir=parsed.output.log_dir
    )
