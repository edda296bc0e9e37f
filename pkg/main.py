"""
Linha de Comando do Laboratório GPS.

Subcomandos:
    simulate   Simula o experimento e estima P(Q1 > u) contra f1(u)
    asymptote  Avalia todos os avaliadores assintóticos na grade
    tandem     Estima P(V^eps > u) por amostras do funcional tandem
    validate   Executa a suíte de aceitação (seletor: oracles, scenario1..4,
               stable, discretization, classifier, horizon, all)

Uso:
    python main.py simulate --config config/scenario1.ini --seed 7 --out results/s1.csv
    python main.py validate classifier

Códigos de saída: 0 sucesso, 1 critério reprovado ou erro inesperado, 2 erro de execução,
64 uso inválido. Erros são uma única linha "ERROR <Classe>: <mensagem>" em stderr.
"""

import argparse
import sys
from pathlib import Path

from loguru import logger

# Adicionar diretório raiz ao path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.estimation import format_decimal
from src.exceptions import GpsLabError, UsageError
from src.harness import (
    evaluate_asymptotes,
    format_ratio_table,
    parse_config,
    parse_levels,
    run_experiment,
    run_tandem,
    validate_suite,
)

EXIT_OK = 0
EXIT_FAILED_CRITERIA = 1
EXIT_ERROR = 2
EXIT_UNEXPECTED = 1
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """ArgumentParser que levanta UsageError em vez de encerrar o processo."""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='gps-lab', description="Laboratório GPS de caudas pesadas")
    parser.add_argument('--log-level', default='INFO',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    def experiment_flags(p, with_engine: bool = True):
        p.add_argument('--config', required=True, help="Arquivo INI do experimento")
        p.add_argument('--seed', type=int, help="Semente base (sobrescreve run.seed)")
        p.add_argument('--out', help="CSV de saída (sobrescreve output.csv)")
        p.add_argument('--levels', help="Níveis separados por vírgula (sobrescreve [grid])")
        p.add_argument('--replications', type=int, help="Replicações (no tandem: amostras)")
        if with_engine:
            p.add_argument('--engine', choices=['event', 'discrete'])

    experiment_flags(sub.add_parser('simulate', help="Simula e compara com f1(u)"))
    experiment_flags(sub.add_parser('asymptote', help="Avalia as assíntotas"), with_engine=False)
    experiment_flags(sub.add_parser('tandem', help="Cauda do funcional V"), with_engine=False)

    validate = sub.add_parser('validate', help="Suíte de aceitação")
    validate.add_argument('selector', nargs='?', default='all')
    validate.add_argument('--scale', type=float, default=1.0,
                          help="Fator sobre horizontes e amostras (1.0 = tamanho completo)")
    validate.add_argument('--out', help="Grava as linhas de critério neste arquivo")
    return parser


def _load(args, samples_from_replications: bool = False):
    config = parse_config(args.config)
    overrides = {
        'seed': args.seed,
        'csv_path': args.out,
        'grid': parse_levels(args.levels) if args.levels else None,
        'engine': getattr(args, 'engine', None),
    }
    if samples_from_replications:
        overrides['samples'] = args.replications
    else:
        overrides['replications'] = args.replications
    return config.with_overrides(**overrides)


def cmd_simulate(args) -> int:
    config = _load(args)
    rows, manifest = run_experiment(config, verbose=True)
    logger.info("Sementes: {} replicação(ões) a partir de {}", len(manifest.seeds), config.seed)
    return EXIT_OK


def cmd_asymptote(args) -> int:
    config = _load(args)
    table = evaluate_asymptotes(config)
    print(table.to_csv(index=False, float_format=format_decimal, lineterminator='\n'), end='')
    if config.csv_path:
        Path(config.csv_path).parent.mkdir(parents=True, exist_ok=True)
        table.to_csv(config.csv_path, index=False, float_format=format_decimal, na_rep='', lineterminator='\n')
    return EXIT_OK


def cmd_tandem(args) -> int:
    config = _load(args, samples_from_replications=True)
    rows, _ = run_tandem(config)
    print('\n'.join(format_ratio_table(rows)))
    return EXIT_OK


def cmd_validate(args) -> int:
    results = validate_suite(args.selector, args.scale)
    lines = [r.to_line() for r in results]
    print('\n'.join(lines))
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text('\n'.join(lines) + '\n', encoding='utf-8')
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED_CRITERIA


COMMANDS = {
    'simulate': cmd_simulate,
    'asymptote': cmd_asymptote,
    'tandem': cmd_tandem,
    'validate': cmd_validate,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logger.remove()
        logger.add(sys.stderr, level=args.log_level, format="{time:HH:mm:ss} | {level} | {message}")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"ERROR {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GpsLabError, OSError) as exc:
        message = ' '.join(str(exc).split())
        print(f"ERROR {type(exc).__name__}: {message}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:
        message = ' '.join(str(exc).split())
        print(f"ERROR {type(exc).__name__}: {message}", file=sys.stderr)
        return EXIT_UNEXPECTED


if __name__ == '__main__':
    sys.exit(main())
