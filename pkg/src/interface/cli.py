# =============================================================
# cli.py - Interface de Linha de Comando do Simulador
# =============================================================
# SUBCOMANDOS:
#   estimate      um caso (--phi ou --model) com --m
#   table1        as cinco linhas da tabela de exemplos (apelido: examples)
#   walkthrough   o caso φ = 0.8203125, m = [3,2,3]
#   grid          grid exaustivo I/2^n com infinite-shot
#   montecarlo    fases aleatórias
#   oracle-check  kernel de Dirichlet vs statevector
#   bounds        orçamento de shots (Hoeffding)
#   resources     tabela de recursos vs QPE padrão
#   perturb       verificação cruzada com U' = e^{2πiΔφ}U
#   circuits      descrição textual dos circuitos
#
# CÓDIGOS DE SAÍDA:
#   0 todas as verificações passaram
#   1 alguma verificação de reprodução falhou
#   2 erro de uso (flags, fase, modelo ou parâmetros inválidos)
#
# DECISÃO: o relatório sai em stdout; diagnósticos e a
# configuração efetiva (com a semente resolvida) vão para o logger.
# =============================================================
import argparse
import secrets
import sys
from typing import List, Optional

import pandas as pd
from loguru import logger
from pydantic import ValidationError

from src.application import harness
from src.config import get_settings
from src.domain import resources, shot_bounds
from src.domain.entities import Backend, BoundParams, EstimationConfig, Target
from src.domain.exceptions import AWQPEError
from src.domain.phases import parse_phase
from src.infrastructure import exporters
from src.infrastructure.model_loader import load_model
from src.infrastructure.observability import configure_logging, metrics

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


# =============================================================
# Tipos de argumento
# =============================================================
def m_list_type(text: str) -> List[int]:
    """'3,2,3' -> [3, 2, 3]."""
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"lista de inteiros inválida: {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("lista vazia")
    return values


def seed_type(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("semente deve caber em 64 bits sem sinal")
    return value


def format_type(text: str) -> str:
    return exporters.FORMAT_ALIASES.get(text, text)


def unit_interval_type(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"{text} fora de (0, 1)")
    return value


# =============================================================
# Parser
# =============================================================
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", type=format_type, choices=exporters.FORMATS, default="text",
        help="text | csv | structured-record (apelido: record)",
    )
    common.add_argument("--threads", type=int, default=None, help="Máximo de workers (default: MAX_WORKERS)")
    common.add_argument("--seed", type=seed_type, default=None, help="Semente mestre de 64 bits")
    common.add_argument("--log-level", default=None, help="Nível do logger (default: LOG_LEVEL)")
    common.add_argument("--save", metavar="NOME", default=None, help="Também grava NOME.csv (e NOME.jsonl) em OUTPUT_DIR")

    estimation = argparse.ArgumentParser(add_help=False)
    estimation.add_argument("--shots", type=int, default=None, help="Shots por janela")
    estimation.add_argument("--epsilon", type=unit_interval_type, default=None, help="Limiar de ambiguidade")
    estimation.add_argument(
        "--backend", choices=[b.value for b in Backend], default=None,
        help="default: kernel-sampling (grid: infinite-shot)",
    )
    estimation.add_argument("--random-tie-break", action="store_true", help="Desempate aleatório em top_two")

    parser = argparse.ArgumentParser(
        prog="run_awqpe.py",
        description="Estimação de fase quântica por janelas adaptativas (simulador)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", parents=[common, estimation], help="Estima uma fase")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--phi", help="decimal, racional, 0b..., pi/6, 1/sqrt2, sin(pi/12)")
    source.add_argument("--model", help="Arquivo de modelo denso (docs/model_file_format.md)")
    p.add_argument("--m", type=m_list_type, required=True, help="Bits por bloco, ex: 3,2,3")

    p = sub.add_parser(
        "table1", aliases=["examples"], parents=[common, estimation], help="Reproduz os cinco exemplos de referência"
    )
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--min-rate", type=float, default=0.95)

    p = sub.add_parser("walkthrough", parents=[common, estimation], help="Reproduz o caso φ = 0.8203125")
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--min-rate", type=float, default=0.99)

    p = sub.add_parser("grid", parents=[common, estimation], help="Grid exaustivo de fases diádicas")
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all-compositions", action="store_true", help="Todas as composições (default)")
    group.add_argument("--m", type=m_list_type, default=None, help="Uma composição específica")

    p = sub.add_parser("montecarlo", parents=[common, estimation], help="Campanha de fases aleatórias")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=m_list_type, required=True)
    p.add_argument("--min-rate", type=float, default=0.99)

    p = sub.add_parser("oracle-check", parents=[common], help="Kernel vs statevector")
    p.add_argument("--phases", type=int, default=100)
    p.add_argument("--m-max", type=int, default=6)
    p.add_argument("--k-max", type=int, default=10)
    p.add_argument("--tolerance", type=float, default=1e-10)

    p = sub.add_parser("bounds", parents=[common], help="Orçamento de shots")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--eps1", type=unit_interval_type, default=0.01)
    p.add_argument("--amb", action="store_true", help="Inclui o limite da decisão de ambiguidade")
    p.add_argument("--epsilon", type=unit_interval_type, default=0.9)
    p.add_argument("--delta-r", type=unit_interval_type, default=0.05)
    p.add_argument("--eps2", type=unit_interval_type, default=0.01)
    p.add_argument("--validate", action="store_true", help="Valida empiricamente o limite do pico")
    p.add_argument("--trials", type=int, default=10_000)

    p = sub.add_parser("resources", parents=[common], help="Tabela de recursos")
    p.add_argument("--m", type=m_list_type, required=True)

    p = sub.add_parser("perturb", parents=[common, estimation], help="Verificação com U' = e^{2πiΔφ}U")
    p.add_argument("--phi", required=True)
    p.add_argument("--dphi", default=None, help="Deslocamento Δφ (default: 3/2^n)")
    p.add_argument("--m", type=m_list_type, required=True)

    p = sub.add_parser("circuits", parents=[common], help="Descrição textual dos circuitos")
    p.add_argument("--m", type=m_list_type, required=True)
    p.add_argument("--n-targets", type=int, default=1)

    return parser


# =============================================================
# Helpers
# =============================================================
def resolve_seed(args: argparse.Namespace) -> int:
    """Flag > DEFAULT_SEED > entropia do SO."""
    if args.seed is not None:
        return args.seed
    default = get_settings().DEFAULT_SEED
    return default if default is not None else secrets.randbits(64)


def build_config(
    args: argparse.Namespace,
    m_list: List[int],
    seed: int,
    default_backend: Backend = Backend.KERNEL_SAMPLING,
    announce: bool = True,
) -> EstimationConfig:
    settings = get_settings()
    cfg = EstimationConfig(
        m_list=m_list,
        shots=args.shots if args.shots is not None else settings.DEFAULT_SHOTS,
        epsilon=args.epsilon if args.epsilon is not None else settings.DEFAULT_EPSILON,
        seed=seed,
        backend=Backend(args.backend) if args.backend else default_backend,
        random_tie_break=args.random_tie_break or settings.RANDOM_TIE_BREAK,
        threads=args.threads or settings.MAX_WORKERS,
    )
    if announce:
        logger.info(
            f"⚙️ config: m={cfg.m_list} shots={cfg.shots} epsilon={cfg.epsilon} "
            f"backend={cfg.backend.value} threads={cfg.threads} resolved seed={cfg.seed}"
        )
    return cfg


def _write(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_cases(reports, fmt: str) -> None:
    if fmt == exporters.RECORD_FORMAT:
        _write(exporters.render_records(reports))
    else:
        _write(exporters.render(exporters.cases_to_frame(reports), fmt))


def _status(passed: bool) -> int:
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def _save(args: argparse.Namespace, df: pd.DataFrame, reports=None) -> None:
    """Com --save, grava o relatório também em OUTPUT_DIR."""
    if not args.save:
        return
    exporter = exporters.ReportExporter()
    exporter.exportar_csv(df, f"{args.save}.csv")
    if reports:
        exporter.exportar_records(reports, f"{args.save}.jsonl")


# =============================================================
# Subcomandos
# =============================================================
def cmd_estimate(args: argparse.Namespace) -> int:
    settings = get_settings()
    seed = resolve_seed(args)
    cfg = build_config(args, args.m, seed)
    precision = cfg.n_total + settings.GUARD_BITS
    target: Target = load_model(args.model, precision) if args.model else parse_phase(args.phi, precision)
    report = harness.run_case(target, cfg)
    _emit_cases([report], args.format)
    _save(args, exporters.cases_to_frame([report]), [report])
    if args.format == "text":
        _write(f"resolved seed: {seed}")
        for index, top in enumerate(report.window_top, start=1):
            _write(f"window {index}: " + ", ".join(f"('{bits}', {count})" for bits, count in top))
    return _status(report.success)


def _cmd_reproduction(args: argparse.Namespace, rows) -> int:
    if args.format == exporters.RECORD_FORMAT:
        _write(exporters.render_records([row.sample for row in rows]))
    else:
        _write(exporters.render(exporters.reproduction_to_frame(rows), args.format))
    _save(args, exporters.reproduction_to_frame(rows), [row.sample for row in rows])
    return _status(all(row.passed for row in rows))


def cmd_examples(args: argparse.Namespace) -> int:
    # cada caso tem sua própria alocação; o log sai por caso no harness
    cfg = build_config(args, harness.REFERENCE_CASES[0].m_list, resolve_seed(args), announce=False)
    return _cmd_reproduction(args, harness.reproduce_examples(args.repetitions, cfg, args.min_rate))


def cmd_walkthrough(args: argparse.Namespace) -> int:
    cfg = build_config(args, harness.WALKTHROUGH_CASE.m_list, resolve_seed(args))
    return _cmd_reproduction(args, [harness.reproduce_walkthrough(args.repetitions, cfg, args.min_rate)])


def _emit_campaign(summary, fmt: str) -> None:
    if fmt == exporters.RECORD_FORMAT:
        if summary.cases:
            _write(exporters.render_records(summary.cases))
        return
    _write(exporters.render(exporters.campaign_to_frame(summary), fmt))
    if summary.per_composition and fmt == "text":
        _write(exporters.render(exporters.compositions_to_frame(summary), fmt))
    if summary.failures and fmt == "text":
        _write(f"failures ({len(summary.failures)}):")
        _write(exporters.render(exporters.cases_to_frame(summary.failures), fmt))


def cmd_grid(args: argparse.Namespace) -> int:
    seed = resolve_seed(args)
    cfg = build_config(args, args.m or [args.n], seed, default_backend=Backend.INFINITE_SHOT)
    summary = harness.exhaustive_grid(
        args.n,
        m_lists=[args.m] if args.m else None,
        backend=cfg.backend,
        shots=cfg.shots,
        epsilon=cfg.epsilon,
        seed=seed,
        threads=cfg.threads,
    )
    _emit_campaign(summary, args.format)
    _save(args, exporters.campaign_to_frame(summary), summary.cases)
    return _status(summary.plain_successes == summary.plain_trials)


def cmd_montecarlo(args: argparse.Namespace) -> int:
    cfg = build_config(args, args.m, resolve_seed(args))
    summary = harness.monte_carlo(args.trials, args.n, args.m, cfg)
    _emit_campaign(summary, args.format)
    _save(args, exporters.campaign_to_frame(summary), summary.cases)
    return _status(summary.success_rate >= args.min_rate)


def cmd_oracle_check(args: argparse.Namespace) -> int:
    seed = resolve_seed(args)
    logger.info(
        f"⚙️ oracle-check: phases={args.phases} m_max={args.m_max} k_max={args.k_max} "
        f"tolerance={args.tolerance} resolved seed={seed}"
    )
    summary = harness.oracle_check(args.phases, args.m_max, args.k_max, seed, args.tolerance)
    if args.format == exporters.RECORD_FORMAT:
        _write(summary.model_dump_json())
    else:
        _write(exporters.render(pd.DataFrame([summary.model_dump()]), args.format))
    return _status(summary.passed)


def cmd_bounds(args: argparse.Namespace) -> int:
    params = BoundParams(epsilon1=args.eps1, epsilon2=args.eps2, delta_R=args.delta_r, epsilon=args.epsilon)
    rows = [
        {"Bound": "2/ΔP_min²", "Value": round(shot_bounds.top_outcome_constant(params.delta_p_min), 4)},
        {"Bound": f"N top outcome (m={args.m}, ε1={args.eps1})",
         "Value": shot_bounds.shots_for_top_outcome(args.m, args.eps1, params)},
    ]
    if args.amb:
        rows.append({
            "Bound": f"N ambiguity (ε={args.epsilon}, Δ_R={args.delta_r}, ε2={args.eps2})",
            "Value": shot_bounds.shots_for_ambiguity(args.epsilon, args.delta_r, params.p1, args.eps2),
        })
        rows.append({"Bound": "N combined", "Value": shot_bounds.shots_from_params(args.m, params)})

    passed = True
    if args.validate:
        seed = resolve_seed(args)
        logger.info(f"⚙️ bounds --validate: m={args.m} eps1={args.eps1} trials={args.trials} resolved seed={seed}")
        validation = harness.validate_top_outcome_bound(args.m, args.eps1, args.trials, seed)
        rows.append({"Bound": f"empirical miss rate ({validation.trials} trials)", "Value": validation.rate})
        passed = validation.passed

    df = pd.DataFrame(rows)
    if args.format == exporters.RECORD_FORMAT:
        _write(df.to_json(orient="records", lines=True, force_ascii=False))
    else:
        _write(exporters.render(df, args.format))
    return _status(passed)


def cmd_resources(args: argparse.Namespace) -> int:
    report = resources.report(args.m)
    if args.format == exporters.RECORD_FORMAT:
        _write(report.model_dump_json())
    else:
        _write(exporters.render(exporters.resources_to_frame(report), args.format))
    _save(args, exporters.resources_to_frame(report))
    return _status(report.total_u_applications == report.standard.u_applications)


def cmd_perturb(args: argparse.Namespace) -> int:
    settings = get_settings()
    cfg = build_config(args, args.m, resolve_seed(args))
    precision = cfg.n_total + settings.GUARD_BITS
    phase = parse_phase(args.phi, precision)
    delta = parse_phase(args.dphi, precision) if args.dphi is not None else None
    verdict = harness.perturbation_check(phase, delta, cfg)
    if args.format == exporters.RECORD_FORMAT:
        _write(verdict.model_dump_json())
    else:
        _emit_cases([verdict.first, verdict.second], args.format)
        if args.format == "text":
            _write(
                f"Δφ={verdict.delta_phi} observed={verdict.observed_shift} "
                f"distance={verdict.distance:.3e} tolerance={verdict.tolerance:.3e} "
                f"{'PASS' if verdict.passed else 'FAIL'}"
            )
    return _status(verdict.passed)


def cmd_circuits(args: argparse.Namespace) -> int:
    _write(resources.circuit_summary(args.m, args.n_targets))
    return EXIT_OK


COMMANDS = {
    "estimate": cmd_estimate,
    "table1": cmd_examples,
    "examples": cmd_examples,
    "walkthrough": cmd_walkthrough,
    "grid": cmd_grid,
    "montecarlo": cmd_montecarlo,
    "oracle-check": cmd_oracle_check,
    "bounds": cmd_bounds,
    "resources": cmd_resources,
    "perturb": cmd_perturb,
    "circuits": cmd_circuits,
}


def dispatch(argv: Optional[List[str]] = None) -> int:
    """Interpreta argv, executa o subcomando e devolve o código de saída."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    settings = get_settings()
    configure_logging(args.log_level or settings.LOG_LEVEL, settings.LOG_FILE)
    settings.warn_on_risky_settings()

    try:
        status = COMMANDS[args.command](args)
    except (AWQPEError, ValidationError) as exc:
        logger.error(f"❌ {type(exc).__name__}: {exc}")
        return EXIT_USAGE
    logger.debug(f"métricas: {metrics.snapshot()}")
    return status
