# =============================================================
# harness.py - Campanhas de Experimento
# =============================================================
# Casos de uso que ligam estimador -> resolução -> predicado de
# sucesso (recuperar a melhor aproximação de n_total bits):
#
# - run_case              um caso completo
# - exhaustive_grid       todas as fases I/2^n, todas as composições
# - monte_carlo           fases reais aleatórias, sementes por caso
# - perturbation_check    φ vs φ + Δφ
# - oracle_check          kernel vs statevector
# - validate_top_outcome_bound
# - reproduce_examples / reproduce_walkthrough
#
# DETERMINISMO:
# Cada caso recebe semente derivada de (semente mestre, índice), e
# os resultados são reunidos em ordem. O registro estruturado não
# contém tempo de parede.
# =============================================================
import time
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict

from src.application.estimator import block_seed, estimate_raw
from src.application.interfaces import IWindowBackend
from src.application.reports import (
    BoundValidation,
    CampaignSummary,
    CaseReport,
    OracleCheckSummary,
    PerturbationVerdict,
    ReproductionRow,
    wilson_interval,
)
from src.domain.binary_math import best_approx_bits, window_fraction
from src.domain.entities import (
    Backend,
    DenseModel,
    DiagonalModel,
    EstimationConfig,
    PhaseValue,
    Target,
    exact_decimal_str,
    target_phase,
)
from src.domain.exceptions import InvalidArgumentError
from src.domain.phases import parse_phase
from src.domain.resolution import resolve
from src.domain.resources import compositions
from src.domain.shot_bounds import shots_for_top_outcome
from src.domain.window_distribution import dirichlet_pmf, peak_outcomes, sample, top_two
from src.infrastructure.observability import log_experiment_event, log_performance_warning, metrics

T = TypeVar("T")

DEFAULT_GUARD_BITS = 64
_CAMPAIGN_SALT = 0xA5A5_5A5A_C3C3_3C3C


# =============================================================
# CASOS DE REFERÊNCIA
# =============================================================
class ReferenceCase(BaseModel):
    """Entrada e resultados publicados de um exemplo numérico."""
    model_config = ConfigDict(frozen=True)

    label: str
    phase: str
    m_list: List[int]
    raw_bits: Optional[str] = None
    final_bits: str
    final_decimal: str


REFERENCE_CASES: List[ReferenceCase] = [
    ReferenceCase(label="case 1", phase="0.3", m_list=[2, 2],
                  raw_bits="0101", final_bits="0101", final_decimal="0.3125"),
    ReferenceCase(label="case 2", phase="pi/6", m_list=[3, 2, 2, 3],
                  raw_bits="1000111000", final_bits="1000011000", final_decimal="0.5234375"),
    ReferenceCase(label="case 3", phase="0.671875", m_list=[4, 4],
                  raw_bits="10111100", final_bits="10101100", final_decimal="0.671875"),
    ReferenceCase(label="case 4", phase="1/sqrt2", m_list=[3] * 10,
                  raw_bits="110101010000010100110011010101",
                  final_bits="101101010000010011110011001101", final_decimal="0.7071067811921239"),
    ReferenceCase(label="case 5", phase="sin(pi/12)", m_list=[5, 6, 7, 4],
                  raw_bits="0100001001000010001110", final_bits="0100001001000001111110",
                  final_decimal="0.2588191032409668"),
]

WALKTHROUGH_CASE = ReferenceCase(
    label="walkthrough", phase="0.8203125", m_list=[3, 2, 3],
    raw_bits="11110010", final_bits="11010010", final_decimal="0.8203125",
)


# =============================================================
# HELPERS
# =============================================================
def case_seed(master_seed: int, index: int) -> int:
    """Semente de 64 bits do caso `index` de uma campanha."""
    return block_seed(master_seed ^ _CAMPAIGN_SALT, index)


def phase_precision(m_list: Sequence[int], guard_bits: int = DEFAULT_GUARD_BITS) -> int:
    return sum(m_list) + guard_bits


def perturb_target(target: Target, delta_phi: PhaseValue) -> Target:
    """U' = e^{2πiΔφ}·U: mesma base de autoestados, fase deslocada."""
    shifted = target_phase(target).add(delta_phi)
    if isinstance(target, PhaseValue):
        return shifted
    if isinstance(target, DiagonalModel):
        return DiagonalModel(eigenphase=shifted)
    factor = np.exp(2j * np.pi * float(delta_phi))
    return DenseModel(matrix=target.matrix * factor, eigenstate=target.eigenstate, eigenphase=shifted)


def suggest_perturbation(n_total: int, precision: Optional[int] = None) -> PhaseValue:
    """Δφ = 3/2^n: desloca o chunk especial sem criar outro empate."""
    precision = precision or n_total + DEFAULT_GUARD_BITS
    return PhaseValue.from_fraction(Fraction(3, 1 << n_total), precision)


def is_tie_case(phase: PhaseValue, m_list: Sequence[int]) -> bool:
    """Alguma janela i >= 2 vê fração exatamente 0.5."""
    half = Fraction(1, 2)
    k = 0
    for index, m in enumerate(m_list):
        if index > 0 and window_fraction(phase, k).to_fraction() == half:
            return True
        k += m
    return False


def _parallel_map(fn: Callable[[int], T], items: Iterable[int], threads: int) -> List[T]:
    """Map em ordem; com threads > 1 usa ThreadPoolExecutor."""
    items = list(items)
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(i) for i in items]


def _target_kind(target: Target) -> str:
    return "phase" if isinstance(target, PhaseValue) else target.kind


# =============================================================
# CASO ÚNICO
# =============================================================
def run_case(target: Target, cfg: EstimationConfig, backend: Optional[IWindowBackend] = None) -> CaseReport:
    """Estimador + resolução + predicado de sucesso."""
    phase = target_phase(target)
    n_total = cfg.n_total
    raw = estimate_raw(target, cfg, backend)
    resolved = resolve(raw, cfg.m_list)
    expected = best_approx_bits(phase, n_total)
    success = resolved.est_bits == expected

    report = CaseReport(
        phi_decimal=phase.decimal_str(),
        phi_bits=format(phase.with_precision(n_total).numerator, f"0{n_total}b"),
        expected_bits=expected.bits,
        target=_target_kind(target),
        m_list=list(cfg.m_list),
        shots=cfg.shots,
        epsilon=cfg.epsilon,
        seed=cfg.seed,
        backend=cfg.backend.value,
        raw_bits=raw.raw_bits.bits,
        flags=raw.flags,
        last_idx=resolved.last_idx,
        est_bits=resolved.est_bits.bits,
        est_decimal=resolved.value.decimal_str(),
        success=success,
        tie_case=is_tie_case(phase, cfg.m_list),
        window_top=[
            [(format(j, f"0{w.width}b"), c) for j, c in w.counts.top(5)] for w in raw.windows
        ],
    )
    metrics.record_case(success)
    if not success:
        logger.debug(f"caso falhou: φ={report.phi_decimal} est={report.est_bits} esperado={expected.bits}")
    return report


def _summarize(label: str, reports: List[CaseReport], seed: Optional[int], started: float) -> CampaignSummary:
    successes = sum(r.success for r in reports)
    ties = [r for r in reports if r.tie_case]
    low, high = wilson_interval(successes, len(reports))
    ordered = sorted(reports, key=lambda r: (r.phi_bits, r.phi_decimal, r.m_list))
    failures = [r for r in ordered if not r.success]
    summary = CampaignSummary(
        label=label,
        trials=len(reports),
        successes=successes,
        success_rate=successes / len(reports) if reports else 0.0,
        ci_low=low,
        ci_high=high,
        tie_cases=len(ties),
        tie_successes=sum(r.success for r in ties),
        failures=failures,
        cases=ordered,
        seed=seed,
        wall_time_s=time.perf_counter() - started,
    )
    log_experiment_event(
        "campaign_finished", label=label, trials=summary.trials,
        successes=summary.successes, ties=summary.tie_cases,
    )
    return summary


# =============================================================
# CAMPANHAS
# =============================================================
class _GridChunk(BaseModel):
    """Lote de numeradores de uma composição (unidade de trabalho do grid)."""
    model_config = ConfigDict(frozen=True)

    n: int
    m_list: List[int]
    numerators: List[int]
    backend: Backend
    shots: int
    epsilon: float
    seed: int


def _run_grid_chunk(chunk: _GridChunk) -> List[CaseReport]:
    """Executa um lote do grid; roda no processo pai ou num worker."""
    from src.infrastructure.backends import get_backend

    # uma instância por lote (backends não guardam estado)
    window_backend = get_backend(chunk.backend)
    precision = chunk.n + DEFAULT_GUARD_BITS
    reports = []
    for numerator in chunk.numerators:
        cfg = EstimationConfig(
            m_list=chunk.m_list, shots=chunk.shots, epsilon=chunk.epsilon,
            seed=case_seed(chunk.seed, numerator), backend=chunk.backend,
        )
        phase = PhaseValue(numerator=numerator, precision=chunk.n).with_precision(precision)
        reports.append(run_case(phase, cfg, window_backend))
    return reports


def exhaustive_grid(
    n: int,
    m_lists: Optional[Sequence[Sequence[int]]] = None,
    backend: Backend = Backend.INFINITE_SHOT,
    shots: int = 10240,
    epsilon: float = 0.9,
    seed: int = 0,
    threads: int = 1,
) -> CampaignSummary:
    """
    Todas as fases I/2^n para cada composição de n (partes >= 2).

    Casos com fração de janela exatamente 0.5 vão para o balde de
    empates e são contados à parte no resumo.

    Com threads > 1 os lotes vão para um ProcessPoolExecutor; a ordem
    dos resultados segue a dos lotes, então o resumo não depende de
    `threads`.
    """
    if not 2 <= n <= 14:
        raise InvalidArgumentError(f"grid exaustivo suporta 2 <= n <= 14 (recebido {n})")
    m_lists = [list(m) for m in m_lists] if m_lists is not None else list(compositions(n))
    for m_list in m_lists:
        if sum(m_list) != n or any(m < 2 for m in m_list):
            raise InvalidArgumentError(f"composição inválida para n={n}: {m_list}")

    started = time.perf_counter()
    size = 1 << n
    step = max(1, size // (4 * threads)) if threads > 1 else size
    chunks = [
        _GridChunk(
            n=n, m_list=m_list, numerators=list(range(start, min(start + step, size))),
            backend=backend, shots=shots, epsilon=epsilon, seed=seed,
        )
        for m_list in m_lists
        for start in range(0, size, step)
    ]

    if threads > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            batches = list(pool.map(_run_grid_chunk, chunks))
        # métricas dos workers ficam nos processos filhos
        for batch in batches:
            for report in batch:
                metrics.record_case(report.success)
    else:
        batches = [_run_grid_chunk(chunk) for chunk in chunks]

    reports: List[CaseReport] = []
    per_composition = {}
    for chunk, batch in zip(chunks, batches):
        key = ",".join(map(str, chunk.m_list))
        cases, successes = per_composition.get(key, (0, 0))
        per_composition[key] = (cases + len(batch), successes + sum(r.success for r in batch))
        reports.extend(batch)

    summary = _summarize(f"grid n={n}", reports, seed, started)
    summary.per_composition = per_composition
    log_performance_warning(f"grid n={n}", summary.wall_time_s * 1000, 300_000)
    return summary


def random_phase(seed: int, precision: int) -> PhaseValue:
    """Fase uniforme com `precision` bits a partir de bytes do PCG64."""
    rng = np.random.default_rng(seed)
    n_bytes = (precision + 7) // 8
    value = int.from_bytes(rng.bytes(n_bytes), "big") >> (8 * n_bytes - precision)
    return PhaseValue(numerator=value, precision=precision)


def monte_carlo(trials: int, n: int, m_list: Sequence[int], cfg: EstimationConfig) -> CampaignSummary:
    """
    `trials` fases reais aleatórias (precisão n + guard bits).

    O caso t usa semente case_seed(cfg.seed, t) tanto para a fase
    quanto para a estimação; cada falha é reproduzível a partir dela.
    """
    if trials < 1:
        raise InvalidArgumentError("trials deve ser >= 1")
    if sum(m_list) != n:
        raise InvalidArgumentError(f"Σ m_list = {sum(m_list)} difere de n = {n}")

    started = time.perf_counter()
    precision = phase_precision(m_list)

    def one(t: int) -> CaseReport:
        seed = case_seed(cfg.seed, t)
        case_cfg = cfg.model_copy(update={"m_list": list(m_list), "seed": seed, "threads": 1})
        return run_case(random_phase(seed, precision), case_cfg)

    reports = _parallel_map(one, range(trials), cfg.threads)
    return _summarize(f"montecarlo n={n}", reports, cfg.seed, started)


def perturbation_check(
    target: Target,
    delta_phi: Optional[PhaseValue],
    cfg: EstimationConfig,
    backend: Optional[IWindowBackend] = None,
) -> PerturbationVerdict:
    """
    Estima φ e φ + Δφ; passa se (φ'_est − φ_est) estiver a no
    máximo 2^(−n+1) de Δφ no círculo.

    Sem `delta_phi`, usa 3/2^n (sugerido quando o primeiro caso
    termina com chunk especial).
    """
    n_total = cfg.n_total
    first = run_case(target, cfg, backend)
    if delta_phi is None:
        delta_phi = suggest_perturbation(n_total, target_phase(target).precision)
        if first.last_idx is not None:
            logger.info(f"🔍 chunk especial no bloco {first.last_idx}: Δφ = 3/2^{n_total}")

    shifted = perturb_target(target, delta_phi)
    second_cfg = cfg.model_copy(update={"seed": case_seed(cfg.seed, 1)})
    second = run_case(shifted, second_cfg, backend)

    observed = (Fraction(int(second.est_bits, 2) - int(first.est_bits, 2), 1 << n_total)) % 1
    diff = abs(observed - delta_phi.to_fraction())
    distance = min(diff, 1 - diff)
    tolerance = Fraction(2, 1 << n_total)
    return PerturbationVerdict(
        phi_decimal=first.phi_decimal,
        delta_phi=delta_phi.decimal_str(),
        m_list=list(cfg.m_list),
        first=first,
        second=second,
        observed_shift=exact_decimal_str(observed),
        distance=float(distance),
        tolerance=float(tolerance),
        passed=distance <= tolerance,
    )


def oracle_check(
    n_phases: int = 100,
    m_max: int = 6,
    k_max: int = 10,
    seed: int = 0,
    tolerance: float = 1e-10,
) -> OracleCheckSummary:
    """Distância máxima entre kernel e statevector (modelo diagonal)."""
    from src.infrastructure.statevector import window_distribution_exact

    precision = m_max + k_max + DEFAULT_GUARD_BITS
    worst = (0.0, "0.0", 2, 0)
    comparisons = 0
    for t in range(n_phases):
        phase = random_phase(case_seed(seed, t), precision)
        model = DiagonalModel(eigenphase=phase)
        for m in range(2, m_max + 1):
            for k in range(k_max + 1):
                kernel = dirichlet_pmf(window_fraction(phase, k), m)
                exact = window_distribution_exact(model, m, k)
                distance = kernel.max_distance(exact)
                comparisons += 1
                if distance > worst[0]:
                    worst = (distance, phase.decimal_str(), m, k)
    log_experiment_event("oracle_check", comparisons=comparisons, max_distance=f"{worst[0]:.3e}")
    return OracleCheckSummary(
        comparisons=comparisons,
        max_distance=worst[0],
        worst_phi=worst[1],
        worst_m=worst[2],
        worst_k=worst[3],
        tolerance=tolerance,
        passed=worst[0] <= tolerance,
        seed=seed,
    )


def validate_top_outcome_bound(
    m: int,
    epsilon1: float = 0.01,
    trials: int = 10_000,
    seed: int = 0,
) -> BoundValidation:
    """
    Amostra o kernel com N = shots_for_top_outcome(m, ε1) shots e
    mede a taxa de t1 fora de {T1, T2}.
    """
    shots = shots_for_top_outcome(m, epsilon1)
    precision = m + DEFAULT_GUARD_BITS
    misses = 0
    for t in range(trials):
        trial_seed = case_seed(seed, t)
        delta = random_phase(trial_seed, precision)
        counts = sample(dirichlet_pmf(delta, m), shots, trial_seed)
        t1, _ = top_two(counts)
        if t1 not in peak_outcomes(delta, m):
            misses += 1
    rate = misses / trials
    log_experiment_event("bound_validation", m=m, shots=shots, misses=misses, trials=trials)
    return BoundValidation(
        m=m, epsilon1=epsilon1, shots=shots, trials=trials,
        misses=misses, rate=rate, passed=rate <= epsilon1, seed=seed,
    )


# =============================================================
# REPRODUÇÃO DOS EXEMPLOS NUMÉRICOS
# =============================================================
def _reproduce(
    case: ReferenceCase,
    repetitions: int,
    cfg: EstimationConfig,
    min_rate: float,
    check_raw: bool,
) -> ReproductionRow:
    phase = parse_phase(case.phase, phase_precision(case.m_list))
    logger.info(
        f"▶️ {case.label}: m={case.m_list} shots={cfg.shots} epsilon={cfg.epsilon} "
        f"backend={cfg.backend.value} resolved seed={cfg.seed}"
    )

    def one(r: int) -> CaseReport:
        rep_cfg = cfg.model_copy(update={"m_list": case.m_list, "seed": case_seed(cfg.seed, r), "threads": 1})
        return run_case(phase, rep_cfg)

    reports = _parallel_map(one, range(repetitions), cfg.threads)
    passes = sum(
        r.est_bits == case.final_bits and (not check_raw or r.raw_bits == case.raw_bits)
        for r in reports
    )
    row = ReproductionRow(
        label=case.label,
        phase=case.phase,
        m_list=case.m_list,
        expected_raw=case.raw_bits,
        expected_final=case.final_bits,
        expected_decimal=case.final_decimal,
        repetitions=repetitions,
        passes=passes,
        min_rate=min_rate,
        passed=passes >= min_rate * repetitions,
        sample=reports[0],
    )
    log_experiment_event("reproduction", label=case.label, passes=passes, repetitions=repetitions)
    return row


def reproduce_examples(repetitions: int, cfg: EstimationConfig, min_rate: float = 0.95) -> List[ReproductionRow]:
    """As cinco linhas da tabela de exemplos (critério: bits finais)."""
    return [_reproduce(case, repetitions, cfg, min_rate, check_raw=False) for case in REFERENCE_CASES]


def reproduce_walkthrough(repetitions: int, cfg: EstimationConfig, min_rate: float = 0.99) -> ReproductionRow:
    """φ = 0.8203125, m = [3,2,3]: bruto '11110010' e final '11010010'."""
    return _reproduce(WALKTHROUGH_CASE, repetitions, cfg, min_rate, check_raw=True)
