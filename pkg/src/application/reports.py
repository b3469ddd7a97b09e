# =============================================================
# reports.py - Schemas dos Relatórios de Experimento
# =============================================================
# Modelos Pydantic produzidos pelo harness e serializados pelos
# exportadores (CSV, texto alinhado, JSON lines).
#
# REGRA: o conjunto de campos de CaseReport só cresce (append-only);
# consumidores de JSON lines dependem dele.
# =============================================================
import math
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


def wilson_interval(successes: int, trials: int, z: float = 1.96) -> Tuple[float, float]:
    """Intervalo de Wilson (95% por padrão) para uma taxa de sucesso."""
    if trials == 0:
        return 0.0, 1.0
    p = successes / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    low = 0.0 if successes == 0 else max(0.0, center - half)
    high = 1.0 if successes == trials else min(1.0, center + half)
    return low, high


class CaseReport(BaseModel):
    """Um caso de estimação completo (estimação + resolução)."""
    model_config = ConfigDict(frozen=True)

    phi_decimal: str = Field(..., description="Fase verdadeira em decimal exato")
    phi_bits: str = Field(..., description="Fase truncada em n_total bits")
    expected_bits: str = Field(..., description="Melhor aproximação de n_total bits")
    target: str = Field(default="phase", description="phase | diagonal | dense")
    m_list: List[int]
    shots: int
    epsilon: float
    seed: int
    backend: str
    raw_bits: str
    flags: List[bool]
    last_idx: Optional[int] = None
    est_bits: str
    est_decimal: str
    success: bool
    tie_case: bool = Field(default=False, description="Alguma fração de janela k_i (i >= 2) vale 0.5")
    window_top: List[List[Tuple[str, int]]] = Field(default_factory=list, description="Top-5 por janela")


class CampaignSummary(BaseModel):
    """Agregado de uma campanha (grid exaustivo ou Monte Carlo)."""

    label: str
    trials: int = Field(..., ge=0)
    successes: int = Field(..., ge=0)
    success_rate: float
    ci_low: float
    ci_high: float
    tie_cases: int = 0
    tie_successes: int = 0
    failures: List[CaseReport] = Field(default_factory=list)
    cases: List[CaseReport] = Field(
        default_factory=list, exclude=True, description="Todos os casos, em ordem determinística"
    )
    per_composition: Dict[str, Tuple[int, int]] = Field(
        default_factory=dict, description="composição -> (casos, sucessos)"
    )
    seed: Optional[int] = None
    wall_time_s: float = 0.0

    @property
    def plain_trials(self) -> int:
        return self.trials - self.tie_cases

    @property
    def plain_successes(self) -> int:
        return self.successes - self.tie_successes

    @property
    def plain_failures(self) -> List[CaseReport]:
        return [f for f in self.failures if not f.tie_case]


class PerturbationVerdict(BaseModel):
    """Verificação cruzada com U' = e^{2πiΔφ}U."""
    model_config = ConfigDict(frozen=True)

    phi_decimal: str
    delta_phi: str
    m_list: List[int]
    first: CaseReport
    second: CaseReport
    observed_shift: str = Field(..., description="(φ'_est − φ_est) mod 1")
    distance: float = Field(..., description="Distância no círculo até Δφ")
    tolerance: float
    passed: bool


class OracleCheckSummary(BaseModel):
    """Equivalência kernel de Dirichlet vs statevector."""
    model_config = ConfigDict(frozen=True)

    comparisons: int
    max_distance: float
    worst_phi: str
    worst_m: int
    worst_k: int
    tolerance: float = 1e-10
    passed: bool
    seed: Optional[int] = None


class BoundValidation(BaseModel):
    """Taxa empírica de t1 fora de {T1, T2} no orçamento de shots."""
    model_config = ConfigDict(frozen=True)

    m: int
    epsilon1: float
    shots: int
    trials: int
    misses: int
    rate: float
    passed: bool
    seed: Optional[int] = None


class ReproductionRow(BaseModel):
    """Uma linha da tabela de exemplos numéricos reproduzida N vezes."""
    model_config = ConfigDict(frozen=True)

    label: str
    phase: str
    m_list: List[int]
    expected_raw: Optional[str] = None
    expected_final: str
    expected_decimal: str
    repetitions: int
    passes: int
    min_rate: float
    passed: bool
    sample: CaseReport
