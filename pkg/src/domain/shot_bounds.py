# =============================================================
# shot_bounds.py - Orçamento de Medições (Hoeffding)
# =============================================================
# Limites fechados de número de shots por janela:
# - resultado mais provável correto com erro <= ε1;
# - decisão de ambiguidade correta com erro <= ε2.
#
# DECISÃO: p1 = 4/π² (limite inferior do pico) por padrão, ou
# seja, orçamento de pior caso independente da fase desconhecida.
# =============================================================
import math
from typing import Optional

from src.domain.entities import NON_ADJACENT_BOUND, PEAK_PROBABILITY_BOUND, BoundParams
from src.domain.exceptions import InvalidArgumentError

DELTA_P_MIN = PEAK_PROBABILITY_BOUND - NON_ADJACENT_BOUND  # ≈ 0.36025


def _check_open_unit(name: str, value: float) -> None:
    if not 0.0 < value < 1.0:
        raise InvalidArgumentError(f"{name} deve estar em (0, 1) (recebido {value})")


def top_outcome_constant(delta_p_min: float = DELTA_P_MIN) -> float:
    """2 / ΔP_min² (≈ 15.41 com o default)."""
    return 2.0 / delta_p_min ** 2


def shots_for_top_outcome(m: int, epsilon1: float, params: Optional[BoundParams] = None) -> int:
    """
    N >= (2/ΔP_min²)·ln((2^m − 2)/ε1).

    Garante que nenhum dos 2^m − 2 resultados não adjacentes supera
    o pico, com probabilidade de erro total <= ε1.
    """
    if m < 2:
        raise InvalidArgumentError(f"m >= 2 é necessário: 2^{m} − 2 <= 0")
    _check_open_unit("epsilon1", epsilon1)
    delta_p_min = params.delta_p_min if params else DELTA_P_MIN
    bound = top_outcome_constant(delta_p_min) * math.log(((1 << m) - 2) / epsilon1)
    return max(1, math.ceil(bound))


def shots_for_ambiguity(
    epsilon: float,
    delta_R: float,
    p1: float = PEAK_PROBABILITY_BOUND,
    epsilon2: float = 0.01,
) -> int:
    """
    N >= ((1+ε)² / (2 p1² Δ_R²))·ln(1/ε2).

    Mesmo limite para detecção ambígua e não ambígua.
    """
    _check_open_unit("epsilon", epsilon)
    _check_open_unit("epsilon2", epsilon2)
    if delta_R <= 0.0:
        raise InvalidArgumentError(f"delta_R deve ser > 0 (recebido {delta_R})")
    if p1 <= 0.0:
        raise InvalidArgumentError(f"p1 deve ser > 0 (recebido {p1})")
    bound = (1.0 + epsilon) ** 2 / (2.0 * p1 ** 2 * delta_R ** 2) * math.log(1.0 / epsilon2)
    return max(1, math.ceil(bound))


def shots_from_params(m: int, params: BoundParams) -> int:
    """Orçamento que satisfaz os dois limites simultaneamente."""
    return max(
        shots_for_top_outcome(m, params.epsilon1, params),
        shots_for_ambiguity(params.epsilon, params.delta_R, params.p1, params.epsilon2),
    )


def pair_error_bound(n_shots: int, gap: float) -> float:
    """exp(−N·Δ²/2): chance de um par com gap Δ ser invertido."""
    if n_shots < 0:
        raise InvalidArgumentError(f"n_shots negativo: {n_shots}")
    if not 0.0 < gap <= 1.0:
        raise InvalidArgumentError(f"gap deve estar em (0, 1] (recebido {gap})")
    return math.exp(-n_shots * gap ** 2 / 2.0)


def union_error_bound(n_shots: int, m: int, delta_p_min: float = DELTA_P_MIN) -> float:
    """(2^m − 2)·exp(−N ΔP_min²/2), limitado a 1."""
    if m < 2:
        raise InvalidArgumentError("m >= 2 é necessário")
    return min(1.0, ((1 << m) - 2) * pair_error_bound(n_shots, delta_p_min))


def ambiguity_error_bound(
    n_shots: int,
    epsilon: float,
    delta_R: float,
    p1: float = PEAK_PROBABILITY_BOUND,
) -> float:
    """exp(−2N p1² Δ_R² / (1+ε)²)."""
    if n_shots < 0:
        raise InvalidArgumentError(f"n_shots negativo: {n_shots}")
    _check_open_unit("epsilon", epsilon)
    if delta_R <= 0.0 or p1 <= 0.0:
        raise InvalidArgumentError("delta_R e p1 devem ser > 0")
    return math.exp(-2.0 * n_shots * p1 ** 2 * delta_R ** 2 / (1.0 + epsilon) ** 2)
