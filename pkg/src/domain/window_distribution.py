# =============================================================
# window_distribution.py - Estatística de Medição de uma Janela
# =============================================================
# Distribuição exata dos resultados de uma janela de m qubits
# (kernel de Dirichlet ao quadrado), amostragem multinomial
# semeada e extração dos dois resultados mais frequentes.
#
# ESTABILIDADE NUMÉRICA:
# 2^m·δ é separado em parte inteira (exata, inteiro Python) e
# fração f ∈ [0, 1). O numerador sin²(2^m π θ) vira sin²(π f), e o
# argumento do denominador é reduzido a (−2^(m−1), 2^(m−1)] antes
# de virar float. Para f == 0 a distribuição é um delta exato.
# =============================================================
from typing import Optional, Tuple

import numpy as np

from src.domain.binary_math import best_approx
from src.domain.entities import PhaseValue, ShotCounts, WindowOutcomeDistribution
from src.domain.exceptions import DimensionBoundError, InvalidArgumentError

DEFAULT_MAX_KERNEL_QUBITS = 24


def _split_scaled(delta: PhaseValue, m: int) -> Tuple[int, float]:
    """2^m·δ = I0 + f, com I0 inteiro e f ∈ [0, 1)."""
    p = delta.precision
    if m >= p:
        return delta.numerator << (m - p), 0.0
    shift = p - m
    integer = delta.numerator >> shift
    remainder = delta.numerator & ((1 << shift) - 1)
    return integer, remainder / (1 << shift)


def dirichlet_pmf(
    delta: PhaseValue,
    m: int,
    max_qubits: int = DEFAULT_MAX_KERNEL_QUBITS,
) -> WindowOutcomeDistribution:
    """
    P(j|δ) = sin²(2^m π θ) / (2^{2m} sin²(π θ)), θ = δ − j/2^m.

    Raises:
        DimensionBoundError: m acima de `max_qubits`.
    """
    if m < 1:
        raise InvalidArgumentError(f"m deve ser >= 1 (recebido {m})")
    if m > max_qubits:
        raise DimensionBoundError(f"janela de {m} qubits excede o limite do kernel ({max_qubits})")

    size = 1 << m
    integer, frac = _split_scaled(delta, m)
    integer %= size

    if frac == 0.0:
        probs = np.zeros(size)
        probs[integer] = 1.0
        return WindowOutcomeDistribution(m=m, probs=probs)

    j = np.arange(size, dtype=np.int64)
    offset = ((integer - j) % size).astype(np.float64) + frac
    offset = np.where(offset > size / 2, offset - size, offset)
    numerator = np.sin(np.pi * frac) ** 2
    denominator = float(size) ** 2 * np.sin(np.pi * offset / size) ** 2
    probs = numerator / denominator
    # renormaliza: o erro acumulado do kernel cresce com 2^m
    return WindowOutcomeDistribution(m=m, probs=probs / probs.sum())


def peak_outcomes(delta: PhaseValue, m: int) -> Tuple[int, int]:
    """
    (T1, T2): inteiro mais próximo de 2^m·δ e seu vizinho do outro
    lado, ambos mod 2^m.
    """
    size = 1 << m
    floor, _ = _split_scaled(delta, m)
    floor %= size
    t1 = best_approx(delta, m)
    t2 = (floor + 1) % size if t1 == floor else floor
    return t1, t2


def sample(dist: WindowOutcomeDistribution, n_shots: int, seed: int) -> ShotCounts:
    """
    Amostragem multinomial com gerador PCG64 semeado.

    Mesma (dist, n_shots, seed) => mesmas contagens em qualquer plataforma.
    """
    if n_shots < 1:
        raise InvalidArgumentError(f"n_shots deve ser >= 1 (recebido {n_shots})")
    probs = np.clip(dist.probs, 0.0, None)
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    return ShotCounts.from_array(dist.m, rng.multinomial(n_shots, probs))


def top_two(counts: ShotCounts, rng: Optional[np.random.Generator] = None) -> Tuple[int, int]:
    """
    Os dois resultados mais frequentes (t1, t2).

    Empates vão para o menor índice; com `rng`, o desempate é
    sorteado. Quando só um resultado foi observado, t2 é um
    resultado de contagem zero.
    """
    if counts.total < 1:
        raise InvalidArgumentError("top_two exige ao menos um shot")

    if rng is None:
        ranked = counts.ranked_outcomes()[:2].tolist()
        t1 = ranked[0]
        if len(ranked) > 1:
            return t1, ranked[1]
        return t1, 0 if t1 != 0 else 1

    def pick(candidates):
        return int(candidates[int(rng.integers(len(candidates)))])

    best = max(counts.counts.values())
    t1 = pick(sorted(j for j, c in counts.counts.items() if c == best))

    others = {j: c for j, c in counts.counts.items() if j != t1 and c > 0}
    if others:
        second = max(others.values())
        return t1, pick(sorted(j for j, c in others.items() if c == second))

    size = 1 << counts.m
    while True:
        j = int(rng.integers(size))
        if j != t1:
            return t1, j
