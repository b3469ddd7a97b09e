# =============================================================
# backends.py - Implementações de IWindowBackend
# =============================================================
# - kernel-sampling:      kernel de Dirichlet + multinomial
# - statevector-sampling: oráculo statevector + multinomial
# - infinite-shot:        contagens = round(p · 2^31), sem ruído
#
# DECISÃO: o backend infinite-shot converte empates exatos de
# probabilidade em empates exatos de contagem, para o ramo de
# ambiguidade do estimador disparar de forma determinística.
# =============================================================
from typing import Optional

import numpy as np

from src.application.interfaces import IWindowBackend
from src.config import get_settings
from src.domain.binary_math import window_fraction
from src.domain.entities import (
    Backend,
    DiagonalModel,
    PhaseValue,
    ShotCounts,
    Target,
    UnitaryModel,
    WindowOutcomeDistribution,
    target_phase,
)
from src.domain.window_distribution import dirichlet_pmf, sample
from src.infrastructure.statevector import window_distribution_exact


def as_model(target: Target) -> UnitaryModel:
    """Fase pura vira o modelo diagonal de um qubit."""
    if isinstance(target, PhaseValue):
        return DiagonalModel(eigenphase=target)
    return target


class KernelSamplingBackend(IWindowBackend):
    """Amostra o kernel de Dirichlet da fração de janela."""

    kind = Backend.KERNEL_SAMPLING

    def __init__(self, max_qubits: Optional[int] = None):
        self.max_qubits = get_settings().MAX_KERNEL_QUBITS if max_qubits is None else max_qubits

    def distribution(self, target: Target, k: int, m: int) -> WindowOutcomeDistribution:
        delta = window_fraction(target_phase(target), k)
        return dirichlet_pmf(delta, m, self.max_qubits)

    def run_window(self, target: Target, k: int, m: int, shots: int, seed: int) -> ShotCounts:
        return sample(self.distribution(target, k, m), shots, seed)


class StatevectorSamplingBackend(IWindowBackend):
    """Amostra a distribuição do circuito simulado."""

    kind = Backend.STATEVECTOR_SAMPLING

    def __init__(self, max_qubits: Optional[int] = None):
        self.max_qubits = get_settings().MAX_STATEVECTOR_QUBITS if max_qubits is None else max_qubits

    def distribution(self, target: Target, k: int, m: int) -> WindowOutcomeDistribution:
        return window_distribution_exact(as_model(target), m, k, self.max_qubits)

    def run_window(self, target: Target, k: int, m: int, shots: int, seed: int) -> ShotCounts:
        return sample(self.distribution(target, k, m), shots, seed)


class InfiniteShotBackend(IWindowBackend):
    """
    Probabilidades exatas em ponto fixo: contagem = round(p · 2^bits).

    Fase pura usa o kernel; modelo unitário usa o statevector.
    `shots` e `seed` são ignorados.
    """

    kind = Backend.INFINITE_SHOT

    def __init__(self, scale_bits: Optional[int] = None):
        settings = get_settings()
        self.scale_bits = settings.INFINITE_SHOT_SCALE_BITS if scale_bits is None else scale_bits
        self._kernel = KernelSamplingBackend()
        self._statevector = StatevectorSamplingBackend()

    def distribution(self, target: Target, k: int, m: int) -> WindowOutcomeDistribution:
        if isinstance(target, PhaseValue):
            return self._kernel.distribution(target, k, m)
        return self._statevector.distribution(target, k, m)

    def run_window(self, target: Target, k: int, m: int, shots: int, seed: int) -> ShotCounts:
        probs = self.distribution(target, k, m).probs
        counts = np.rint(probs * float(1 << self.scale_bits)).astype(np.int64)
        return ShotCounts.from_array(m, counts)


_BACKENDS = {
    Backend.KERNEL_SAMPLING: KernelSamplingBackend,
    Backend.STATEVECTOR_SAMPLING: StatevectorSamplingBackend,
    Backend.INFINITE_SHOT: InfiniteShotBackend,
}


def get_backend(kind: Backend) -> IWindowBackend:
    """Factory de backends (lê limites de src.config)."""
    return _BACKENDS[Backend(kind)]()
