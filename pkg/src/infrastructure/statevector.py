# =============================================================
# statevector.py - Oráculo Statevector das Janelas
# =============================================================
# Simulação exata do circuito de uma janela:
#   H nos m controles -> controlado-U^(2^(k+p)) -> IQFT -> marginal
#
# CONVENÇÃO DE QUBITS:
# O estado é um tensor numpy de shape (d, 2, ..., 2): eixo 0 é o
# registrador alvo (d = 2^n_T) e o controle p vive no eixo m − p.
# Achatado em ordem C, o índice é t·2^m + c, com o controle p
# sendo o p-ésimo bit menos significativo de c.
#
# DECISÃO: potências U^(2^j) por quadrados sucessivos da matriz
# densa (o custo por aplicação fica em src/domain/resources.py).
# Para o modelo diagonal a fase de U^(2^j) é frac(2^j φ) exata.
# =============================================================
from typing import Optional

import numpy as np
from loguru import logger

from src.config import get_settings
from src.domain.entities import DenseModel, DiagonalModel, PhaseValue, UnitaryModel, WindowOutcomeDistribution
from src.domain.exceptions import AWQPEError, DimensionBoundError, InvalidArgumentError

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)


class StateVector:
    """Registrador de controle (m qubits) acoplado ao registrador alvo."""

    def __init__(self, m: int, target_state: np.ndarray, norm_checks: bool = False):
        if m < 1:
            raise InvalidArgumentError(f"m deve ser >= 1 (recebido {m})")
        self.m = m
        self.dim = target_state.shape[0]
        self.norm_checks = norm_checks
        self.tensor = np.zeros((self.dim,) + (2,) * m, dtype=complex)
        self.tensor[(slice(None),) + (0,) * m] = target_state
        self._norm = float(np.linalg.norm(self.tensor))

    def _axis(self, p: int) -> int:
        if not 0 <= p < self.m:
            raise InvalidArgumentError(f"qubit de controle {p} fora de 0..{self.m - 1}")
        return self.m - p

    def _ones(self, *qubits: int) -> tuple:
        """Índice do sub-tensor onde todos os `qubits` valem 1."""
        index = [slice(None)] * (self.m + 1)
        for p in qubits:
            index[self._axis(p)] = 1
        return tuple(index)

    def _check_norm(self, gate: str, tolerance: float = 1e-12) -> None:
        if not self.norm_checks:
            return
        norm = float(np.linalg.norm(self.tensor))
        if abs(norm - self._norm) > tolerance:
            raise AWQPEError(f"norma variou {abs(norm - self._norm):.3e} após {gate}")
        self._norm = norm

    # ---------------------------------------------------------
    # Portas
    # ---------------------------------------------------------
    def hadamard(self, p: int) -> None:
        axis = self._axis(p)
        self.tensor = np.moveaxis(np.tensordot(_HADAMARD, self.tensor, axes=([1], [axis])), 0, axis)
        self._check_norm(f"H c{p}")

    def controlled_unitary(self, p: int, matrix: np.ndarray) -> None:
        """Aplica `matrix` no alvo onde o controle p vale 1."""
        index = self._ones(p)
        self.tensor[index] = np.tensordot(matrix, self.tensor[index], axes=([1], [0]))
        self._check_norm(f"CU c{p}", tolerance=1e-10)

    def controlled_phase(self, a: int, b: int, angle: float) -> None:
        """Multiplica por e^{i·angle} a componente com c_a = c_b = 1."""
        if a == b:
            raise InvalidArgumentError("cphase precisa de dois qubits distintos")
        index = self._ones(a, b)
        self.tensor[index] *= np.exp(1j * angle)
        self._check_norm(f"cphase c{a},c{b}")

    def swap(self, a: int, b: int) -> None:
        self.tensor = np.swapaxes(self.tensor, self._axis(a), self._axis(b))
        self._check_norm(f"swap c{a},c{b}")

    def inverse_qft(self) -> None:
        """
        IQFT: inversão da ordem dos qubits, depois para cada j
        as rotações cphase(−π/2^(j−c)) com c < j e um H em j.
        """
        for q in range(self.m // 2):
            self.swap(q, self.m - 1 - q)
        for j in range(self.m):
            for c in range(j):
                self.controlled_phase(c, j, -np.pi / (1 << (j - c)))
            self.hadamard(j)

    # ---------------------------------------------------------
    # Leitura
    # ---------------------------------------------------------
    def amplitudes(self) -> np.ndarray:
        """Vetor achatado de 2^m·d amplitudes (índice t·2^m + c)."""
        return np.ascontiguousarray(self.tensor).reshape(-1)

    def control_probabilities(self) -> np.ndarray:
        """Marginal do registrador de controle, índice c = Σ c_p 2^p."""
        return (np.abs(self.tensor) ** 2).sum(axis=0).reshape(-1)


# =============================================================
# Potências controladas
# =============================================================
def _diagonal_power(phase: PhaseValue, exponent: int) -> np.ndarray:
    """diag(1, e^{2πi frac(2^e φ)}) calculado com a fração exata."""
    numerator = (phase.numerator << exponent) % (1 << phase.precision)
    angle = 2.0 * np.pi * (numerator / (1 << phase.precision))
    return np.diag([1.0 + 0j, np.exp(1j * angle)])


def _dense_powers(matrix: np.ndarray, k: int, m: int) -> list:
    """[U^(2^k), U^(2^(k+1)), ..., U^(2^(k+m−1))] por quadrados sucessivos."""
    power = matrix
    for _ in range(k):
        power = power @ power
    powers = [power]
    for _ in range(m - 1):
        power = power @ power
        powers.append(power)
    return powers


def _check_dimension(model: UnitaryModel, m: int, max_qubits: int) -> None:
    if m + model.n_targets > max_qubits:
        raise DimensionBoundError(
            f"m + n_T = {m + model.n_targets} excede MAX_STATEVECTOR_QUBITS={max_qubits}"
        )


def run_window_circuit(
    model: UnitaryModel,
    m: int,
    k: int,
    max_qubits: Optional[int] = None,
    norm_checks: Optional[bool] = None,
) -> StateVector:
    """Constrói e executa o circuito da janela; devolve o estado final."""
    settings = get_settings()
    max_qubits = settings.MAX_STATEVECTOR_QUBITS if max_qubits is None else max_qubits
    norm_checks = settings.NORM_CHECKS if norm_checks is None else norm_checks
    if k < 0:
        raise InvalidArgumentError(f"k negativo: {k}")
    _check_dimension(model, m, max_qubits)

    state = StateVector(m, model.eigenstate, norm_checks=norm_checks)
    for p in range(m):
        state.hadamard(p)

    if isinstance(model, DiagonalModel):
        powers = [_diagonal_power(model.eigenphase, k + p) for p in range(m)]
    elif isinstance(model, DenseModel):
        powers = _dense_powers(model.matrix, k, m)
    else:
        raise InvalidArgumentError(f"modelo não suportado: {type(model).__name__}")

    for p, power in enumerate(powers):
        state.controlled_unitary(p, power)
    state.inverse_qft()
    logger.debug(f"statevector: janela m={m} k={k} d={state.dim}")
    return state


def window_distribution_exact(
    model: UnitaryModel,
    m: int,
    k: int,
    max_qubits: Optional[int] = None,
    norm_checks: Optional[bool] = None,
) -> WindowOutcomeDistribution:
    """
    Distribuição exata dos resultados de controle de uma janela.

    Raises:
        DimensionBoundError: m + n_T acima de MAX_STATEVECTOR_QUBITS.
    """
    state = run_window_circuit(model, m, k, max_qubits, norm_checks)
    probs = state.control_probabilities()
    return WindowOutcomeDistribution(m=m, probs=probs / probs.sum())


def standard_qpe_distribution(
    model: UnitaryModel,
    n: int,
    max_qubits: Optional[int] = None,
) -> WindowOutcomeDistribution:
    """QPE padrão de n qubits: a janela com k = 0 e largura n."""
    return window_distribution_exact(model, n, 0, max_qubits)
