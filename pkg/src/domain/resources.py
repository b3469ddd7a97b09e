# =============================================================
# resources.py - Contabilidade de Recursos (AWQPE vs QPE padrão)
# =============================================================
# Custos em unidades abstratas: C_g(U) por aplicação de U e
# C_d(U) por camada de profundidade.
#
# DECISÃO: IQFT de m qubits = m Hadamards + m(m−1)/2 rotações
# controladas + ⌊m/2⌋ swaps. É a mesma decomposição simulada em
# src/infrastructure/statevector.py.
# =============================================================
from typing import Iterator, List, Sequence, Union

from src.domain.entities import BlockResources, ResourceReport
from src.domain.exceptions import InvalidArgumentError


def _check_m_list(m_list: Sequence[int]) -> None:
    if not m_list or any(m < 1 for m in m_list):
        raise InvalidArgumentError(f"m_list inválida: {list(m_list)}")


def start_bits(m_list: Sequence[int]) -> List[int]:
    """k_i = Σ_{j<i} m_j."""
    starts, k = [], 0
    for m in m_list:
        starts.append(k)
        k += m
    return starts


def u_applications(m_list: Sequence[int], i: Union[int, str]) -> int:
    """
    Aplicações de U no bloco i (1-based): 2^{k_i}·(2^{m_i} − 1).

    Com i == 'standard': 2^n − 1 da QPE de n qubits.
    """
    _check_m_list(m_list)
    if i == "standard":
        return (1 << sum(m_list)) - 1
    if not isinstance(i, int) or not 1 <= i <= len(m_list):
        raise InvalidArgumentError(f"bloco {i!r} fora de 1..{len(m_list)}")
    k = start_bits(m_list)[i - 1]
    return (1 << k) * ((1 << m_list[i - 1]) - 1)


def iqft_gate_counts(m: int) -> tuple:
    """(hadamards, rotações controladas, swaps)."""
    return m, m * (m - 1) // 2, m // 2


def _row(label: str, m: int, k: int, end_exponent: int) -> BlockResources:
    hadamards, rotations, swaps = iqft_gate_counts(m)
    applications = (1 << k) * ((1 << m) - 1)
    return BlockResources(
        label=label,
        control_qubits=m,
        start_bit=k,
        u_applications=applications,
        iqft_hadamards=hadamards,
        iqft_rotations=rotations,
        iqft_swaps=swaps,
        depth_units=1 << (end_exponent - 1),
        sequential_depth_units=applications,
    )


def report(m_list: Sequence[int]) -> ResourceReport:
    """Tabela de recursos por bloco e linha de comparação da QPE padrão."""
    _check_m_list(m_list)
    blocks = []
    for index, (m, k) in enumerate(zip(m_list, start_bits(m_list)), start=1):
        blocks.append(_row(f"block {index}", m, k, k + m))
    n = sum(m_list)
    return ResourceReport(m_list=list(m_list), blocks=blocks, standard=_row("standard", n, 0, n))


def compositions(n: int, min_part: int = 2) -> Iterator[List[int]]:
    """Todas as composições de n em partes >= min_part (ordem lexicográfica)."""
    if n < min_part:
        return
    for first in range(min_part, n + 1):
        rest = n - first
        if rest == 0:
            yield [first]
        elif rest >= min_part:
            for tail in compositions(rest, min_part):
                yield [first] + tail


def circuit_summary(m_list: Sequence[int], n_targets: int = 1) -> str:
    """
    Descrição textual dos circuitos de cada janela: camada de
    Hadamards, U controlados, IQFT e medição.
    """
    _check_m_list(m_list)
    lines = []
    for index, (m, k) in enumerate(zip(m_list, start_bits(m_list)), start=1):
        hadamards, rotations, swaps = iqft_gate_counts(m)
        lines.append(f"Janela {index}: {m} qubits de controle, {n_targets} qubit(s) alvo, k={k}")
        lines.append(f"  prep : autoestado |u> no registrador alvo; H em c0..c{m - 1}")
        for p in range(m):
            lines.append(f"  ctrl : c{p} -> U^(2^{k + p})")
        lines.append(f"  iqft : {swaps} swap(s), {rotations} rotação(ões) controlada(s), {hadamards} H")
        for q in range(m // 2):
            lines.append(f"         swap c{q} <-> c{m - 1 - q}")
        for j in range(m):
            for c in range(j):
                lines.append(f"         cphase(-pi/2^{j - c}) c{c}, c{j}")
            lines.append(f"         H c{j}")
        lines.append(f"  meas : c{m - 1}..c0 -> chunk de {m} bits (bits {k + 1}..{k + m} da fase)")
    return "\n".join(lines)
