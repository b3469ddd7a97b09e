# =============================================================
# estimator.py - Estimação por Janelas
# =============================================================
# Para cada bloco i, com k_i = Σ_{j<i} m_j:
#   1. executa a janela (U^(2^(k_i+p)) nos m_i controles);
#   2. extrai t1, t2 das contagens;
#   3. flag = C(t2)/C(t1) > ε; se flag e não for o último bloco,
#      o chunk é o mínimo cíclico de (t1, t2), senão t1.
#
# PARALELISMO:
# Os k_i são conhecidos de antemão, então os blocos são
# independentes. Cada bloco tem semente própria derivada de
# (semente mestre, índice), e o resultado não depende do
# número de threads.
#
# DECISÃO: flag_amb começa False em TODA iteração.
# =============================================================
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Tuple

import numpy as np
from loguru import logger

from src.application.interfaces import IWindowBackend
from src.domain.binary_math import cyclic_min, is_adjacent
from src.domain.entities import (
    BitString,
    EstimationConfig,
    RawEstimate,
    ShotCounts,
    Target,
    WindowRecord,
)
from src.domain.window_distribution import top_two
from src.infrastructure.observability import metrics

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def block_seed(master_seed: int, block_index: int) -> int:
    """
    Semente de 64 bits do bloco `block_index` (1-based).

    Finalizador splitmix64 sobre master + (índice+1)·γ.
    """
    z = (master_seed + (block_index + 1) * _GOLDEN_GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _resolve_backend(cfg: EstimationConfig, backend: Optional[IWindowBackend]) -> IWindowBackend:
    if backend is not None:
        return backend
    # Import tardio: a aplicação só conhece a factory quando nenhum backend é injetado
    from src.infrastructure.backends import get_backend

    return get_backend(cfg.backend)


def run_window(
    target: Target,
    k: int,
    m: int,
    cfg: EstimationConfig,
    seed: int,
    backend: Optional[IWindowBackend] = None,
) -> ShotCounts:
    """Uma execução de janela pelo backend configurado."""
    return _resolve_backend(cfg, backend).run_window(target, k, m, cfg.shots, seed)


def _window_decision(
    counts: ShotCounts,
    epsilon: float,
    is_final_block: bool,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[int, int, float, bool, int]:
    t1, t2 = top_two(counts, rng)
    ratio = counts.count(t2) / counts.count(t1)
    flag = ratio > epsilon
    size = 1 << counts.m
    chunk = cyclic_min(t1, t2, size) if flag and not is_final_block else t1
    return t1, t2, ratio, flag, chunk


def select_chunk(
    counts: ShotCounts,
    epsilon: float,
    is_final_block: bool,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[BitString, bool]:
    """
    (chunk, flag) de uma janela.

    flag = C(t2)/C(t1) > ε. Com flag fora do último bloco o chunk é
    cyclic_min(t1, t2, 2^m); caso contrário é t1.
    """
    _, _, _, flag, chunk = _window_decision(counts, epsilon, is_final_block, rng)
    return BitString.from_int(chunk, counts.m), flag


def estimate_block(
    target: Target,
    cfg: EstimationConfig,
    index: int,
    backend: Optional[IWindowBackend] = None,
) -> WindowRecord:
    """Executa e decide o bloco `index` (1-based) isoladamente."""
    backend = _resolve_backend(cfg, backend)
    m = cfg.m_list[index - 1]
    k = cfg.start_bits[index - 1]
    seed = block_seed(cfg.seed, index)

    counts = backend.run_window(target, k, m, cfg.shots, seed)
    rng = np.random.default_rng([seed, 1]) if cfg.random_tie_break else None
    is_final = index == cfg.n_blocks
    t1, t2, ratio, flag, chunk = _window_decision(counts, cfg.epsilon, is_final, rng)
    adjacent = is_adjacent(t1, t2, 1 << m)

    metrics.record_window(backend.kind.value, flag, adjacent)
    logger.debug(
        f"bloco {index}: k={k} m={m} t1={t1} t2={t2} ratio={ratio:.4f} flag={flag} "
        f"chunk={chunk:0{m}b}"
    )
    if not adjacent and flag:
        logger.warning(f"⚠️ bloco {index}: t1={t1} e t2={t2} não são vizinhos (ruído de amostragem)")

    return WindowRecord(
        block=index,
        start_bit=k,
        width=m,
        counts=counts,
        t1=t1,
        t2=t2,
        ratio=ratio,
        flag_amb=flag,
        chunk=BitString.from_int(chunk, m),
        adjacent=adjacent,
    )


def estimate_raw(
    target: Target,
    cfg: EstimationConfig,
    backend: Optional[IWindowBackend] = None,
) -> RawEstimate:
    """
    Estimação completa: uma janela por bloco, resultados
    reunidos na ordem dos blocos.
    """
    backend = _resolve_backend(cfg, backend)
    indices = range(1, cfg.n_blocks + 1)

    if cfg.threads > 1 and cfg.n_blocks > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            windows = list(pool.map(lambda i: estimate_block(target, cfg, i, backend), indices))
    else:
        windows = [estimate_block(target, cfg, i, backend) for i in indices]

    return RawEstimate(
        raw_bits=BitString(bits="".join(w.chunk.bits for w in windows)),
        flags=[w.flag_amb for w in windows],
        windows=windows,
    )
