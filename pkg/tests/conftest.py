# =============================================================
# conftest.py - Configuração Global de Testes
# =============================================================
# Pytest fixtures compartilhadas entre todos os testes
#
# ARQUITETURA DE TESTES:
# - Unit tests: funções puras do domínio, backends isolados
# - Integration tests: estimador + resolução + harness + CLI
# - Slow tests: campanhas em escala de aceitação
# - Fixtures factories para entidades
# =============================================================
import pytest
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np

# Adicionar src ao path para imports
sys.path.insert(0, str(Path(__file__).parent.parent))

# Importações do projeto (após path fix)
from src.config import get_settings
from src.domain.entities import Backend, DenseModel, EstimationConfig, PhaseValue, ShotCounts
from src.infrastructure.observability import metrics

GUARD_BITS = 64


# =============================================================
# FACTORY FIXTURES - Entidades de Domínio
# =============================================================
@pytest.fixture
def phase_factory():
    """
    Factory para criar PhaseValue de teste.

    Uso:
        def test_algo(phase_factory):
            phi = phase_factory("0.8203125", n_total=8)
    """
    def _create(value: Union[str, float, Fraction] = "0.8203125", n_total: int = 8) -> PhaseValue:
        precision = n_total + GUARD_BITS
        if isinstance(value, float):
            return PhaseValue.from_float(value, precision)
        return PhaseValue.from_fraction(Fraction(value), precision)
    return _create


@pytest.fixture
def config_factory():
    """
    Factory para criar EstimationConfig de teste.
    """
    def _create(
        m_list: Optional[List[int]] = None,
        shots: int = 10240,
        epsilon: float = 0.9,
        seed: int = 12345,
        backend: Backend = Backend.KERNEL_SAMPLING,
        threads: int = 1,
        random_tie_break: bool = False,
    ) -> EstimationConfig:
        return EstimationConfig(
            m_list=m_list or [3, 2, 3],
            shots=shots,
            epsilon=epsilon,
            seed=seed,
            backend=backend,
            threads=threads,
            random_tie_break=random_tie_break,
        )
    return _create


@pytest.fixture
def counts_factory():
    """
    Factory para criar ShotCounts a partir de um dict.
    """
    def _create(counts: Dict[int, int], m: int = 3) -> ShotCounts:
        return ShotCounts(m=m, counts=counts, total=sum(counts.values()))
    return _create


@pytest.fixture
def dense_model_factory():
    """
    Factory de modelos densos U = Q diag(e^{2πiθ}) Q†, com Q
    unitária aleatória (QR de matriz gaussiana complexa).

    O autoestado é a coluna `index` de Q, com fase `phase`.
    """
    def _create(phase: PhaseValue, n_targets: int = 2, seed: int = 7, index: int = 0) -> DenseModel:
        d = 1 << n_targets
        rng = np.random.default_rng(seed)
        raw = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        q, _ = np.linalg.qr(raw)
        thetas = rng.random(d)
        thetas[index] = float(phase)
        u = q @ np.diag(np.exp(2j * np.pi * thetas)) @ q.conj().T
        return DenseModel(matrix=u, eigenstate=q[:, index], eigenphase=phase)
    return _create


# =============================================================
# FIXTURES DE CONFIGURAÇÃO
# =============================================================
@pytest.fixture
def settings_override(monkeypatch):
    """
    Sobrescreve variáveis de ambiente e recarrega get_settings().

    Uso:
        def test_algo(settings_override):
            settings_override(MAX_KERNEL_QUBITS="4")
    """
    def _apply(**env: str):
        for key, value in env.items():
            monkeypatch.setenv(key, value)
        get_settings.cache_clear()
        return get_settings()

    yield _apply
    monkeypatch.undo()
    get_settings.cache_clear()


@pytest.fixture
def clean_metrics():
    """Zera as métricas globais antes e depois do teste."""
    metrics.reset()
    yield metrics
    metrics.reset()


# =============================================================
# MARCADORES CUSTOMIZADOS
# =============================================================
def pytest_configure(config):
    """Registra marcadores customizados."""
    config.addinivalue_line("markers", "slow: marks tests as slow (deselect with '-m \"not slow\"')")
    config.addinivalue_line("markers", "integration: marks tests as integration tests")
    config.addinivalue_line("markers", "unit: marks tests as unit tests")
