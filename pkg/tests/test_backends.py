# =============================================================
# test_backends.py - Testes dos Backends de Janela
# =============================================================
# Cobertura: kernel-sampling, statevector-sampling, infinite-shot
# e a factory get_backend
# =============================================================
import pytest
from fractions import Fraction

from src.application.interfaces import IWindowBackend
from src.domain.entities import Backend, DiagonalModel
from src.domain.exceptions import DimensionBoundError
from src.infrastructure.backends import (
    InfiniteShotBackend,
    KernelSamplingBackend,
    StatevectorSamplingBackend,
    as_model,
    get_backend,
)


class TestFactory:
    """Testes de get_backend."""

    @pytest.mark.parametrize("kind,cls", [
        (Backend.KERNEL_SAMPLING, KernelSamplingBackend),
        (Backend.STATEVECTOR_SAMPLING, StatevectorSamplingBackend),
        (Backend.INFINITE_SHOT, InfiniteShotBackend),
    ])
    def test_kinds(self, kind, cls):
        backend = get_backend(kind)
        assert isinstance(backend, cls)
        assert isinstance(backend, IWindowBackend)
        assert backend.kind == kind

    def test_accepts_string_value(self):
        assert isinstance(get_backend("infinite-shot"), InfiniteShotBackend)

    def test_kernel_limit_from_settings(self, settings_override, phase_factory):
        settings_override(MAX_KERNEL_QUBITS="3")
        backend = get_backend(Backend.KERNEL_SAMPLING)
        with pytest.raises(DimensionBoundError):
            backend.distribution(phase_factory("0.3"), 0, 4)


class TestSamplingBackends:
    """Testes dos backends com ruído de shot."""

    def test_kernel_walkthrough_first_window(self, phase_factory):
        counts = KernelSamplingBackend().run_window(phase_factory("0.8203125"), 0, 3, 10240, seed=1)
        top = counts.top(2)
        assert [outcome for outcome, _ in top] == [7, 6]
        assert counts.total == 10240

    def test_kernel_shifted_window_point_mass(self, phase_factory):
        counts = KernelSamplingBackend().run_window(phase_factory("0.8203125"), 5, 3, 10240, seed=1)
        assert counts.counts == {2: 10240}

    def test_same_seed_same_counts(self, phase_factory):
        backend = StatevectorSamplingBackend()
        phase = phase_factory("0.3")
        assert backend.run_window(phase, 1, 3, 2048, seed=9) == backend.run_window(phase, 1, 3, 2048, seed=9)

    def test_kernel_and_statevector_distributions_agree(self, phase_factory):
        phase = phase_factory("0.123")
        for k in (0, 3, 6):
            kernel = KernelSamplingBackend().distribution(phase, k, 4)
            oracle = StatevectorSamplingBackend().distribution(phase, k, 4)
            assert kernel.max_distance(oracle) <= 1e-10

    def test_dense_model_target(self, phase_factory, dense_model_factory):
        model = dense_model_factory(phase_factory("0.25"), n_targets=2)
        counts = StatevectorSamplingBackend().run_window(model, 0, 2, 1000, seed=4)
        assert counts.counts == {1: 1000}


class TestInfiniteShotBackend:
    """Testes do backend de probabilidades exatas."""

    def test_point_mass_scaled_counts(self, phase_factory):
        counts = InfiniteShotBackend().run_window(phase_factory("0.25"), 0, 3, shots=1, seed=0)
        assert counts.counts == {2: 1 << 31}

    def test_exact_tie_becomes_count_tie(self, phase_factory):
        """8·(3/16) = 1.5 => C(1) == C(2)."""
        counts = InfiniteShotBackend().run_window(phase_factory(Fraction(3, 16)), 0, 3, shots=1, seed=0)
        assert counts.count(1) == counts.count(2)
        assert counts.count(1) > 0

    def test_ignores_shots_and_seed(self, phase_factory):
        backend = InfiniteShotBackend()
        phase = phase_factory("0.3")
        assert backend.run_window(phase, 0, 3, 10, 1) == backend.run_window(phase, 0, 3, 99999, 2)

    def test_scale_bits_override(self, phase_factory):
        counts = InfiniteShotBackend(scale_bits=10).run_window(phase_factory("0.5"), 0, 2, 1, 0)
        assert counts.counts == {2: 1024}

    def test_model_target_uses_statevector(self, phase_factory):
        model = DiagonalModel(eigenphase=phase_factory("0.8203125"))
        counts = InfiniteShotBackend().run_window(model, 5, 3, 1, 0)
        assert counts.counts == {2: 1 << 31}

    def test_as_model_wraps_phase(self, phase_factory):
        phase = phase_factory("0.3")
        model = as_model(phase)
        assert isinstance(model, DiagonalModel)
        assert model.eigenphase == phase
        assert as_model(model) is model
