# =============================================================
# test_estimator.py - Testes da Estimação por Janelas
# =============================================================
# Cobertura: block_seed, select_chunk, run_window, estimate_block,
# estimate_raw (determinismo, independência de blocos, paralelismo)
# =============================================================
import pytest
from typing import Dict

import numpy as np

from src.application.estimator import (
    block_seed,
    estimate_block,
    estimate_raw,
    run_window,
    select_chunk,
)
from src.application.interfaces import IWindowBackend
from src.domain.binary_math import best_approx, window_fraction
from src.domain.entities import Backend, PhaseValue, ShotCounts, WindowOutcomeDistribution
from src.domain.window_distribution import top_two


class FixedCountsBackend(IWindowBackend):
    """Backend falso: contagens fixas por expoente inicial k."""

    kind = Backend.KERNEL_SAMPLING

    def __init__(self, by_start_bit: Dict[int, Dict[int, int]]):
        self.by_start_bit = by_start_bit
        self.calls = []

    def distribution(self, target, k, m) -> WindowOutcomeDistribution:
        raise NotImplementedError

    def run_window(self, target, k, m, shots, seed) -> ShotCounts:
        self.calls.append((k, m, seed))
        counts = self.by_start_bit[k]
        return ShotCounts(m=m, counts=counts, total=sum(counts.values()))


class TestBlockSeed:
    """Testes da derivação de sementes por bloco."""

    def test_deterministic_and_64_bit(self):
        assert block_seed(12345, 1) == block_seed(12345, 1)
        for index in range(1, 50):
            assert 0 <= block_seed(2 ** 64 - 1, index) < 2 ** 64

    def test_distinct_per_block(self):
        seeds = {block_seed(7, index) for index in range(1, 1001)}
        assert len(seeds) == 1000

    def test_distinct_per_master(self):
        assert block_seed(1, 1) != block_seed(2, 1)


class TestSelectChunk:
    """Testes da decisão de ambiguidade."""

    def test_walkthrough_first_window(self, counts_factory):
        counts = counts_factory({7: 5180, 6: 3284, 0: 534, 5: 400, 1: 842})
        chunk, flag = select_chunk(counts, 0.9, is_final_block=False)
        assert chunk.bits == "111"
        assert flag is False

    def test_tie_takes_cyclic_min(self, counts_factory):
        chunk, flag = select_chunk(counts_factory({5: 5000, 6: 5000}), 0.9, is_final_block=False)
        assert chunk.bits == "101"
        assert flag is True

    def test_tie_on_final_block_keeps_t1(self, counts_factory):
        chunk, flag = select_chunk(counts_factory({5: 5000, 6: 5000}), 0.9, is_final_block=True)
        assert chunk.bits == "101"
        assert flag is True

    def test_wraparound_min_is_the_top_value(self, counts_factory):
        """Par (0, 7): o menor no círculo é 7."""
        chunk, flag = select_chunk(counts_factory({0: 5000, 7: 4900}), 0.9, is_final_block=False)
        assert chunk.bits == "111"
        assert flag is True

    def test_ratio_at_threshold_is_not_ambiguous(self, counts_factory):
        chunk, flag = select_chunk(counts_factory({4: 1000, 3: 900}), 0.9, is_final_block=False)
        assert flag is False
        assert chunk.bits == "100"

    def test_single_outcome(self, counts_factory):
        chunk, flag = select_chunk(counts_factory({2: 10240}), 0.9, is_final_block=False)
        assert chunk.bits == "010"
        assert flag is False


class TestRunWindow:
    """Testes de run_window via backend configurado."""

    def test_kernel_backend_from_config(self, phase_factory, config_factory):
        cfg = config_factory()
        counts = run_window(phase_factory("0.8203125"), 5, 3, cfg, seed=block_seed(cfg.seed, 3))
        assert counts.counts == {2: 10240}

    def test_injected_backend(self, phase_factory, config_factory):
        backend = FixedCountsBackend({0: {1: 10}})
        counts = run_window(phase_factory("0.3"), 0, 2, config_factory(), seed=1, backend=backend)
        assert counts.counts == {1: 10}
        assert backend.calls == [(0, 2, 1)]

    def test_standard_qpe_as_single_window(self, phase_factory, config_factory):
        """QPE padrão = uma janela de n qubits em k = 0: φ = 0.3, n = 4 dá 5."""
        cfg = config_factory(m_list=[4], backend=Backend.INFINITE_SHOT)
        counts = run_window(phase_factory("0.3", n_total=4), 0, 4, cfg, seed=1)
        assert top_two(counts) == (5, 4)
        chunk, _ = select_chunk(counts, cfg.epsilon, is_final_block=True)
        assert chunk.value == 5


@pytest.mark.integration
class TestEstimateRaw:
    """Testes do laço completo de estimação."""

    def test_walkthrough_raw_bits(self, phase_factory, config_factory, clean_metrics):
        raw = estimate_raw(phase_factory("0.8203125"), config_factory(m_list=[3, 2, 3]))
        assert raw.raw_bits.bits == "11110010"
        assert raw.flags == [False, False, False]
        assert [w.start_bit for w in raw.windows] == [0, 3, 5]
        assert clean_metrics.snapshot()["windows_by_backend"] == {"kernel-sampling": 3}

    def test_first_reference_case(self, phase_factory, config_factory):
        raw = estimate_raw(phase_factory("0.3", n_total=4), config_factory(m_list=[2, 2]))
        assert raw.raw_bits.bits == "0101"

    def test_zero_phase_infinite_shot(self, phase_factory, config_factory):
        cfg = config_factory(m_list=[2, 3, 4], backend=Backend.INFINITE_SHOT)
        raw = estimate_raw(phase_factory("0", n_total=9), cfg)
        assert raw.raw_bits.bits == "0" * 9
        assert raw.flags == [False] * 3

    def test_fixed_counts_flow(self, phase_factory, config_factory):
        """Chunks na ordem dos blocos; flag só na janela empatada."""
        backend = FixedCountsBackend({
            0: {5: 5000, 6: 5000},
            3: {8: 9000, 7: 1000},
        })
        raw = estimate_raw(phase_factory("0.6875", n_total=7), config_factory(m_list=[3, 4]), backend)
        assert raw.raw_bits.bits == "1011000"
        assert raw.flags == [True, False]
        assert [call[:2] for call in backend.calls] == [(0, 3), (3, 4)]

    def test_independent_of_thread_count(self, phase_factory, config_factory):
        phase = phase_factory("0.7071067811865476", n_total=12)
        single = estimate_raw(phase, config_factory(m_list=[3, 3, 2, 4], seed=99, threads=1))
        pooled = estimate_raw(phase, config_factory(m_list=[3, 3, 2, 4], seed=99, threads=4))
        assert single == pooled

    def test_same_seed_same_estimate(self, phase_factory, config_factory):
        phase = phase_factory("0.41", n_total=8)
        cfg = config_factory(m_list=[4, 4], shots=64, seed=2024)
        assert estimate_raw(phase, cfg) == estimate_raw(phase, cfg)

    def test_block_alone_matches_full_run(self, phase_factory, config_factory):
        phase = phase_factory("0.41", n_total=9)
        cfg = config_factory(m_list=[3, 3, 3], shots=128, seed=5)
        raw = estimate_raw(phase, cfg)
        for index in (1, 2, 3):
            assert estimate_block(phase, cfg, index) == raw.windows[index - 1]

    def test_infinite_shot_chunks_are_window_best_approximations(self, config_factory):
        """Sem flag, o chunk i é best_approx(window_fraction(φ, k_i), m_i)."""
        rng = np.random.default_rng(31)
        cfg = config_factory(m_list=[3, 2, 4], backend=Backend.INFINITE_SHOT)
        for _ in range(100):
            phase = PhaseValue(numerator=int(rng.integers(0, 1 << 62)), precision=62)
            raw = estimate_raw(phase, cfg)
            for window in raw.windows:
                expected = best_approx(window_fraction(phase, window.start_bit), window.width)
                assert window.t1 == expected
                if not window.flag_amb:
                    assert window.chunk.value == expected

    def test_random_tie_break_is_reproducible(self, phase_factory, config_factory):
        cfg = config_factory(m_list=[3, 4], backend=Backend.INFINITE_SHOT, random_tie_break=True)
        phase = phase_factory("0.6875", n_total=7)
        assert estimate_raw(phase, cfg) == estimate_raw(phase, cfg)
