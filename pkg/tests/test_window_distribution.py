# =============================================================
# test_window_distribution.py - Testes do Kernel de Dirichlet
# =============================================================
# Cobertura: dirichlet_pmf, sample, top_two, peak_outcomes
# =============================================================
import pytest
from fractions import Fraction

import numpy as np
from pydantic import ValidationError

from src.domain.entities import (
    NON_ADJACENT_BOUND,
    PEAK_PROBABILITY_BOUND,
    PhaseValue,
    ShotCounts,
    WindowOutcomeDistribution,
)
from src.domain.exceptions import DimensionBoundError, InvalidArgumentError
from src.domain.window_distribution import dirichlet_pmf, peak_outcomes, sample, top_two


def _phase(value, precision: int = 72) -> PhaseValue:
    return PhaseValue.from_fraction(Fraction(value), precision)


class TestDirichletPmf:
    """Testes da distribuição exata de uma janela."""

    def test_grid_phase_is_point_mass(self):
        dist = dirichlet_pmf(_phase("0.5"), 2)
        assert dist.probs.tolist() == [0.0, 0.0, 1.0, 0.0]

    def test_single_qubit_quarter(self):
        dist = dirichlet_pmf(_phase("0.25"), 1)
        np.testing.assert_allclose(dist.probs, [0.5, 0.5], atol=1e-15)

    def test_walkthrough_window(self):
        dist = dirichlet_pmf(_phase("0.8203125"), 3)
        assert dist.probs[7] == pytest.approx(0.514, abs=1e-3)
        assert dist.probs[6] == pytest.approx(0.313, abs=2e-3)
        assert dist.argmax() == 7

    def test_exact_half_tie_is_symmetric(self):
        """2^m δ = t + 0.5 => P(t) == P(t+1) bit a bit."""
        for m in range(1, 8):
            size = 1 << m
            for t in range(size):
                dist = dirichlet_pmf(_phase(Fraction(2 * t + 1, 2 * size)), m)
                assert dist.probs[t] == dist.probs[(t + 1) % size]

    def test_normalization_on_grid(self):
        """Σ P = 1 com tolerância 1e-12 em grade densa."""
        for m in range(1, 11):
            for i in range(0, 10_000, 37):
                dist = dirichlet_pmf(_phase(Fraction(i, 10_000)), m)
                assert abs(dist.probs.sum() - 1.0) <= 1e-12

    def test_peak_and_far_outcome_bounds(self):
        """P(T1) >= 4/π²; resultados a 2+ passos do pico ficam abaixo de 1/(1.5π)²."""
        for m in range(3, 8):
            size = 1 << m
            for i in range(0, 4096, 7):
                delta = _phase(Fraction(i, 4096) + Fraction(1, 10**6))
                dist = dirichlet_pmf(delta, m)
                t1, t2 = peak_outcomes(delta, m)
                assert dist.probs[t1] >= PEAK_PROBABILITY_BOUND - 1e-12
                assert dist.probs[t1] + dist.probs[t2] >= 8 / np.pi ** 2 - 1e-12
                scaled = float(delta) * size
                for j in range(size):
                    gap = abs(scaled - j) % size
                    if min(gap, size - gap) >= 2:
                        assert dist.probs[j] <= NON_ADJACENT_BOUND

    def test_dimension_bound(self):
        with pytest.raises(DimensionBoundError):
            dirichlet_pmf(_phase("0.1"), 6, max_qubits=5)

    def test_large_window_stays_finite(self):
        dist = dirichlet_pmf(_phase("0.123456789"), 20)
        assert np.all(np.isfinite(dist.probs))
        assert abs(dist.probs.sum() - 1.0) <= 1e-12

    def test_window_near_kernel_bound_is_normalized(self):
        """m = 22 (abaixo do limite padrão de 24) não quebra a validação."""
        dist = dirichlet_pmf(_phase("0.1234567"), 22)
        assert abs(dist.probs.sum() - 1.0) <= 1e-12
        assert dist.argmax() == round(0.1234567 * (1 << 22)) % (1 << 22)

    def test_rejects_unnormalized_vector(self):
        with pytest.raises(ValidationError):
            WindowOutcomeDistribution(m=1, probs=np.array([0.5, 0.5 + 1e-11]))


class TestPeakOutcomes:
    """Testes de (T1, T2)."""

    def test_below_half(self):
        assert peak_outcomes(_phase("0.8203125"), 3) == (7, 6)

    def test_wraparound(self):
        assert peak_outcomes(_phase("0.99"), 3) == (0, 7)


class TestSample:
    """Testes da amostragem multinomial."""

    def test_point_mass(self):
        counts = sample(dirichlet_pmf(_phase("0.25"), 3), 500, seed=1)
        assert counts.counts == {2: 500}

    def test_conservation(self):
        counts = sample(dirichlet_pmf(_phase("0.3"), 4), 10240, seed=99)
        assert counts.total == 10240
        assert sum(counts.counts.values()) == 10240

    def test_reproducible(self):
        dist = dirichlet_pmf(_phase("0.8203125"), 3)
        assert sample(dist, 10240, seed=5) == sample(dist, 10240, seed=5)

    def test_frequency_within_five_standard_errors(self):
        dist = dirichlet_pmf(_phase("0.8203125"), 3)
        counts = sample(dist, 10240, seed=2024)
        p = dist.probs[7]
        stderr = np.sqrt(p * (1 - p) / 10240)
        assert abs(counts.count(7) / 10240 - p) <= 5 * stderr

    def test_shots_must_be_positive(self):
        with pytest.raises(InvalidArgumentError):
            sample(dirichlet_pmf(_phase("0.3"), 2), 0, seed=1)


class TestTopTwo:
    """Testes de top_two."""

    def test_walkthrough_counts(self, counts_factory):
        counts = counts_factory({7: 5180, 6: 3284, 0: 534, 5: 400})
        assert top_two(counts) == (7, 6)

    def test_single_outcome_uses_lowest_zero_count(self, counts_factory):
        assert top_two(counts_factory({2: 10240})) == (2, 0)
        assert top_two(counts_factory({0: 10240})) == (0, 1)

    def test_symmetric_tie_lowest_index(self, counts_factory):
        assert top_two(counts_factory({5: 500, 6: 500})) == (5, 6)

    def test_random_tie_break_picks_a_tied_outcome(self, counts_factory):
        rng = np.random.default_rng(3)
        seen = set()
        for _ in range(50):
            t1, t2 = top_two(counts_factory({5: 500, 6: 500}), rng)
            assert {t1, t2} == {5, 6}
            seen.add(t1)
        assert seen == {5, 6}

    def test_counts_validation(self):
        with pytest.raises(ValidationError):
            ShotCounts(m=2, counts={4: 1}, total=1)
        with pytest.raises(ValidationError):
            ShotCounts(m=2, counts={1: 3}, total=4)


class TestShotCountsFromArray:
    """Construção vetorizada das contagens."""

    def test_matches_validated_construction(self):
        array = np.array([0, 7, 0, 3, 7, 1, 0, 0])
        built = ShotCounts.from_array(3, array)
        assert built == ShotCounts(m=3, counts={1: 7, 3: 3, 4: 7, 5: 1}, total=18)

    def test_ranking_breaks_ties_by_lowest_index(self):
        counts = ShotCounts.from_array(3, np.array([0, 7, 0, 3, 7, 1, 0, 0]))
        assert counts.ranked_outcomes().tolist() == [1, 4, 3, 5]
        assert counts.top(3) == [(1, 7), (4, 7), (3, 3)]
        assert top_two(counts) == (1, 4)

    def test_dense_window_top_two(self):
        """Janela de 12 qubits com todas as contagens não nulas."""
        array = np.arange(1, 4097)
        array[100] = 5000
        counts = ShotCounts.from_array(12, array)
        assert len(counts.counts) == 4096
        assert top_two(counts) == (100, 4095)
        assert counts.top(2) == [(100, 5000), (4095, 4096)]

    def test_rejects_bad_arrays(self):
        with pytest.raises(InvalidArgumentError):
            ShotCounts.from_array(2, np.array([1, 2, 3]))
        with pytest.raises(InvalidArgumentError):
            ShotCounts.from_array(1, np.array([1, -1]))
