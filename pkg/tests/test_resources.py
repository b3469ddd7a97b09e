# =============================================================
# test_resources.py - Testes da Contabilidade de Recursos
# =============================================================
import pytest

from src.domain.exceptions import InvalidArgumentError
from src.domain.resources import (
    circuit_summary,
    compositions,
    iqft_gate_counts,
    report,
    start_bits,
    u_applications,
)


class TestUApplications:
    """Testes de aplicações de U por bloco."""

    def test_reference_split(self):
        assert [u_applications([3, 2, 3], i) for i in (1, 2, 3)] == [7, 24, 224]

    def test_standard(self):
        assert u_applications([3, 2, 3], "standard") == 255

    def test_conservation_up_to_twenty_bits(self):
        """Σ blocos = 2^n − 1 para toda composição."""
        for n in range(2, 21):
            for m_list in compositions(n):
                total = sum(u_applications(m_list, i) for i in range(1, len(m_list) + 1))
                assert total == (1 << n) - 1

    def test_conservation_with_unit_parts(self):
        for n in range(1, 11):
            for m_list in compositions(n, min_part=1):
                assert report(m_list).total_u_applications == (1 << n) - 1

    @pytest.mark.parametrize("index", [0, 4, "2"])
    def test_invalid_block(self, index):
        with pytest.raises(InvalidArgumentError):
            u_applications([3, 2, 3], index)

    def test_invalid_m_list(self):
        with pytest.raises(InvalidArgumentError):
            u_applications([], "standard")


class TestReport:
    """Testes da tabela de recursos."""

    def test_control_qubits(self):
        result = report([3, 2, 3])
        assert [b.control_qubits for b in result.blocks] == [3, 2, 3]
        assert result.max_control_qubits == 3
        assert result.standard.control_qubits == 8

    def test_depth_units(self):
        result = report([3, 2, 3])
        assert [b.depth_units for b in result.blocks] == [4, 16, 128]
        assert result.standard.depth_units == 128

    def test_sequential_chain_differs_from_depth_units(self):
        """Cadeia controlada sequencial 7, 24, 224; depth_units 4, 16, 128."""
        result = report([3, 2, 3])
        assert [b.sequential_depth_units for b in result.blocks] == [7, 24, 224]
        assert result.standard.sequential_depth_units == 255

    def test_iqft_counts(self):
        assert iqft_gate_counts(3) == (3, 3, 1)
        assert iqft_gate_counts(8) == (8, 28, 4)
        block = report([3]).blocks[0]
        assert block.iqft_gates == 7

    def test_single_block_equals_standard(self):
        result = report([6])
        block, standard = result.blocks[0], result.standard
        assert block.model_dump(exclude={"label"}) == standard.model_dump(exclude={"label"})

    def test_sequential_depth_below_standard(self):
        """Cadeia controlada mais longa < QPE padrão, igualdade só com B = 1."""
        for n in range(2, 13):
            for m_list in compositions(n):
                result = report(m_list)
                longest = max(b.sequential_depth_units for b in result.blocks)
                if len(m_list) == 1:
                    assert longest == result.standard.sequential_depth_units
                else:
                    assert longest < result.standard.sequential_depth_units


class TestCompositions:
    """Testes do gerador de composições."""

    def test_count_for_eight(self):
        assert len(list(compositions(8))) == 13

    def test_parts_and_sums(self):
        for m_list in compositions(9):
            assert sum(m_list) == 9
            assert min(m_list) >= 2

    def test_below_minimum_is_empty(self):
        assert list(compositions(1)) == []

    def test_lexicographic_order(self):
        assert list(compositions(5)) == [[2, 3], [3, 2], [5]]

    def test_start_bits(self):
        assert start_bits([3, 2, 3]) == [0, 3, 5]


class TestCircuitSummary:
    """Testes da descrição textual dos circuitos."""

    def test_lists_every_window(self):
        text = circuit_summary([3, 2, 3])
        assert text.count("Janela ") == 3
        assert "c2 -> U^(2^7)" in text
        assert "swap c0 <-> c2" in text
        assert "cphase(-pi/2^2) c0, c2" in text
