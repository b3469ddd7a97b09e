# =============================================================
# test_model_loader.py - Testes da Leitura de Modelos Densos
# =============================================================
import pytest
from fractions import Fraction

import numpy as np

from src.domain.exceptions import InvalidModelError
from src.infrastructure.model_loader import load_model, parse_model

PHASE_GATE = """
# porta de fase diag(1, i): autoestado |1>, fase 1/4
2
1 0   0 0
0 0   0 1
eigenstate
0 0
1 0
phase 0.25
"""

HADAMARD_EIGEN = """
2
0.7071067811865476 0   0.7071067811865476 0
0.7071067811865476 0  -0.7071067811865476 0
eigenstate
0.9238795325112867 0
0.3826834323650898 0
"""


class TestParseModel:
    """Testes do formato de arquivo."""

    def test_phase_gate(self):
        model = parse_model(PHASE_GATE)
        assert model.dimension == 2
        assert model.n_targets == 1
        assert model.eigenphase.to_fraction() == Fraction(1, 4)
        np.testing.assert_allclose(model.eigenstate, [0, 1])

    def test_phase_derived_from_expectation(self):
        """Autovalor +1 do Hadamard => fase 0."""
        model = parse_model(HADAMARD_EIGEN, precision=64)
        assert float(model.eigenphase) == pytest.approx(0.0, abs=1e-12)

    def test_eigenstate_is_normalized(self):
        text = PHASE_GATE.replace("1 0\nphase", "3 0\nphase")
        model = parse_model(text)
        assert np.linalg.norm(model.eigenstate) == pytest.approx(1.0, abs=1e-12)

    def test_four_dimensional(self):
        rows = []
        for r in range(4):
            row = ["0 0"] * 4
            row[r] = "1 0" if r != 2 else "-1 0"
            rows.append("   ".join(row))
        text = "4\n" + "\n".join(rows) + "\neigenstate\n0 0\n0 0\n1 0\n0 0\nphase 1/2\n"
        model = parse_model(text)
        assert model.n_targets == 2
        assert model.eigenphase.to_fraction() == Fraction(1, 2)


class TestInvalidModels:
    """Arquivos rejeitados com InvalidModelError."""

    @pytest.mark.parametrize("text", [
        "",
        "# só comentário\n",
        "três\n",
        "3\n1 0 0 0 0 0\n",
        "2\n1 0 0 0\n",
        PHASE_GATE.replace("eigenstate", "vector"),
        PHASE_GATE.replace("0 0   0 1", "0 0   0"),
        PHASE_GATE.replace("0 0   0 1", "0 0   0 x"),
        PHASE_GATE.replace("phase 0.25", "phase abc"),
        PHASE_GATE + "extra\n",
    ])
    def test_structure_errors(self, text):
        with pytest.raises(InvalidModelError):
            parse_model(text)

    def test_not_unitary(self):
        with pytest.raises(InvalidModelError):
            parse_model(PHASE_GATE.replace("1 0   0 0", "2 0   0 0"))

    def test_wrong_phase(self):
        with pytest.raises(InvalidModelError):
            parse_model(PHASE_GATE.replace("phase 0.25", "phase 0.3"))

    def test_zero_eigenstate(self):
        with pytest.raises(InvalidModelError):
            parse_model(PHASE_GATE.replace("1 0\nphase", "0 0\nphase"))


class TestLoadModel:
    """Testes da leitura de arquivo."""

    def test_load_from_disk(self, tmp_path):
        path = tmp_path / "phase_gate.txt"
        path.write_text(PHASE_GATE, encoding="utf-8")
        assert load_model(path).eigenphase.to_fraction() == Fraction(1, 4)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InvalidModelError):
            load_model(tmp_path / "missing.txt")
