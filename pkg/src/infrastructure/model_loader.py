# =============================================================
# model_loader.py - Leitura de Modelos Densos em Texto
# =============================================================
# Formato (ver docs/model_file_format.md):
#
#   # comentário
#   2
#   1 0   0 0
#   0 0   0 1
#   eigenstate
#   0 0
#   1 0
#   phase 0.5        (opcional)
#
# Linhas em branco e comentários '#' são ignorados. Sem a linha
# `phase`, a fase é derivada de ⟨v|U|v⟩.
# =============================================================
from pathlib import Path
from typing import List, Union

import numpy as np
from loguru import logger

from src.domain.entities import DenseModel
from src.domain.exceptions import AWQPEError, InvalidModelError
from src.domain.phases import parse_phase


def _data_lines(text: str) -> List[str]:
    lines = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def _complex_pairs(tokens: List[str], expected: int, where: str) -> np.ndarray:
    if len(tokens) != 2 * expected:
        raise InvalidModelError(f"{where}: esperado {expected} pares 're im', recebido {len(tokens)} números")
    try:
        values = [float(t) for t in tokens]
    except ValueError as exc:
        raise InvalidModelError(f"{where}: número inválido") from exc
    return np.array(values[0::2]) + 1j * np.array(values[1::2])


def parse_model(text: str, precision: int = 128) -> DenseModel:
    """
    Converte o conteúdo de um arquivo de modelo em DenseModel.

    Raises:
        InvalidModelError: estrutura ou números inválidos, ou modelo
            que viola unitariedade / relação de autovalor.
    """
    lines = _data_lines(text)
    if not lines:
        raise InvalidModelError("arquivo de modelo vazio")
    try:
        d = int(lines[0])
    except ValueError as exc:
        raise InvalidModelError(f"primeira linha deve ser a dimensão: {lines[0]!r}") from exc
    if d < 2 or d & (d - 1):
        raise InvalidModelError(f"dimensão {d} não é potência de 2")

    if len(lines) < 1 + d + 1 + d:
        raise InvalidModelError("arquivo truncado: faltam linhas da matriz ou do autoestado")

    rows = [_complex_pairs(lines[1 + r].split(), d, f"linha {r + 1} da matriz") for r in range(d)]
    if lines[1 + d].lower() != "eigenstate":
        raise InvalidModelError(f"esperado 'eigenstate', encontrado {lines[1 + d]!r}")
    start = 2 + d
    vector = np.concatenate(
        [_complex_pairs(lines[start + r].split(), 1, f"amplitude {r}") for r in range(d)]
    )

    eigenphase = None
    rest = lines[start + d:]
    if rest:
        head, _, value = rest[0].partition(" ")
        if head.lower() != "phase" or len(rest) > 1:
            raise InvalidModelError(f"conteúdo inesperado após o autoestado: {rest[0]!r}")
        try:
            eigenphase = parse_phase(value, precision)
        except AWQPEError as exc:
            raise InvalidModelError(f"fase inválida: {value!r}") from exc

    return DenseModel.from_matrix(np.vstack(rows), vector, eigenphase, precision)


def load_model(path: Union[str, Path], precision: int = 128) -> DenseModel:
    """Lê e valida um arquivo de modelo."""
    filepath = Path(path)
    if not filepath.exists():
        raise InvalidModelError(f"arquivo de modelo não encontrado: {filepath}")
    model = parse_model(filepath.read_text(encoding="utf-8"), precision)
    logger.info(f"📥 Modelo carregado: {filepath.name} (d={model.dimension}, φ={model.eigenphase.decimal_str()})")
    return model
