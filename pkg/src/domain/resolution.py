# =============================================================
# resolution.py - Pós-processamento LSB -> MSB
# =============================================================
# Passo 1: identificar o chunk especial (o não-nulo mais à direita,
#          se ele for '10…0').
# Passo 2: propagar o "empréstimo" do MSB de cada chunk para o
#          chunk anterior, do menos para o mais significativo.
#
# DECISÃO: o empréstimo do chunk j é suprimido pela flag de
# ambiguidade do PRÓPRIO chunk j. Esse chunk já escolheu o menor
# dos dois resultados, ou seja, já arredondou para baixo.
# =============================================================
from typing import List, Optional, Sequence

from src.domain.binary_math import subtract_one
from src.domain.entities import BitString, DyadicFraction, RawEstimate, ResolvedEstimate
from src.domain.exceptions import InvalidArgumentError, LengthMismatchError


def is_special(chunk: BitString) -> bool:
    """Chunk no padrão '10…0' (valor 2^(m−1))."""
    return chunk.value == 1 << (chunk.length - 1)


def find_special_chunk(chunks: Sequence[BitString]) -> Optional[int]:
    """
    Índice (1-based) do chunk especial, ou None.

    Varre da direita para a esquerda pulando chunks nulos. No
    primeiro chunk não-nulo o laço para: devolve o índice se ele
    for '10…0', senão None. Chunks anteriores nunca são olhados.
    """
    if not chunks:
        raise InvalidArgumentError("lista de chunks vazia")
    for index in range(len(chunks), 0, -1):
        chunk = chunks[index - 1]
        if chunk.value == 0:
            continue
        return index if is_special(chunk) else None
    return None


def split_chunks(bits: BitString, m_list: Sequence[int]) -> List[BitString]:
    """Fatia a string concatenada nos chunks de cada bloco."""
    if bits.length != sum(m_list):
        raise LengthMismatchError(f"{bits.length} bits para m_list com soma {sum(m_list)}")
    chunks, start = [], 0
    for m in m_list:
        chunks.append(BitString(bits=bits.bits[start:start + m]))
        start += m
    return chunks


def resolve_bits(raw_bits: BitString, m_list: Sequence[int], flags: Sequence[bool]) -> ResolvedEstimate:
    """
    Aplica as correções LSB -> MSB sobre a string bruta.

    Para j = B−1 .. 1: b_corr = MSB do chunk j+1 (já corrigido);
    b_corr = 0 se o chunk j tem flag de ambiguidade ou se j+1 é o
    chunk especial. Chunk j <- (valor − b_corr) mod 2^(m_j).

    Raises:
        LengthMismatchError: |raw_bits| != Σ m_j ou |flags| != B.
    """
    if len(flags) != len(m_list):
        raise LengthMismatchError(f"{len(flags)} flags para {len(m_list)} blocos")
    chunks = split_chunks(raw_bits, m_list)
    last_idx = find_special_chunk(chunks)

    values = [c.value for c in chunks]
    for j in range(len(m_list) - 1, 0, -1):
        # j é 1-based; o chunk j+1 está em values[j]
        next_chunk = BitString.from_int(values[j], m_list[j])
        b_corr = next_chunk.msb
        if flags[j - 1] or last_idx == j + 1:
            b_corr = 0
        if b_corr:
            values[j - 1] = subtract_one(values[j - 1], m_list[j - 1])

    est_bits = BitString(bits="".join(BitString.from_int(v, m).bits for v, m in zip(values, m_list)))
    return ResolvedEstimate(
        est_bits=est_bits,
        last_idx=last_idx,
        value=DyadicFraction.from_bitstring(est_bits),
    )


def resolve(raw: RawEstimate, m_list: Sequence[int], flags: Optional[Sequence[bool]] = None) -> ResolvedEstimate:
    """Resolução sobre a saída do estimador (flags do próprio raw por padrão)."""
    return resolve_bits(raw.raw_bits, m_list, raw.flags if flags is None else flags)
