# =============================================================
# binary_math.py - Aritmética de Frações Binárias
# =============================================================
# Funções puras sobre inteiros: truncamento de janela, melhor
# aproximação de n bits, mínimo cíclico e composição de
# aproximações. Nenhum float participa destas operações.
# =============================================================
from typing import Union

from src.domain.entities import BitString, PhaseValue
from src.domain.exceptions import AmbiguousHalfError, InvalidArgumentError, PrecisionBudgetError


def _shift_left(phase: PhaseValue, k: int) -> int:
    """Numerador de frac(2^k · φ) na precisão de φ."""
    if k < 0:
        raise InvalidArgumentError(f"deslocamento negativo: {k}")
    if k >= phase.precision:
        raise PrecisionBudgetError(
            f"deslocamento k={k} consome toda a precisão armazenada ({phase.precision} bits)"
        )
    return (phase.numerator << k) % (1 << phase.precision)


def window_fraction(phase: PhaseValue, k: int) -> PhaseValue:
    """
    frac(2^k · φ): a fase vista por uma janela que começa no bit k.

    Raises:
        PrecisionBudgetError: se k não deixa bits de precisão.
    """
    return PhaseValue(numerator=_shift_left(phase, k), precision=phase.precision)


def best_approx(phase: PhaseValue, n: int) -> int:
    """
    Melhor aproximação de n bits: round(2^n · φ) mod 2^n.

    Metade exata arredonda para cima.
    """
    if n < 1:
        raise InvalidArgumentError(f"n deve ser >= 1 (recebido {n})")
    p = phase.precision
    if n >= p:
        return (phase.numerator << (n - p)) % (1 << n)
    return (((phase.numerator << n) + (1 << (p - 1))) >> p) % (1 << n)


def best_approx_bits(phase: PhaseValue, n: int) -> BitString:
    """best_approx formatado com n bits."""
    return BitString.from_int(best_approx(phase, n), n)


def cyclic_min(a: int, b: int, n: int) -> int:
    """
    Menor de dois resultados adjacentes no círculo de n posições.

    Retorna n-1 quando {a, b} = {0, n-1}; senão min(a, b).
    O par não precisa ser adjacente.
    """
    if n < 2:
        raise InvalidArgumentError(f"círculo precisa de pelo menos 2 posições (n={n})")
    if not (0 <= a < n and 0 <= b < n):
        raise InvalidArgumentError(f"({a}, {b}) fora de [0, {n})")
    if a == b:
        raise InvalidArgumentError(f"resultados iguais: {a}")
    if {a, b} == {0, n - 1}:
        return n - 1
    return min(a, b)


def is_adjacent(a: int, b: int, n: int) -> bool:
    """a e b diferem de 1 no círculo de n posições."""
    return (a - b) % n in (1, n - 1)


def combine_approx(b_m: int, m: int, b_k: int, k: int) -> int:
    """
    Combina b_m = best_approx(φ, m) com b_k = best_approx(frac(2^m φ), k)
    em best_approx(φ, m + k).

    O bit menos significativo de b_m é redundante com o bit mais
    significativo de b_k: se b_k passou da metade, b_m foi arredondado
    para cima e precisa ser decrementado.

    Raises:
        AmbiguousHalfError: se b_k == 2^(k-1) (caso excluído).
    """
    if m < 1 or k < 1:
        raise InvalidArgumentError("m e k devem ser >= 1")
    if not 0 <= b_m < (1 << m):
        raise InvalidArgumentError(f"b_m={b_m} não cabe em {m} bits")
    if not 0 <= b_k < (1 << k):
        raise InvalidArgumentError(f"b_k={b_k} não cabe em {k} bits")
    half = 1 << (k - 1)
    if b_k == half:
        raise AmbiguousHalfError(b_k, k)
    p = b_m - 1 if b_k > half else b_m
    return (p * (1 << k) + b_k) % (1 << (m + k))


def subtract_one(chunk: Union[BitString, int], width: int) -> int:
    """(chunk - 1) mod 2^width."""
    value = chunk.value if isinstance(chunk, BitString) else chunk
    return (value - 1) % (1 << width)
