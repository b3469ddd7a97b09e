# =============================================================
# phases.py - Leitura de Fases de Entrada
# =============================================================
# Formatos aceitos (todos reduzidos mod 1):
# - decimal:        0.3, 0.8203125
# - racional:       3/256
# - fração binária: 0b11010010  (= 0.11010010 em base 2)
# - constantes:     pi/6, 1/sqrt2, sin(pi/12)
#
# DECISÃO: constantes nomeadas são calculadas com aritmética
# inteira/decimal exata na precisão pedida, nunca via float.
# Expressões arbitrárias não são suportadas.
# =============================================================
import re
from decimal import Decimal, localcontext
from fractions import Fraction
from math import isqrt
from typing import Callable, Dict

from src.domain.entities import PhaseValue
from src.domain.exceptions import InvalidArgumentError

_EXTRA_BITS = 32


def _decimal_pi(digits: int) -> Decimal:
    """π com `digits` dígitos significativos (série de Machin via Decimal)."""
    with localcontext() as ctx:
        ctx.prec = digits + 10

        def arctan_inv(x: int) -> Decimal:
            # arctan(1/x) = Σ (−1)^n / ((2n+1) x^(2n+1))
            total = term = Decimal(1) / x
            x2 = x * x
            n, sign = 1, -1
            while True:
                term /= x2
                delta = term / (2 * n + 1)
                if delta == 0 or delta.adjusted() < -ctx.prec - 2:
                    break
                total += sign * delta
                sign, n = -sign, n + 1
            return total

        pi = 4 * (4 * arctan_inv(5) - arctan_inv(239))
    with localcontext() as ctx:
        ctx.prec = digits
        return +pi


def _pi_over(divisor: int, precision: int) -> PhaseValue:
    digits = int(precision * 0.30103) + 20
    return PhaseValue.from_fraction(Fraction(_decimal_pi(digits)) / divisor, precision)


def _inv_sqrt2(precision: int) -> PhaseValue:
    # floor(2^p / √2) = isqrt(2^(2p−1))
    return PhaseValue(numerator=isqrt(1 << (2 * precision - 1)), precision=precision)


def _sin_pi_12(precision: int) -> PhaseValue:
    # sin(π/12) = (√6 − √2) / 4
    scale = 4 ** (precision + _EXTRA_BITS)
    diff = isqrt(6 * scale) - isqrt(2 * scale)
    return PhaseValue(numerator=diff >> (_EXTRA_BITS + 2), precision=precision)


NAMED_PHASES: Dict[str, Callable[[int], PhaseValue]] = {
    "1/sqrt2": _inv_sqrt2,
    "sin(pi/12)": _sin_pi_12,
}

_PI_PATTERN = re.compile(r"^pi/(\d+)$")


def parse_phase(text: str, precision: int) -> PhaseValue:
    """
    Converte texto em PhaseValue com `precision` bits.

    Raises:
        InvalidArgumentError: texto não reconhecido.
    """
    raw = text.strip().lower().replace(" ", "")
    if not raw:
        raise InvalidArgumentError("fase vazia")

    if raw in NAMED_PHASES:
        return NAMED_PHASES[raw](precision)

    match = _PI_PATTERN.match(raw)
    if match:
        divisor = int(match.group(1))
        if divisor == 0:
            raise InvalidArgumentError("divisão por zero em pi/0")
        return _pi_over(divisor, precision)

    if raw.startswith("0b"):
        digits = raw[2:]
        if not digits or set(digits) - {"0", "1"}:
            raise InvalidArgumentError(f"fração binária inválida: {text!r}")
        if len(digits) > precision:
            return PhaseValue.from_bits(digits).with_precision(precision)
        return PhaseValue.from_bits(digits, precision)

    try:
        value = Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidArgumentError(f"fase não reconhecida: {text!r}") from exc
    return PhaseValue.from_fraction(value, precision)
