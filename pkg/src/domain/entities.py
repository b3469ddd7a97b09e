# entities.py - Domain entities (Pydantic models)
# Tipos puros do AWQPE: frações diádicas, bits, fases, distribuições,
# operadores unitários e registros do estimador.
from __future__ import annotations

from decimal import Decimal, localcontext
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.domain.exceptions import InvalidArgumentError, InvalidModelError


def exact_decimal_str(value: Fraction) -> str:
    """
    Representação decimal EXATA de uma fração diádica.

    I/2^n tem no máximo n casas decimais, então basta uma precisão
    de contexto maior que isso para a divisão não arredondar.
    """
    with localcontext() as ctx:
        ctx.prec = value.denominator.bit_length() + len(str(value.numerator)) + 10
        text = format(Decimal(value.numerator) / Decimal(value.denominator), "f")
    return text if "." in text else text + ".0"


# =============================================================
# BACKENDS DE EXECUÇÃO DE JANELA
# =============================================================
class Backend(str, Enum):
    """Como uma janela é executada."""
    KERNEL_SAMPLING = "kernel-sampling"  # Amostragem do kernel de Dirichlet
    STATEVECTOR_SAMPLING = "statevector-sampling"  # Amostragem do oráculo statevector
    INFINITE_SHOT = "infinite-shot"  # Probabilidades exatas, sem ruído de shot


# =============================================================
# VALUE OBJECTS BINÁRIOS
# =============================================================
class BitString(BaseModel):
    """
    Sequência de dígitos binários, MSB primeiro.

    Zeros à esquerda são preservados: '010' != '10'.
    """
    model_config = ConfigDict(frozen=True)

    bits: str = Field(..., min_length=1, pattern=r"^[01]+$")

    @classmethod
    def from_int(cls, value: int, length: int) -> "BitString":
        """Converte inteiro em string de `length` bits."""
        if length < 1:
            raise InvalidArgumentError(f"length deve ser >= 1 (recebido {length})")
        if not 0 <= value < (1 << length):
            raise InvalidArgumentError(f"{value} não cabe em {length} bits")
        return cls(bits=format(value, f"0{length}b"))

    @property
    def length(self) -> int:
        return len(self.bits)

    @property
    def value(self) -> int:
        return int(self.bits, 2)

    @property
    def msb(self) -> int:
        return int(self.bits[0])

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return self.bits


class DyadicFraction(BaseModel):
    """Fração binária exata numerator / 2^bits em [0, 1)."""
    model_config = ConfigDict(frozen=True)

    numerator: int = Field(..., ge=0)
    bits: int = Field(..., ge=1)

    @model_validator(mode="after")
    def check_range(self) -> "DyadicFraction":
        if self.numerator >= (1 << self.bits):
            raise ValueError(f"numerator {self.numerator} >= 2^{self.bits}")
        return self

    @classmethod
    def from_bitstring(cls, bits: BitString) -> "DyadicFraction":
        return cls(numerator=bits.value, bits=bits.length)

    def to_bitstring(self) -> BitString:
        return BitString.from_int(self.numerator, self.bits)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.bits)

    def decimal_str(self) -> str:
        return exact_decimal_str(self.as_fraction())

    def __float__(self) -> float:
        return self.numerator / (1 << self.bits)


class PhaseValue(BaseModel):
    """
    Fase real em [0, 1) armazenada em ponto fixo: numerator / 2^precision.

    A precisão usada pelo estimador é n_total + GUARD_BITS, o que torna
    window_fraction e best_approx exatos para todas as janelas.
    """
    model_config = ConfigDict(frozen=True)

    numerator: int = Field(..., ge=0)
    precision: int = Field(..., ge=1)

    @model_validator(mode="after")
    def check_range(self) -> "PhaseValue":
        if self.numerator >= (1 << self.precision):
            raise ValueError("fase fora de [0, 1)")
        return self

    # ---------------------------------------------------------
    # Construtores
    # ---------------------------------------------------------
    @classmethod
    def from_fraction(cls, value: Union[Fraction, int, str], precision: int) -> "PhaseValue":
        """
        Fase a partir de um racional, reduzida mod 1 e truncada
        (floor) para `precision` bits.
        """
        frac = Fraction(value)
        frac -= frac.numerator // frac.denominator
        numerator = (frac.numerator << precision) // frac.denominator
        return cls(numerator=numerator, precision=precision)

    @classmethod
    def from_float(cls, value: float, precision: int) -> "PhaseValue":
        """Floats são diádicos: a conversão via Fraction é exata."""
        return cls.from_fraction(Fraction(value), precision)

    @classmethod
    def from_bits(cls, bits: Union[str, BitString], precision: Optional[int] = None) -> "PhaseValue":
        """'11010010' -> 0.11010010_2."""
        bits = bits if isinstance(bits, BitString) else BitString(bits=bits)
        phase = cls(numerator=bits.value, precision=bits.length)
        return phase if precision is None else phase.with_precision(precision)

    # ---------------------------------------------------------
    # Conversões
    # ---------------------------------------------------------
    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.precision)

    def decimal_str(self) -> str:
        return exact_decimal_str(self.to_fraction())

    def __float__(self) -> float:
        return float(self.to_fraction())

    def with_precision(self, precision: int) -> "PhaseValue":
        """Muda a precisão (exato ao aumentar, floor ao reduzir)."""
        if precision >= self.precision:
            return PhaseValue(numerator=self.numerator << (precision - self.precision), precision=precision)
        return PhaseValue(numerator=self.numerator >> (self.precision - precision), precision=precision)

    # ---------------------------------------------------------
    # Aritmética no círculo unitário
    # ---------------------------------------------------------
    def add(self, other: "PhaseValue") -> "PhaseValue":
        """(self + other) mod 1, na maior das duas precisões."""
        p = max(self.precision, other.precision)
        a, b = self.with_precision(p), other.with_precision(p)
        return PhaseValue(numerator=(a.numerator + b.numerator) % (1 << p), precision=p)

    def subtract(self, other: "PhaseValue") -> "PhaseValue":
        """(self - other) mod 1."""
        p = max(self.precision, other.precision)
        a, b = self.with_precision(p), other.with_precision(p)
        return PhaseValue(numerator=(a.numerator - b.numerator) % (1 << p), precision=p)

    def circle_distance(self, other: "PhaseValue") -> Fraction:
        """Distância no círculo: min(|a-b|, 1-|a-b|)."""
        diff = self.subtract(other).to_fraction()
        return min(diff, 1 - diff)


# =============================================================
# DISTRIBUIÇÕES E CONTAGENS DE UMA JANELA
# =============================================================
class WindowOutcomeDistribution(BaseModel):
    """Vetor de 2^m probabilidades indexado pelo resultado j."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    m: int = Field(..., ge=1)
    probs: np.ndarray

    @model_validator(mode="after")
    def check_distribution(self) -> "WindowOutcomeDistribution":
        if self.probs.shape != (1 << self.m,):
            raise ValueError(f"esperado vetor de {1 << self.m} probabilidades, recebido {self.probs.shape}")
        if np.any(self.probs < -1e-12) or np.any(self.probs > 1 + 1e-12):
            raise ValueError("probabilidade fora de [0, 1]")
        if abs(float(self.probs.sum()) - 1.0) > 1e-12:
            raise ValueError(f"distribuição não normalizada (soma={self.probs.sum()!r})")
        return self

    def argmax(self) -> int:
        return int(np.argmax(self.probs))

    def max_distance(self, other: "WindowOutcomeDistribution") -> float:
        """Distância em norma do máximo entre duas distribuições."""
        if other.m != self.m:
            raise InvalidArgumentError("distribuições com larguras diferentes")
        return float(np.max(np.abs(self.probs - other.probs)))


class ShotCounts(BaseModel):
    """Frequência observada de cada resultado (apenas contagens não nulas)."""
    model_config = ConfigDict(frozen=True)

    m: int = Field(..., ge=1)
    counts: Dict[int, int]
    total: int = Field(..., ge=0)

    @model_validator(mode="after")
    def check_counts(self) -> "ShotCounts":
        size = 1 << self.m
        for outcome, count in self.counts.items():
            if not 0 <= outcome < size:
                raise ValueError(f"resultado {outcome} fora de [0, 2^{self.m})")
            if count < 0:
                raise ValueError(f"contagem negativa para {outcome}")
        if sum(self.counts.values()) != self.total:
            raise ValueError("soma das contagens difere de total")
        return self

    @classmethod
    def from_array(cls, m: int, array: np.ndarray) -> "ShotCounts":
        """
        Constrói a partir de um vetor denso de contagens.

        A validação é feita no vetor (numpy); o dict resultante entra
        via model_construct sem passar de novo pelo validador.
        """
        array = np.asarray(array, dtype=np.int64)
        if m < 1 or array.shape != (1 << m,):
            raise InvalidArgumentError(f"vetor de contagens com forma {array.shape} para m={m}")
        if (array < 0).any():
            raise InvalidArgumentError("contagem negativa")
        nonzero = np.flatnonzero(array)
        return cls.model_construct(
            m=m,
            counts=dict(zip(nonzero.tolist(), array[nonzero].tolist())),
            total=int(array.sum()),
        )

    def count(self, outcome: int) -> int:
        return self.counts.get(outcome, 0)

    def ranked_outcomes(self) -> np.ndarray:
        """Resultados com contagem > 0 ordenados por (-contagem, índice)."""
        size = len(self.counts)
        outcomes = np.fromiter(self.counts.keys(), dtype=np.int64, count=size)
        values = np.fromiter(self.counts.values(), dtype=np.int64, count=size)
        key = np.lexsort((outcomes, -values))
        return outcomes[key][values[key] > 0]

    def top(self, k: int = 5) -> List[Tuple[int, int]]:
        """Os k resultados mais frequentes (empate: menor índice)."""
        return [(j, self.counts[j]) for j in self.ranked_outcomes()[:k].tolist()]


# =============================================================
# OPERADOR SOB ESTIMAÇÃO
# =============================================================
class DiagonalModel(BaseModel):
    """
    Modelo de fase de um qubit: U = diag(1, e^{2πiφ}), autoestado |1⟩.
    """
    model_config = ConfigDict(frozen=True)

    kind: Literal["diagonal"] = "diagonal"
    eigenphase: PhaseValue

    @property
    def n_targets(self) -> int:
        return 1

    @property
    def dimension(self) -> int:
        return 2

    @property
    def matrix(self) -> np.ndarray:
        return np.diag([1.0 + 0j, np.exp(2j * np.pi * float(self.eigenphase))])

    @property
    def eigenstate(self) -> np.ndarray:
        return np.array([0.0 + 0j, 1.0 + 0j])


class DenseModel(BaseModel):
    """
    Unitário denso 2^{n_T} x 2^{n_T} com autoestado fornecido.

    Invariantes verificados na construção:
    - ‖U†U − I‖_max <= 1e-10
    - ‖U v − e^{2πiφ} v‖ <= 1e-10
    - ‖v‖ = 1 com tolerância 1e-12
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: Literal["dense"] = "dense"
    matrix: np.ndarray
    eigenstate: np.ndarray
    eigenphase: PhaseValue

    @model_validator(mode="after")
    def check_model(self) -> "DenseModel":
        u, v = self.matrix, self.eigenstate
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise InvalidModelError(f"matriz não quadrada: {u.shape}")
        d = u.shape[0]
        if d < 2 or d & (d - 1):
            raise InvalidModelError(f"dimensão {d} não é potência de 2")
        if v.shape != (d,):
            raise InvalidModelError(f"autoestado com shape {v.shape}, esperado ({d},)")
        if np.max(np.abs(u.conj().T @ u - np.eye(d))) > 1e-10:
            raise InvalidModelError("matriz não é unitária (‖U†U − I‖_max > 1e-10)")
        if abs(np.linalg.norm(v) - 1.0) > 1e-12:
            raise InvalidModelError("autoestado não normalizado")
        eigenvalue = np.exp(2j * np.pi * float(self.eigenphase))
        if np.linalg.norm(u @ v - eigenvalue * v) > 1e-10:
            raise InvalidModelError("‖U v − e^{2πiφ} v‖ > 1e-10: não é autoestado com essa fase")
        return self

    @classmethod
    def from_matrix(
        cls,
        matrix: np.ndarray,
        eigenstate: np.ndarray,
        eigenphase: Optional[PhaseValue] = None,
        precision: int = 64,
    ) -> "DenseModel":
        """
        Constrói o modelo normalizando o autoestado.

        Sem `eigenphase`, a fase é o argumento de ⟨v|U|v⟩ / 2π mod 1.
        """
        u = np.asarray(matrix, dtype=complex)
        v = np.asarray(eigenstate, dtype=complex)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise InvalidModelError("autoestado nulo")
        v = v / norm
        if eigenphase is None:
            if u.ndim != 2 or u.shape[1] != v.shape[0]:
                raise InvalidModelError(f"dimensões incompatíveis: U {u.shape}, v {v.shape}")
            angle = float(np.angle(np.vdot(v, u @ v))) / (2 * np.pi)
            eigenphase = PhaseValue.from_float(angle % 1.0, precision)
        return cls(matrix=u, eigenstate=v, eigenphase=eigenphase)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_targets(self) -> int:
        return self.dimension.bit_length() - 1


UnitaryModel = Union[DiagonalModel, DenseModel]

# O estimador aceita uma fase pura (modelo de kernel) ou um operador
Target = Union[PhaseValue, DiagonalModel, DenseModel]


def target_phase(target: Target) -> PhaseValue:
    """Fase verdadeira de um alvo de estimação."""
    return target if isinstance(target, PhaseValue) else target.eigenphase


# =============================================================
# CONFIGURAÇÃO E REGISTROS DO ESTIMADOR
# =============================================================
class EstimationConfig(BaseModel):
    """
    Entrada do estimador por janelas.

    DECISÃO: defaults 10240 shots e ε = 0.9. O CLI preenche a partir
    de src.config.settings; a entidade não depende de infraestrutura.
    """
    model_config = ConfigDict(frozen=True)

    m_list: List[int] = Field(..., min_length=1, description="Bits por bloco [m_1..m_B]")
    shots: int = Field(default=10240, ge=1, description="Shots por janela")
    epsilon: float = Field(default=0.9, gt=0.0, lt=1.0, description="Limiar de ambiguidade")
    seed: int = Field(default=0, ge=0, lt=1 << 64, description="Semente mestre de 64 bits")
    backend: Backend = Field(default=Backend.KERNEL_SAMPLING)
    random_tie_break: bool = Field(default=False, description="Desempate aleatório em top_two")
    threads: int = Field(default=1, ge=1, description="Workers para blocos independentes")

    @field_validator("m_list")
    @classmethod
    def validate_m_list(cls, v: List[int]) -> List[int]:
        """Cada bloco precisa de m_i > 1 qubits de controle."""
        if any(m < 2 for m in v):
            raise ValueError(f"todo m_i deve ser > 1 (recebido {v})")
        return v

    @property
    def n_total(self) -> int:
        return sum(self.m_list)

    @property
    def n_blocks(self) -> int:
        return len(self.m_list)

    @property
    def start_bits(self) -> List[int]:
        """k_i = soma dos m_j anteriores."""
        starts, k = [], 0
        for m in self.m_list:
            starts.append(k)
            k += m
        return starts


class WindowRecord(BaseModel):
    """Diagnóstico completo de uma janela executada."""
    model_config = ConfigDict(frozen=True)

    block: int = Field(..., ge=1, description="Índice do bloco (1-based)")
    start_bit: int = Field(..., ge=0, description="k: expoente inicial das potências de U")
    width: int = Field(..., ge=1, description="m_i: qubits de controle")
    counts: ShotCounts
    t1: int
    t2: int
    ratio: float = Field(..., ge=0.0, le=1.0, description="C(t2)/C(t1)")
    flag_amb: bool
    chunk: BitString
    adjacent: bool = Field(default=True, description="t1 e t2 vizinhos no círculo de 2^m")

    @model_validator(mode="after")
    def check_chunk(self) -> "WindowRecord":
        if self.chunk.length != self.width:
            raise ValueError("chunk com largura diferente da janela")
        return self


class RawEstimate(BaseModel):
    """Saída do estimador: chunks concatenados + flags de ambiguidade."""
    model_config = ConfigDict(frozen=True)

    raw_bits: BitString
    flags: List[bool]
    windows: List[WindowRecord]

    @model_validator(mode="after")
    def check_concatenation(self) -> "RawEstimate":
        if len(self.flags) != len(self.windows):
            raise ValueError("uma flag por janela")
        if self.windows and "".join(w.chunk.bits for w in self.windows) != self.raw_bits.bits:
            raise ValueError("raw_bits difere da concatenação dos chunks")
        return self

    @property
    def chunks(self) -> List[BitString]:
        return [w.chunk for w in self.windows]


class ResolvedEstimate(BaseModel):
    """Saída da resolução: estimativa corrigida."""
    model_config = ConfigDict(frozen=True)

    est_bits: BitString
    last_idx: Optional[int] = Field(default=None, ge=1, description="Bloco especial (1-based)")
    value: DyadicFraction

    @model_validator(mode="after")
    def check_value(self) -> "ResolvedEstimate":
        if self.value != DyadicFraction.from_bitstring(self.est_bits):
            raise ValueError("value difere de est_bits")
        return self


# =============================================================
# LIMITES DE SHOTS E CONTABILIDADE DE RECURSOS
# =============================================================
PEAK_PROBABILITY_BOUND = 4.0 / np.pi ** 2  # P(T1|δ) >= 4/π² ≈ 0.405
NON_ADJACENT_BOUND = 1.0 / (np.pi * 1.5) ** 2  # P(j|δ) <= 1/(1.5π)² ≈ 0.045


class BoundParams(BaseModel):
    """Parâmetros dos limites de Hoeffding."""
    model_config = ConfigDict(frozen=True)

    epsilon1: float = Field(default=0.01, gt=0.0, lt=1.0, description="Erro do resultado mais provável")
    epsilon2: float = Field(default=0.01, gt=0.0, lt=1.0, description="Erro da decisão de ambiguidade")
    delta_R: float = Field(default=0.05, gt=0.0, lt=1.0, description="Margem ao limiar")
    epsilon: float = Field(default=0.9, gt=0.0, lt=1.0, description="Limiar de ambiguidade")
    p1: float = Field(default=PEAK_PROBABILITY_BOUND, gt=0.0, lt=1.0)
    delta_p_min: float = Field(default=PEAK_PROBABILITY_BOUND - NON_ADJACENT_BOUND, gt=0.0, lt=1.0)


class BlockResources(BaseModel):
    """Uma linha da tabela de recursos (bloco AWQPE ou QPE padrão)."""
    model_config = ConfigDict(frozen=True)

    label: str
    control_qubits: int
    start_bit: int
    u_applications: int
    iqft_hadamards: int
    iqft_rotations: int
    iqft_swaps: int
    depth_units: int = Field(..., description="Termo dominante de profundidade, em C_d(U)")
    sequential_depth_units: int = Field(..., description="Comprimento da cadeia controlada-U, em C_d(U)")

    @property
    def iqft_gates(self) -> int:
        return self.iqft_hadamards + self.iqft_rotations + self.iqft_swaps


class ResourceReport(BaseModel):
    """Comparação de recursos: blocos AWQPE vs QPE padrão."""
    model_config = ConfigDict(frozen=True)

    m_list: List[int]
    blocks: List[BlockResources]
    standard: BlockResources

    @property
    def total_u_applications(self) -> int:
        return sum(b.u_applications for b in self.blocks)

    @property
    def max_control_qubits(self) -> int:
        return max(b.control_qubits for b in self.blocks)
