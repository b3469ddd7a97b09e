# =============================================================
# config.py - Configurações Centralizadas da Aplicação
# =============================================================
# DECISÃO ARQUITETURAL:
# Este arquivo centraliza TODAS as configurações do simulador.
# NÃO usamos `os.getenv()` espalhado pelo código: estimador,
# harness e CLI leem daqui (ou recebem valores explícitos).
#
# TECNOLOGIA: Pydantic Settings (pydantic-settings)
# - Validação automática de tipos nas variáveis de ambiente.
# - Valores default reproduzem os experimentos de referência.
# - Suporte a arquivos `.env` sem bibliotecas extras.
# =============================================================
from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import field_validator
from functools import lru_cache
from typing import Optional
import warnings


class Settings(BaseSettings):
    """
    Configurações do AWQPE carregadas de variáveis de ambiente.

    Todos os campos podem ser sobrescritos por variável de ambiente
    com o mesmo nome (ex: DEFAULT_SHOTS=2048).
    """

    # =========================================================
    # Parâmetros de estimação (defaults do estimador)
    # =========================================================
    # DECISÃO: 10240 shots por janela (soma das contagens do
    # walkthrough de referência) e limiar de ambiguidade 0.9.
    # =========================================================
    DEFAULT_SHOTS: int = 10240
    DEFAULT_EPSILON: float = 0.9

    # Semente mestre. None => sorteada da entropia do SO e impressa
    # como "resolved seed" para permitir replay.
    DEFAULT_SEED: Optional[int] = None

    # Desempate aleatório em top_two (padrão: menor índice vence)
    RANDOM_TIE_BREAK: bool = False

    # =========================================================
    # Precisão e limites de memória
    # =========================================================
    # PhaseValue usa n_total + GUARD_BITS bits de ponto fixo.
    GUARD_BITS: int = 64

    # dirichlet_pmf aloca 2^m probabilidades
    MAX_KERNEL_QUBITS: int = 24

    # statevector aloca 2^(m + n_T) amplitudes complexas
    MAX_STATEVECTOR_QUBITS: int = 26

    # Backend infinite-shot: contagens = round(p * 2^31)
    INFINITE_SHOT_SCALE_BITS: int = 31

    # Checagem de norma após cada porta (modo debug do oráculo)
    NORM_CHECKS: bool = False

    # =========================================================
    # Execução paralela
    # =========================================================
    MAX_WORKERS: int = 1

    # =========================================================
    # Configurações de Logging
    # =========================================================
    # DECISÃO: Usar loguru ao invés do logging padrão.
    # =========================================================
    LOG_LEVEL: str = "INFO"
    LOG_FILE: Optional[str] = None

    # =========================================================
    # Paths de Dados
    # =========================================================
    OUTPUT_DIR: str = "./data"  # Relatórios CSV / JSONL gerados

    # Ambiente de execução (development, testing, production)
    ENVIRONMENT: str = "development"

    # =========================================================
    # Validadores
    # =========================================================
    @field_validator("DEFAULT_SHOTS", "MAX_WORKERS")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Shots e workers precisam ser positivos."""
        if v < 1:
            raise ValueError("valor deve ser >= 1")
        return v

    @field_validator("DEFAULT_EPSILON")
    @classmethod
    def validate_epsilon(cls, v: float) -> float:
        """Limiar de ambiguidade vive em (0, 1)."""
        if not 0.0 < v < 1.0:
            raise ValueError("DEFAULT_EPSILON deve estar em (0, 1)")
        return v

    @field_validator("GUARD_BITS")
    @classmethod
    def validate_guard_bits(cls, v: int) -> int:
        if v < 8:
            raise ValueError("GUARD_BITS deve ser >= 8")
        return v

    def warn_on_risky_settings(self) -> None:
        """
        Emite warning com combinações arriscadas de configuração.
        Deve ser chamada no startup da CLI.
        """
        issues = []

        if self.MAX_KERNEL_QUBITS > 24:
            issues.append(
                f"MAX_KERNEL_QUBITS={self.MAX_KERNEL_QUBITS} aloca mais de 2^24 probabilidades"
            )

        if self.MAX_STATEVECTOR_QUBITS > 26:
            issues.append(
                f"MAX_STATEVECTOR_QUBITS={self.MAX_STATEVECTOR_QUBITS} excede ~1 GiB de amplitudes"
            )

        if self.ENVIRONMENT == "testing" and not self.NORM_CHECKS:
            issues.append("NORM_CHECKS desativado em ambiente de testes")

        if issues:
            warning_msg = "⚠️ CONFIGURAÇÃO ARRISCADA:\n" + "\n".join(f"  - {i}" for i in issues)
            warnings.warn(warning_msg)

    # =========================================================
    # Configuração do Pydantic Settings
    # =========================================================
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )


@lru_cache()
def get_settings() -> Settings:
    """
    Retorna instância singleton das configurações.

    Em testes, podemos limpar o cache: get_settings.cache_clear()
    """
    return Settings()


# Uso: from src.config import settings
settings = get_settings()
