# =============================================================
# observability.py - Módulo de Observabilidade
# =============================================================
# IMPLEMENTA:
# - Logging estruturado com Loguru
# - Métricas de execução em memória (janelas, flags, casos)
# - Helpers de log de experimento e de performance
# =============================================================
import sys
import threading
from typing import Dict, Optional

from loguru import logger

LOG_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
    "<level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - "
    "<level>{message}</level>"
)


# =============================================================
# Configuração do Loguru
# =============================================================
def configure_logging(level: str = "INFO", log_file: Optional[str] = None) -> None:
    """
    Remove o handler padrão e instala os sinks do simulador.

    - stderr colorido (stdout fica reservado para os relatórios).
    - Arquivo rotativo opcional quando LOG_FILE está definido.
    """
    logger.remove()
    logger.add(sys.stderr, format=LOG_FORMAT, level=level, colorize=True)

    if log_file:
        logger.add(
            log_file,
            rotation="50 MB",
            retention="7 days",
            compression="zip",
            level="DEBUG",
            format="{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {name}:{function}:{line} | {message}",
        )


# =============================================================
# Métricas em Memória (Simples, sem Prometheus)
# =============================================================
class RunMetrics:
    """
    Contadores de execução do estimador e do harness.

    Blocos e casos rodam em threads: toda atualização passa pelo lock.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self.windows_by_backend: Dict[str, int] = {}
        self.ambiguity_flags = 0
        self.non_adjacent_pairs = 0
        self.cases_run = 0
        self.cases_failed = 0

    def record_window(self, backend: str, flagged: bool, adjacent: bool) -> None:
        with self._lock:
            self.windows_by_backend[backend] = self.windows_by_backend.get(backend, 0) + 1
            if flagged:
                self.ambiguity_flags += 1
            if not adjacent:
                self.non_adjacent_pairs += 1

    def record_case(self, success: bool) -> None:
        with self._lock:
            self.cases_run += 1
            if not success:
                self.cases_failed += 1

    def snapshot(self) -> dict:
        """Retorna cópia das métricas."""
        with self._lock:
            return {
                "windows_total": sum(self.windows_by_backend.values()),
                "windows_by_backend": dict(self.windows_by_backend),
                "ambiguity_flags": self.ambiguity_flags,
                "non_adjacent_pairs": self.non_adjacent_pairs,
                "cases_run": self.cases_run,
                "cases_failed": self.cases_failed,
            }

    def reset(self) -> None:
        """Reset das métricas (útil para testes)."""
        with self._lock:
            self.windows_by_backend = {}
            self.ambiguity_flags = 0
            self.non_adjacent_pairs = 0
            self.cases_run = 0
            self.cases_failed = 0


# Instância global do coletor
metrics = RunMetrics()


# =============================================================
# Logger Helpers
# =============================================================
def log_experiment_event(event_name: str, **kwargs) -> None:
    """
    Log de eventos de experimento.

    Exemplo:
        log_experiment_event("campaign_finished", trials=100, successes=100)
    """
    details = " ".join(f"{k}={v}" for k, v in kwargs.items())
    logger.bind(**kwargs).info(f"[EXPERIMENT] {event_name} {details}".rstrip())


def log_performance_warning(operation: str, duration_ms: float, threshold_ms: float) -> None:
    """
    Log de alerta de performance.

    Exemplo:
        log_performance_warning("grid n=12", 310000, 300000)
    """
    if duration_ms > threshold_ms:
        logger.warning(
            f"[PERF] {operation} took {duration_ms:.2f}ms "
            f"(threshold: {threshold_ms}ms)"
        )
