# =============================================================
# interfaces.py - Contrato de Execução de Janela
# =============================================================
# ARQUITETURA: Clean Architecture - Inversão de Dependência
#
# CONCEITO:
# O estimador só sabe "executar uma janela de m qubits começando
# no bit k e devolver contagens". Quem executa (kernel de Dirichlet,
# simulador statevector, probabilidades exatas) é detalhe da
# infraestrutura, injetado no estimador.
#
# Isso permite:
# 1. Testar o estimador com backends falsos (contagens fixas).
# 2. Comparar kernel vs statevector com o mesmo código de estimação.
# =============================================================
from abc import ABC, abstractmethod

from src.domain.entities import Backend, ShotCounts, Target, WindowOutcomeDistribution


class IWindowBackend(ABC):
    """
    Interface de um backend de janela.

    MÉTODOS OBRIGATÓRIOS:
    Qualquer implementação deve ser segura para chamadas concorrentes
    (cada chamada recebe sua própria semente e não compartilha estado).
    """

    kind: Backend

    @abstractmethod
    def distribution(self, target: Target, k: int, m: int) -> WindowOutcomeDistribution:
        """
        Distribuição exata dos 2^m resultados da janela.

        Args:
            target: fase pura ou modelo unitário
            k: expoente inicial (a janela aplica U^(2^(k+p)))
            m: qubits de controle
        """
        pass

    @abstractmethod
    def run_window(self, target: Target, k: int, m: int, shots: int, seed: int) -> ShotCounts:
        """
        Executa a janela `shots` vezes.

        Returns:
            Contagens por resultado; mesma semente => mesmas contagens.
        """
        pass
