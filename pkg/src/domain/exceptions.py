# =============================================================
# exceptions.py - Erros de Domínio do AWQPE
# =============================================================
# Restrições de campo das entidades continuam saindo como
# pydantic.ValidationError. Os erros abaixo cobrem as OPERAÇÕES.
#
# NOTA: herdam de Exception (não de ValueError) para atravessar
# validators do Pydantic sem serem embrulhados em ValidationError.
# =============================================================


class AWQPEError(Exception):
    """Raiz de todos os erros de domínio."""


class AmbiguousHalfError(AWQPEError):
    """Caso excluído da composição: b_k == 2^(k-1)."""

    def __init__(self, b_k: int, k: int):
        self.b_k = b_k
        self.k = k
        super().__init__(f"b_k={b_k} é exatamente metade de 2^{k}: arredondamento ambíguo")


class PrecisionBudgetError(AWQPEError):
    """Deslocamento de janela além da precisão armazenada da fase."""


class DimensionBoundError(AWQPEError):
    """Tamanho de registrador acima do limite configurado de memória."""


class InvalidModelError(AWQPEError):
    """Operador unitário, autoestado ou arquivo de modelo inválido."""


class LengthMismatchError(AWQPEError):
    """Tamanho do estimado bruto ou das flags incompatível com m_list."""


class InvalidArgumentError(AWQPEError):
    """Argumento fora do domínio da operação."""
