# =============================================================
# infrastructure/__init__.py - Camada de Infraestrutura
# =============================================================
# A camada de INFRAESTRUTURA contém:
# - Simulador statevector (oráculo exato das janelas).
# - Backends concretos de IWindowBackend.
# - Leitura de arquivos de modelo denso.
# - Exportadores (pandas) e observabilidade (loguru).
#
# REGRA: Esta é a camada mais externa.
# - PODE importar de Application e Domain.
# - Junto com a Interface, são as únicas camadas que leem src.config.
# =============================================================
