# =============================================================
# application/__init__.py - Camada de Aplicação (Use Cases)
# =============================================================
# A camada de APLICAÇÃO contém:
# - Estimador por janelas e harness de experimentos.
# - Interface IWindowBackend: contrato abstrato de execução de janela.
#
# REGRA: Esta camada conhece o Domínio e o contrato dos backends.
# - Backends concretos (kernel, statevector, infinite-shot) são
#   injetados pela infraestrutura.
# =============================================================
