# =============================================================
# domain/__init__.py - Camada de Domínio (Clean Architecture)
# =============================================================
# A camada de DOMÍNIO contém:
# - Entidades: fases, frações diádicas, distribuições, registros
# - Aritmética binária exata e o kernel de Dirichlet
# - Resolução LSB -> MSB, limites de shots e recursos
#
# REGRA DE OURO: Esta camada NÃO CONHECE nenhuma outra.
# - NÃO importa src.config
# - NÃO importa loguru, pandas ou o simulador statevector
#
# Limites configuráveis (ex: MAX_KERNEL_QUBITS) chegam como
# argumentos explícitos.
# =============================================================
