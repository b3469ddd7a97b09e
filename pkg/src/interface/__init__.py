# =============================================================
# interface/__init__.py - Camada de Interface (Adaptadores)
# =============================================================
# A camada de INTERFACE conecta a aplicação ao mundo externo:
# - cli.py: subcomandos argparse (estimate, table1, grid, ...)
#
# REGRA: Esta camada conhece Application, Domain e Infraestrutura.
# - Resolve configuração (settings + flags) e a semente efetiva.
# - Escreve relatórios em stdout; diagnósticos vão para o logger.
# =============================================================
