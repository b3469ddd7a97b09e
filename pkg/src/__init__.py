# =============================================================
# Arquivo __init__.py - Marca 'src' como um pacote Python
# =============================================================
# Este arquivo permite importações como:
#   from src.config import settings
#   from src.domain.entities import PhaseValue
#
# Está vazio propositalmente - apenas serve para marcar o diretório.
# =============================================================
