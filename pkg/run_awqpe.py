# =============================================================
# run_awqpe.py - Executa o Simulador AWQPE
# =============================================================
"""
Script de linha de comando para estimação de fase por janelas.

EXECUÇÃO:
    python run_awqpe.py estimate --phi 0.3 --m 2,2
    python run_awqpe.py walkthrough --repetitions 100 --seed 7
    python run_awqpe.py examples --format csv
    python run_awqpe.py grid --n 8 --all-compositions
    python run_awqpe.py resources --m 3,2,3

Veja `python run_awqpe.py <subcomando> --help` e docs/reproduction.md.
"""

import os
import sys

# Adiciona diretório raiz ao path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.main import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
