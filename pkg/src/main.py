# main.py - Ponto de entrada do simulador
# Execução: python -m src.main <subcomando> [flags]
import sys

from src.interface.cli import dispatch


def main() -> int:
    """Executa a CLI e devolve o código de saída."""
    return dispatch(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
