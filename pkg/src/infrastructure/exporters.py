# =============================================================
# exporters.py - Exportação de Relatórios (pandas)
# =============================================================
# FORMATOS:
# - text:   DataFrame.to_string (tabela alinhada)
# - csv:    DataFrame.to_csv, colunas na ordem da tabela de exemplos
# - structured-record: JSON lines, um registro por caso (model_dump_json)
#
# DECISÃO: registros estruturados nunca carregam tempo de parede,
# então reexecuções com a mesma semente geram bytes idênticos.
# =============================================================
from pathlib import Path
from typing import Iterable, List, Optional

import pandas as pd
from loguru import logger

from src.application.reports import CampaignSummary, CaseReport, ReproductionRow
from src.config import get_settings
from src.domain.entities import ResourceReport

RECORD_FORMAT = "structured-record"
FORMATS = ("text", "csv", RECORD_FORMAT)
# apelido curto aceito pela CLI
FORMAT_ALIASES = {"record": RECORD_FORMAT}

CASE_COLUMNS = [
    "Input Phase",
    "Bit Allocation",
    "Raw Binary Estimate",
    "Final Binary Estimate",
    "Final Decimal Estimate",
    "Expected Bits",
    "Success",
    "Flags",
    "Special Block",
    "Backend",
    "Shots",
    "Epsilon",
    "Seed",
]


def _bits_list(values: Iterable) -> str:
    return "[" + ",".join(str(v) for v in values) + "]"


def cases_to_frame(reports: List[CaseReport]) -> pd.DataFrame:
    """Casos na ordem de colunas da tabela de exemplos numéricos."""
    rows = [
        [
            r.phi_decimal,
            _bits_list(r.m_list),
            r.raw_bits,
            r.est_bits,
            r.est_decimal,
            r.expected_bits,
            r.success,
            "".join("T" if f else "F" for f in r.flags),
            r.last_idx if r.last_idx is not None else "",
            r.backend,
            r.shots,
            r.epsilon,
            r.seed,
        ]
        for r in reports
    ]
    return pd.DataFrame(rows, columns=CASE_COLUMNS)


def reproduction_to_frame(rows: List[ReproductionRow]) -> pd.DataFrame:
    """Linhas reproduzidas: resultado publicado vs amostra observada."""
    return pd.DataFrame(
        [
            {
                "Case": row.label,
                "Input Phase": row.phase,
                "Bit Allocation": _bits_list(row.m_list),
                "Raw Binary Estimate": row.sample.raw_bits,
                "Final Binary Estimate": row.sample.est_bits,
                "Final Decimal Estimate": row.sample.est_decimal,
                "Expected Final": row.expected_final,
                "Passes": f"{row.passes}/{row.repetitions}",
                "Passed": row.passed,
            }
            for row in rows
        ]
    )


def resources_to_frame(report: ResourceReport) -> pd.DataFrame:
    """Tabela de recursos: um bloco por linha + linha da QPE padrão."""
    records = []
    for row in report.blocks + [report.standard]:
        records.append(
            {
                "Circuit": row.label,
                "Control Qubits": row.control_qubits,
                "Start Bit": row.start_bit,
                "Applications of U": row.u_applications,
                "Circuit Depth (C_d(U))": row.depth_units,
                "Sequential U Chain (C_d(U))": row.sequential_depth_units,
                "IQFT H": row.iqft_hadamards,
                "IQFT Rotations": row.iqft_rotations,
                "IQFT Swaps": row.iqft_swaps,
            }
        )
    records.append(
        {
            "Circuit": "awqpe total",
            "Control Qubits": report.max_control_qubits,
            "Start Bit": 0,
            "Applications of U": report.total_u_applications,
            "Circuit Depth (C_d(U))": max(b.depth_units for b in report.blocks),
            "Sequential U Chain (C_d(U))": max(b.sequential_depth_units for b in report.blocks),
            "IQFT H": sum(b.iqft_hadamards for b in report.blocks),
            "IQFT Rotations": sum(b.iqft_rotations for b in report.blocks),
            "IQFT Swaps": sum(b.iqft_swaps for b in report.blocks),
        }
    )
    return pd.DataFrame(records)


def campaign_to_frame(summary: CampaignSummary) -> pd.DataFrame:
    """Resumo de campanha (uma linha) sem o tempo de parede."""
    return pd.DataFrame(
        [
            {
                "Campaign": summary.label,
                "Trials": summary.trials,
                "Successes": summary.successes,
                "Success Rate": round(summary.success_rate, 6),
                "CI95 Low": round(summary.ci_low, 6),
                "CI95 High": round(summary.ci_high, 6),
                "Tie Cases": summary.tie_cases,
                "Tie Successes": summary.tie_successes,
                "Seed": summary.seed,
            }
        ]
    )


def compositions_to_frame(summary: CampaignSummary) -> pd.DataFrame:
    """Tabela de sucesso por composição (grid exaustivo)."""
    return pd.DataFrame(
        [
            {"Composition": f"[{name}]", "Cases": cases, "Successes": ok, "Rate": round(ok / cases, 6)}
            for name, (cases, ok) in summary.per_composition.items()
        ]
    )


def render(df: pd.DataFrame, fmt: str) -> str:
    """DataFrame como texto alinhado ou CSV."""
    if fmt == "csv":
        return df.to_csv(index=False, lineterminator="\n")
    return df.to_string(index=False)


def render_records(reports: Iterable[CaseReport]) -> str:
    """JSON lines, um CaseReport por linha."""
    return "\n".join(r.model_dump_json() for r in reports)


class ReportExporter:
    """Grava relatórios no diretório de saída configurado."""

    def __init__(self, output_dir: Optional[str] = None):
        self.output_dir = Path(output_dir or get_settings().OUTPUT_DIR)
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def exportar_csv(self, df: pd.DataFrame, filename: str) -> Path:
        """Exporta DataFrame para CSV (UTF-8, separador vírgula)."""
        filepath = self.output_dir / filename
        logger.info(f"Exportando: {filename} ({len(df)} registros)")
        df.to_csv(filepath, index=False, encoding="utf-8", lineterminator="\n")
        return filepath

    def exportar_records(self, reports: List[CaseReport], filename: str) -> Path:
        """Exporta casos como JSON lines."""
        filepath = self.output_dir / filename
        logger.info(f"Exportando: {filename} ({len(reports)} casos)")
        filepath.write_text(render_records(reports) + "\n", encoding="utf-8")
        return filepath
