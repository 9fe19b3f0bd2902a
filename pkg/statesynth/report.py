"""Text tables, CSV and spreadsheet renderings of plans, breakdowns and sweeps.

Spreadsheet export:
    book = Workbook()
    book.add_table("plan", PLAN_HEADER, plan_rows(plan, result))
    book.add_table("sweep", ["absT", "prob"], [[p.abs_t, p.prob] for p in curve.samples])
    book.save("phase_state.xlsx")
"""

import sys

from openpyxl import Workbook as _OpenpyxlWorkbook
from openpyxl.styles import Alignment, Font, PatternFill

from .config import CSV_DIGITS
from .helpers import fixed, polar, sci
from .probability import ProbabilityBreakdown
from .search import SweepCurve
from .synthesis import SynthesisPlan

PLAN_HEADER = ["k", "|beta_k|", "phi_beta", "|alpha_k|", "phi_alpha", "P_k^2"]
BREAKDOWN_HEADER = ["k", "Re gamma_k", "Im gamma_k", "P_k^2", "conditional"]

# Header styling
HEADER_FILL = PatternFill("solid", fgColor="1A1A2E")
HEADER_FONT = Font(bold=True, color="FFFFFF")


def plan_rows(plan: SynthesisPlan, result: ProbabilityBreakdown | None = None) -> list[list]:
    """One row per displacement; the last row has no root and no stage norm."""
    rows = []
    for k in range(1, plan.N + 2):
        beta_abs, beta_phi = polar(plan.betas[k - 1]) if k <= plan.N else (None, None)
        alpha_abs, alpha_phi = polar(plan.alphas[k - 1])
        p_k = result.stage_norms[k - 1] if result is not None and k <= plan.N else None
        rows.append([k, beta_abs, beta_phi, alpha_abs, alpha_phi, p_k])
    return rows


def _cell(value, is_prob: bool) -> str:
    if value is None:
        return f"{'-':>13}"
    if isinstance(value, int):
        return f"{value:>3}"
    return f"{sci(value):>13}" if is_prob else f"{fixed(value, 13)}"


def plan_table(plan: SynthesisPlan, result: ProbabilityBreakdown | None = None) -> str:
    lines = ["  ".join(f"{h:>13}" if i else f"{h:>3}" for i, h in enumerate(PLAN_HEADER))]
    for row in plan_rows(plan, result):
        lines.append("  ".join(_cell(v, i == len(row) - 1) for i, v in enumerate(row)))
    if result is not None:
        lines.append(f"P = {sci(result.total)}")
    return "\n".join(lines)


def breakdown_rows(result: ProbabilityBreakdown) -> list[list]:
    return [
        [k, result.gammas[k - 1].real, result.gammas[k - 1].imag, result.stage_norms[k - 1], result.conditionals[k - 1]]
        for k in range(1, result.N + 1)
    ]


def breakdown_table(result: ProbabilityBreakdown) -> str:
    lines = [f"{'k':>3}  {'Re gamma_k':>13}  {'Im gamma_k':>13}  {'P_k^2':>13}  {'conditional':>13}"]
    for k, re, im, p_k, cond in breakdown_rows(result):
        lines.append(f"{k:>3}  {fixed(re, 13)}  {fixed(im, 13)}  {sci(p_k):>13}  {sci(cond):>13}")
    lines.append(f"P = {sci(result.total)}")
    return "\n".join(lines)


def sweep_csv(curve: SweepCurve) -> str:
    """CSV with header absT,prob; failed points carry prob = nan."""
    lines = ["absT,prob"]
    for point in curve.samples:
        prob = "nan" if point.error is not None else f"{point.prob:.{CSV_DIGITS}g}"
        lines.append(f"{point.abs_t:.{CSV_DIGITS}g},{prob}")
    return "\n".join(lines) + "\n"


class Workbook:
    """Thin openpyxl wrapper: one styled worksheet per table."""

    def __init__(self):
        self.book = _OpenpyxlWorkbook()
        self._fresh = True

    def add_table(self, name: str, header: list[str], rows: list[list]):
        if self._fresh:
            sheet = self.book.active
            sheet.title = name
            self._fresh = False
        else:
            sheet = self.book.create_sheet(name)
        sheet.append(header)
        for cell in sheet[1]:
            cell.fill = HEADER_FILL
            cell.font = HEADER_FONT
            cell.alignment = Alignment(horizontal="center")
        for row in rows:
            sheet.append(["" if v is None else v for v in row])
        for column in sheet.columns:
            sheet.column_dimensions[column[0].column_letter].width = 16
        return sheet

    def save(self, path):
        self.book.save(path)


def write_xlsx(path, sheets: dict[str, tuple[list[str], list[list]]]):
    """Write {sheet name: (header, rows)} to an .xlsx file."""
    book = Workbook()
    for name, (header, rows) in sheets.items():
        book.add_table(name, header, rows)
    book.save(path)
    print(f"[report] wrote {len(sheets)} sheet(s) to {path}", file=sys.stderr)
