import csv
import io
from typing import Iterable, List, Optional

from app.models.claim import Verdict
from app.schemas.report import CertificationDocument, CertificationReport

REPORT_CSV_FIELDS = [
    "claim", "variant", "lambda", "mu", "n", "bound", "valid",
    "observed_min", "observed_max", "margin", "numeric_slack",
    "denominator_zero_suspected", "argmin_re", "argmin_im", "verdict", "exploratory",
]


def format_float(value: Optional[float]) -> str:
    """Shortest round-trip decimal; byte-stable across runs."""
    if value is None:
        return ""
    return repr(float(value))


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _row(report: CertificationReport) -> List[str]:
    claim = report.claim
    return [
        claim.id.value,
        claim.variant.value,
        format_float(claim.params.lam),
        format_float(claim.params.mu),
        str(claim.n),
        format_float(claim.bound),
        _flag(claim.valid),
        format_float(report.observed_min),
        format_float(report.observed_max),
        format_float(report.margin),
        format_float(report.numeric_slack),
        _flag(report.denominator_zero_suspected),
        format_float(report.argmin_z.re),
        format_float(report.argmin_z.im),
        report.verdict.value,
        _flag(report.exploratory),
    ]


class ReportService:
    """Renders certification reports as line records, CSV or a JSON document."""

    def to_line(self, report: CertificationReport) -> str:
        return " ".join(f"{key}={value}" for key, value in zip(REPORT_CSV_FIELDS, _row(report)) if value != "")

    def to_lines(self, reports: Iterable[CertificationReport]) -> str:
        return "".join(self.to_line(report) + "\n" for report in reports)

    def to_csv(self, reports: Iterable[CertificationReport]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(REPORT_CSV_FIELDS)
        for report in reports:
            writer.writerow(_row(report))
        return buffer.getvalue()

    def document(self, reports: Iterable[CertificationReport]) -> CertificationDocument:
        reports = list(reports)
        return CertificationDocument(reports=reports, total=len(reports))

    def to_json(self, reports: Iterable[CertificationReport]) -> str:
        return self.document(reports).model_dump_json(indent=2) + "\n"

    def parse_json(self, text: str) -> CertificationDocument:
        return CertificationDocument.model_validate_json(text)

    @staticmethod
    def exit_status(reports: Iterable[CertificationReport]) -> int:
        """0 when every valid-hypothesis claim certified, 1 on any violation, else 3.

        Exploratory reports do not count; a run with nothing but exploratory
        reports is inconclusive.
        """
        reports = list(reports)
        if any(r.verdict is Verdict.VIOLATED for r in reports):
            return 1
        binding = [r for r in reports if not r.exploratory]
        if not binding or any(r.verdict is not Verdict.CERTIFIED for r in binding):
            return 3
        return 0


report_service = ReportService()
